#include "interactee/descriptor_store.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "interactee/error.hpp"

namespace interactee {
namespace {

constexpr char kMagic[4] = {'I', 'X', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }
}

template <typename T>
void write_le(std::ostream& out, T value) {
  value = to_little_endian(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::string& what) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw ParseError("descriptor store truncated while reading " + what);
  return to_little_endian(value);
}

}  // namespace

std::string descriptor_key(const std::string& image_id, std::size_t person_index) {
  return image_id + "#" + std::to_string(person_index);
}

DescriptorStore::DescriptorStore(LayoutPtr layout, std::vector<std::string> provenance)
    : layout_(std::move(layout)), provenance_(std::move(provenance)) {
  if (!layout_) throw InvalidArgument("descriptor store needs a layout");
}

void DescriptorStore::add(const std::string& key, const DescriptorVector& descriptor) {
  if (!(descriptor.layout() == *layout_)) throw LayoutMismatch("descriptor for '" + key + "' does not match the store layout");
  if (!index_.emplace(key, keys_.size()).second) throw ValidationError("/keys", "duplicate descriptor key '" + key + "'");
  keys_.push_back(key);
  const auto v = descriptor.values();
  rows_.insert(rows_.end(), v.begin(), v.end());
}

std::optional<DescriptorVector> DescriptorStore::find(const std::string& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  const std::size_t dim = layout_->total_dim();
  const auto begin = rows_.begin() + static_cast<std::ptrdiff_t>(it->second * dim);
  return DescriptorVector(layout_, std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(dim)));
}

DescriptorVector DescriptorStore::at(const std::string& key) const {
  auto found = find(key);
  if (!found) throw ValidationError("/descriptor_ref", "unknown descriptor key '" + key + "'");
  return std::move(*found);
}

void DescriptorStore::save(const std::filesystem::path& path) const {
  nlohmann::json header;
  auto& blocks = header["blocks"] = nlohmann::json::array();
  for (const auto& b : layout_->blocks()) blocks.push_back({{"name", b.name}, {"dim", b.dim}});
  header["provenance"] = provenance_;
  header["keys"] = keys_;
  const std::string text = header.dump();

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(kMagic, sizeof kMagic);
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (double v : rows_) write_le<double>(out, v);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

DescriptorStore DescriptorStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  char magic[4];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw ParseError(path.string() + ": not a descriptor store");
  }
  if (read_le<std::uint32_t>(in, "version") != kVersion) throw ParseError(path.string() + ": unsupported store version");
  const auto header_len = read_le<std::uint64_t>(in, "header length");
  std::string text(header_len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(header_len))) throw ParseError(path.string() + ": truncated header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": bad header: " + e.what());
  }

  try {
    std::vector<std::pair<std::string, std::size_t>> dims;
    for (const auto& b : header.at("blocks")) dims.emplace_back(b.at("name").get<std::string>(), b.at("dim").get<std::size_t>());
    DescriptorStore store(std::make_shared<const Layout>(dims), header.at("provenance").get<std::vector<std::string>>());
    const auto keys = header.at("keys").get<std::vector<std::string>>();
    const std::size_t dim = store.layout_->total_dim();
    std::vector<double> row(dim);
    for (const auto& key : keys) {
      for (auto& v : row) v = read_le<double>(in, "rows");
      store.add(key, DescriptorVector(store.layout_, row));
    }
    return store;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": bad header: " + e.what());
  }
}

}  // namespace interactee
