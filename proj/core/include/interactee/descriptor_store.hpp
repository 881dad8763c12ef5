#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "interactee/features.hpp"

namespace interactee {

/// Row key for a person: "<image_id>#<person_index>".
std::string descriptor_key(const std::string& image_id, std::size_t person_index);

/// Dense descriptor matrix keyed by person, sharing one block layout.
///
/// On disk: the 4-byte magic "IXDS", a little-endian u32 version (1), a
/// little-endian u64 header length, a UTF-8 JSON header
/// {"blocks": [{"name", "dim"}], "provenance": [...], "keys": [...]}, and
/// then rows x total_dim little-endian IEEE-754 doubles.
class DescriptorStore {
 public:
  DescriptorStore() = default;
  explicit DescriptorStore(LayoutPtr layout, std::vector<std::string> provenance = {});

  const Layout& layout() const noexcept { return *layout_; }
  const LayoutPtr& layout_ptr() const noexcept { return layout_; }
  const std::vector<std::string>& provenance() const noexcept { return provenance_; }
  const std::vector<std::string>& keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }

  /// Throws LayoutMismatch or ValidationError (duplicate key).
  void add(const std::string& key, const DescriptorVector& descriptor);
  bool contains(const std::string& key) const { return index_.count(key) != 0; }
  std::optional<DescriptorVector> find(const std::string& key) const;
  /// Throws ValidationError when the key is absent.
  DescriptorVector at(const std::string& key) const;

  void save(const std::filesystem::path& path) const;
  /// Throws ParseError on a malformed or truncated file.
  static DescriptorStore load(const std::filesystem::path& path);

 private:
  LayoutPtr layout_;
  std::vector<std::string> provenance_;
  std::vector<std::string> keys_;
  std::vector<double> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace interactee
