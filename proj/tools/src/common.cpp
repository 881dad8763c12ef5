#include "common.hpp"

#include <algorithm>
#include <sstream>

#include "interactee/descriptor_store.hpp"
#include "interactee/error.hpp"

namespace interactee::cli {

BoundingBox parse_box(const std::string& text) {
  const auto parts = split_list(text);
  if (parts.size() != 4) throw UsageError("expected a box as x,y,w,h, got '" + text + "'");
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t used = 0;
    try {
      v[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[i].size()) throw UsageError("bad number '" + parts[i] + "' in box '" + text + "'");
  }
  try {
    return BoundingBox(v[0], v[1], v[2], v[3]);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

void check_split(const std::string& split) {
  if (split != "train" && split != "test" && split != "all") {
    throw UsageError("--split must be train, test or all");
  }
}

std::vector<PersonRef> select_persons(const DatasetFile& ds, const std::string& split) {
  check_split(split);
  std::vector<PersonRef> out;
  for (std::size_t i = 0; i < ds.images.size(); ++i) {
    if (split != "all" && ds.images[i].split != split) continue;
    for (std::size_t p = 0; p < ds.images[i].persons.size(); ++p) out.push_back({i, p});
  }
  return out;
}

const PersonRecord& person_at(const DatasetFile& ds, const PersonRef& ref) {
  return ds.images.at(ref.image).persons.at(ref.person);
}

namespace {

std::string locator(const PersonRef& ref) {
  return "/images/" + std::to_string(ref.image) + "/persons/" + std::to_string(ref.person);
}

}  // namespace

DescriptorVector person_descriptor(const LoadedDataset& data, const PersonRef& ref, const std::vector<std::string>& blocks) {
  const auto& p = person_at(data.file, ref);
  if (!p.descriptor_ref || !data.store) throw ValidationError(locator(ref) + "/descriptor_ref", "person has no descriptor");
  DescriptorVector d = data.store->at(*p.descriptor_ref);
  return blocks.empty() ? d : select_blocks(d, blocks);
}

LocalizationParams person_target(const DatasetFile& ds, const PersonRef& ref) {
  const auto& p = person_at(ds, ref);
  if (!p.gt_interactee) throw ValidationError(locator(ref) + "/gt_interactee", "person has no ground truth (run consensus first)");
  return normalize_localization(p.person_box, *p.gt_interactee);
}

std::string relative_to(const fs::path& target, const fs::path& from_file) {
  const fs::path base = fs::absolute(from_file).parent_path();
  return fs::absolute(target).lexically_normal().lexically_relative(base.lexically_normal()).generic_string();
}

Json knn_model_to_json(const KnnModelFile& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.keys.size(); ++i) rows.push_back({{"key", m.keys[i]}, {"params", m.params[i]}});
  return Json{{"format", "interactee.knn"}, {"version", 1},        {"descriptor_store", m.descriptor_store},
              {"blocks", m.blocks},         {"k", m.k},             {"normalizer", m.normalizer},
              {"training", rows}};
}

KnnModelFile knn_model_from_json(const Json& j) {
  if (j.value("format", "") != "interactee.knn") throw ValidationError("/format", "not a KNN model file");
  KnnModelFile m;
  m.descriptor_store = j.at("descriptor_store").get<std::string>();
  m.blocks = j.at("blocks").get<std::vector<std::string>>();
  m.k = j.at("k").get<std::size_t>();
  m.normalizer = j.at("normalizer").get<BlockNormalizer>();
  for (const auto& row : j.at("training")) {
    m.keys.push_back(row.at("key").get<std::string>());
    m.params.push_back(row.at("params").get<LocalizationParams>());
  }
  return m;
}

KnnModel load_knn_model(const fs::path& path, std::optional<std::size_t> k_override) {
  const KnnModelFile m = knn_model_from_json(read_json_file(path));
  const DescriptorStore store = DescriptorStore::load(path.parent_path() / m.descriptor_store);
  std::vector<TrainingExample> training;
  training.reserve(m.keys.size());
  for (std::size_t i = 0; i < m.keys.size(); ++i) {
    DescriptorVector d = store.at(m.keys[i]);
    training.push_back({m.blocks.empty() ? d : select_blocks(d, m.blocks), m.params[i]});
  }
  const std::size_t k = k_override.value_or(m.k);
  if (k == 0 || k > training.size()) {
    throw UsageError("--k must be between 1 and the training size (" + std::to_string(training.size()) + ")");
  }
  return KnnModel(std::move(training), m.normalizer, k);
}

std::vector<double> MdnModelFile::standardize(const DescriptorVector& d) const {
  const auto v = d.values();
  if (v.size() != input_mean.size()) throw DimensionMismatch("descriptor does not match the MDN input size");
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = (v[i] - input_mean[i]) / input_scale[i];
  return x;
}

Json mdn_model_to_json(const MdnModelFile& m) {
  return Json{{"format", "interactee.mdn_model"},
              {"version", 1},
              {"blocks", m.blocks},
              {"input_mean", m.input_mean},
              {"input_scale", m.input_scale},
              {"network", m.net}};
}

MdnModelFile mdn_model_from_json(const Json& j) {
  if (j.value("format", "") != "interactee.mdn_model") throw ValidationError("/format", "not an MDN model file");
  MdnModelFile m;
  m.blocks = j.at("blocks").get<std::vector<std::string>>();
  m.input_mean = j.at("input_mean").get<std::vector<double>>();
  m.input_scale = j.at("input_scale").get<std::vector<double>>();
  m.net = j.at("network").get<MdnNetwork>();
  if (m.input_mean.size() != m.net.input_dim || m.input_scale.size() != m.net.input_dim) {
    throw ValidationError("/input_mean", "standardization does not match the network input size");
  }
  return m;
}

Json predictions_to_json(const std::string& model, const std::vector<Prediction>& predictions) {
  Json rows = Json::array();
  for (const auto& p : predictions) {
    rows.push_back({{"image_id", p.image_id}, {"person_index", p.person_index}, {"params", p.params}, {"box", p.box}});
  }
  return Json{{"format", "interactee.predictions"}, {"model", model}, {"predictions", rows}};
}

std::vector<Prediction> predictions_from_json(const Json& j) {
  if (j.value("format", "") != "interactee.predictions") throw ValidationError("/format", "not a predictions file");
  std::vector<Prediction> out;
  for (const auto& row : j.at("predictions")) {
    out.push_back({row.at("image_id").get<std::string>(), row.at("person_index").get<std::size_t>(),
                   row.at("params").get<LocalizationParams>(), row.at("box").get<BoundingBox>()});
  }
  return out;
}

std::optional<BoundingBox> find_prediction(const std::vector<Prediction>& predictions, const std::string& image_id,
                                           std::size_t person_index) {
  for (const auto& p : predictions) {
    if (p.image_id == image_id && p.person_index == person_index) return p.box;
  }
  return std::nullopt;
}

}  // namespace interactee::cli
