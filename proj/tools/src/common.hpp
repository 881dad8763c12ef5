#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "interactee/dataset.hpp"
#include "interactee/features.hpp"
#include "interactee/geometry.hpp"
#include "interactee/knn.hpp"
#include "interactee/mdn.hpp"
#include "interactee/serialization.hpp"

namespace interactee::cli {

namespace fs = std::filesystem;

/// Bad flag combinations detected after parsing; exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "x,y,w,h" in pixels.
BoundingBox parse_box(const std::string& text);

/// "a,b,c" -> {"a", "b", "c"}; empty input gives an empty list.
std::vector<std::string> split_list(const std::string& text);

/// A person slot inside a loaded dataset.
struct PersonRef {
  std::size_t image = 0;
  std::size_t person = 0;
};

/// Persons of the given split ("train", "test" or "all").
std::vector<PersonRef> select_persons(const DatasetFile& ds, const std::string& split);

void check_split(const std::string& split);

const PersonRecord& person_at(const DatasetFile& ds, const PersonRef& ref);

/// Descriptor of a person restricted to `blocks` (all blocks when empty).
/// Throws ValidationError when the person has no descriptor.
DescriptorVector person_descriptor(const LoadedDataset& data, const PersonRef& ref, const std::vector<std::string>& blocks);

/// Ground-truth localization parameters. Throws ValidationError when the
/// person has no gt_interactee.
LocalizationParams person_target(const DatasetFile& ds, const PersonRef& ref);

/// Path of `target` written relative to the directory holding `from_file`.
std::string relative_to(const fs::path& target, const fs::path& from_file);

/// Stored KNN model: training rows are referenced by descriptor key and read
/// back from the descriptor store when the model is loaded.
struct KnnModelFile {
  std::string descriptor_store;  // relative to the model file
  std::vector<std::string> blocks;
  std::size_t k = kDefaultNeighbors;
  BlockNormalizer normalizer;
  std::vector<std::string> keys;
  std::vector<LocalizationParams> params;
};

Json knn_model_to_json(const KnnModelFile& m);
KnnModelFile knn_model_from_json(const Json& j);
KnnModel load_knn_model(const fs::path& path, std::optional<std::size_t> k_override);

/// Stored MDN: the network plus the per-dimension input standardization.
struct MdnModelFile {
  std::vector<std::string> blocks;
  std::vector<double> input_mean;
  std::vector<double> input_scale;
  MdnNetwork net;

  std::vector<double> standardize(const DescriptorVector& d) const;
};

Json mdn_model_to_json(const MdnModelFile& m);
MdnModelFile mdn_model_from_json(const Json& j);

struct Prediction {
  std::string image_id;
  std::size_t person_index = 0;
  LocalizationParams params;
  BoundingBox box;
};

Json predictions_to_json(const std::string& model, const std::vector<Prediction>& predictions);
std::vector<Prediction> predictions_from_json(const Json& j);

/// Looks up the predicted box for a person; nullopt when absent.
std::optional<BoundingBox> find_prediction(const std::vector<Prediction>& predictions, const std::string& image_id,
                                           std::size_t person_index);

}  // namespace interactee::cli
