#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "interactee/dataset.hpp"
#include "interactee/descriptor_store.hpp"

namespace interactee {

/// Generator for a dataset whose interactee placement is a known smooth
/// function of a 3-D latent "pose" descriptor:
///
///   dx = 1.5 (u0 - 0.5),  dy = 0.6 u1 - 0.4,  a = 0.1 + 0.4 u2
///
/// Each person gets jittered annotator boxes around the true interactee (and
/// occasionally one far outlier), a category, captions and scene objects.
struct SyntheticConfig {
  std::size_t images = 500;
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  std::size_t annotators = 5;
  double annotator_jitter = 3.0;  // pixels, uniform per coordinate
  double outlier_probability = 0.3;
  double image_width = 640.0;
  double image_height = 480.0;
  std::size_t noise_dims = 4;     // uninformative "gist" block
};

struct SyntheticDataset {
  DatasetFile dataset;
  DescriptorStore store;
};

LocalizationParams synthetic_localization(const std::array<double, 3>& pose);

/// `store_name` is written into the dataset as its descriptor_store path.
SyntheticDataset make_synthetic_dataset(const SyntheticConfig& config, const std::string& store_name = "descriptors.bin");

}  // namespace interactee
