#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "interactee/features.hpp"
#include "interactee/geometry.hpp"
#include "interactee/grid.hpp"

namespace interactee {

struct Neighbor {
  std::size_t index = 0;  // into the training set
  double distance = 0.0;
  double weight = 0.0;    // normalized, sums to 1 over the neighbor list
};

struct KnnPrediction {
  LocalizationParams params;
  std::vector<Neighbor> neighbors;  // ascending distance
};

inline constexpr std::size_t kDefaultNeighbors = 20;

/// Locally weighted regression over stored examples. Neighbor weights are
/// exp(-d) renormalized to sum to one, so the prediction is a convex
/// combination of neighbor targets.
class KnnModel {
 public:
  /// Fits the block normalizer on the training descriptors.
  /// Throws TooFewExamples (fewer than k, or k == 0) or LayoutMismatch.
  static KnnModel fit(std::vector<TrainingExample> training, std::size_t k = kDefaultNeighbors,
                      std::size_t max_pairs = kDefaultMaxPairs, std::uint64_t seed = 0);

  /// Rebuilds a model from stored examples and a previously fitted normalizer.
  KnnModel(std::vector<TrainingExample> training, BlockNormalizer normalizer, std::size_t k);

  KnnPrediction predict(const DescriptorVector& query) const;

  /// Vote map over a grid_w x grid_h raster of the query image: each
  /// neighbor's box (placed on the query person) adds its weight to every
  /// cell whose center it covers. Max-normalized to [0, 1].
  Grid<double> predict_heatmap(const DescriptorVector& query, const PersonInstance& person, std::size_t grid_w,
                               std::size_t grid_h) const;

  std::size_t k() const noexcept { return k_; }
  void set_k(std::size_t k);
  const BlockNormalizer& normalizer() const noexcept { return normalizer_; }
  const std::vector<TrainingExample>& training() const noexcept { return training_; }

 private:
  KnnModel() = default;

  std::vector<TrainingExample> training_;
  BlockNormalizer normalizer_;
  std::size_t k_ = kDefaultNeighbors;
};

/// Rasterizes weighted boxes onto a grid covering [0,image_w]x[0,image_h];
/// a cell is covered when its center lies in the box. Max-normalized.
Grid<double> rasterize_votes(const std::vector<std::pair<BoundingBox, double>>& votes, double image_width,
                             double image_height, std::size_t grid_w, std::size_t grid_h);

}  // namespace interactee
