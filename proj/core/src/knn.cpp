#include "interactee/knn.hpp"

#include <algorithm>
#include <cmath>

#include "interactee/error.hpp"

namespace interactee {

KnnModel KnnModel::fit(std::vector<TrainingExample> training, std::size_t k, std::size_t max_pairs, std::uint64_t seed) {
  if (k == 0) throw TooFewExamples("k must be at least 1");
  if (training.size() < k) {
    throw TooFewExamples("k = " + std::to_string(k) + " exceeds training size " + std::to_string(training.size()));
  }
  for (const auto& ex : training) {
    if (!ex.descriptor.same_layout(training.front().descriptor)) throw LayoutMismatch("training descriptors have differing layouts");
    if (!is_valid(ex.params)) throw InvalidArgument("training localization params must be finite with a > 0");
  }

  KnnModel model;
  if (training.size() == 1) {
    // A single example has no pairwise spread; every scale falls back to 1.
    const Layout& layout = training.front().descriptor.layout();
    for (const auto& b : layout.blocks()) {
      model.normalizer_.names.push_back(b.name);
      model.normalizer_.scales.push_back(1.0);
    }
  } else {
    std::vector<DescriptorVector> descriptors;
    descriptors.reserve(training.size());
    for (const auto& ex : training) descriptors.push_back(ex.descriptor);
    model.normalizer_ = fit_normalizer(descriptors, max_pairs, seed);
  }
  model.training_ = std::move(training);
  model.k_ = k;
  return model;
}

KnnModel::KnnModel(std::vector<TrainingExample> training, BlockNormalizer normalizer, std::size_t k)
    : training_(std::move(training)), normalizer_(std::move(normalizer)), k_(k) {
  if (k_ == 0 || training_.size() < k_) throw TooFewExamples("k exceeds training size");
  for (const auto& ex : training_) {
    if (!ex.descriptor.same_layout(training_.front().descriptor)) throw LayoutMismatch("training descriptors have differing layouts");
  }
}

void KnnModel::set_k(std::size_t k) {
  if (k == 0 || training_.size() < k) throw TooFewExamples("k exceeds training size");
  k_ = k;
}

KnnPrediction KnnModel::predict(const DescriptorVector& query) const {
  if (!query.same_layout(training_.front().descriptor)) throw LayoutMismatch("query layout does not match the model");

  std::vector<Neighbor> all(training_.size());
  for (std::size_t i = 0; i < training_.size(); ++i) {
    all[i] = {i, normalized_distance(normalizer_, query, training_[i].descriptor), 0.0};
  }
  const auto closer = [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k_), all.end(), closer);
  all.resize(k_);

  // exp(-d) shifted by the nearest distance; the shift cancels on normalization.
  const double d0 = all.front().distance;
  double total = 0.0;
  for (auto& n : all) {
    n.weight = std::exp(-(n.distance - d0));
    total += n.weight;
  }
  KnnPrediction out;
  out.params = {0.0, 0.0, 0.0};
  for (auto& n : all) {
    n.weight /= total;
    const auto& y = training_[n.index].params;
    out.params.dx += n.weight * y.dx;
    out.params.dy += n.weight * y.dy;
    out.params.a += n.weight * y.a;
  }
  out.neighbors = std::move(all);
  return out;
}

Grid<double> KnnModel::predict_heatmap(const DescriptorVector& query, const PersonInstance& person, std::size_t grid_w,
                                       std::size_t grid_h) const {
  const KnnPrediction pred = predict(query);
  std::vector<std::pair<BoundingBox, double>> votes;
  votes.reserve(pred.neighbors.size());
  for (const auto& n : pred.neighbors) {
    votes.emplace_back(denormalize_to_box(training_[n.index].params, person.person_box), n.weight);
  }
  return rasterize_votes(votes, person.image_width, person.image_height, grid_w, grid_h);
}

Grid<double> rasterize_votes(const std::vector<std::pair<BoundingBox, double>>& votes, double image_width,
                             double image_height, std::size_t grid_w, std::size_t grid_h) {
  if (grid_w == 0 || grid_h == 0) throw InvalidArgument("heatmap grid must be non-empty");
  Grid<double> grid(grid_w, grid_h, 0.0);
  const double cell_w = image_width / static_cast<double>(grid_w);
  const double cell_h = image_height / static_cast<double>(grid_h);
  for (const auto& [box, weight] : votes) {
    for (std::size_t y = 0; y < grid_h; ++y) {
      const double cy = (static_cast<double>(y) + 0.5) * cell_h;
      if (cy < box.y_min() || cy > box.y_max()) continue;
      for (std::size_t x = 0; x < grid_w; ++x) {
        if (box.contains({(static_cast<double>(x) + 0.5) * cell_w, cy})) grid(x, y) += weight;
      }
    }
  }
  const double peak = *std::max_element(grid.data().begin(), grid.data().end());
  if (peak > 0.0) {
    for (double& v : grid.data()) v /= peak;
  }
  return grid;
}

}  // namespace interactee
