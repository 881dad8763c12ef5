#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace interactee {

/// Row-major set of `count` points of dimension `dim`.
struct PointMatrix {
  std::size_t dim = 0;
  std::vector<double> values;

  std::size_t count() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
  const double* row(std::size_t i) const noexcept { return values.data() + i * dim; }
  double* row(std::size_t i) noexcept { return values.data() + i * dim; }
};

struct KMeansResult {
  PointMatrix centroids;
  std::vector<std::size_t> labels;
  double distortion = 0.0;                 // sum of squared distances at exit
  std::vector<double> distortion_history;  // one entry per assignment step
  int iterations = 0;
  bool converged = false;
};

/// Nearest centroid by squared Euclidean distance; ties go to the lowest index.
std::size_t nearest_centroid(const PointMatrix& centroids, const double* point);

/// Lloyd's algorithm with k-means++ seeding. Stops at an assignment fixpoint
/// or after `max_iters` updates. A cluster that empties is re-seeded at the
/// point farthest from its assigned centroid.
KMeansResult lloyd_kmeans(const PointMatrix& points, std::size_t k, std::uint64_t seed, int max_iters = 300);

}  // namespace interactee
