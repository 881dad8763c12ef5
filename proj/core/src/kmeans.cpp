#include "interactee/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "interactee/error.hpp"

namespace interactee {
namespace {

double squared_distance(const double* a, const double* b, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return sum;
}

PointMatrix kmeans_plus_plus(const PointMatrix& points, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = points.count();
  const std::size_t dim = points.dim;
  PointMatrix centroids{dim, {}};
  centroids.values.reserve(k * dim);

  auto push = [&](std::size_t i) { centroids.values.insert(centroids.values.end(), points.row(i), points.row(i) + dim); };

  push(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), centroids.row(0), dim);

  while (centroids.count() < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] > 0.0 && target < d2[i]) {
          pick = i;
          break;
        }
        target -= d2[i];
      }
      // Rounding can leave `pick` on a zero-weight point; walk back to a positive one.
      while (d2[pick] == 0.0 && pick > 0) --pick;
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }
    push(pick);
    const double* c = centroids.row(centroids.count() - 1);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points.row(i), c, dim));
  }
  return centroids;
}

}  // namespace

std::size_t nearest_centroid(const PointMatrix& centroids, const double* point) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.count(); ++c) {
    const double d = squared_distance(point, centroids.row(c), centroids.dim);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

KMeansResult lloyd_kmeans(const PointMatrix& points, std::size_t k, std::uint64_t seed, int max_iters) {
  const std::size_t n = points.count();
  const std::size_t dim = points.dim;
  if (k == 0 || dim == 0) throw InvalidArgument("k-means needs k >= 1 and dim >= 1");
  if (n < k) throw TooFewDistinctPoints("k-means needs at least k points");

  std::mt19937_64 rng(seed);
  KMeansResult result;
  result.centroids = kmeans_plus_plus(points, k, rng);
  result.labels.assign(n, std::numeric_limits<std::size_t>::max());

  std::vector<double> point_d2(n);
  for (int iter = 0;; ++iter) {
    bool changed = false;
    double distortion = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = nearest_centroid(result.centroids, points.row(i));
      if (c != result.labels[i]) changed = true;
      result.labels[i] = c;
      point_d2[i] = squared_distance(points.row(i), result.centroids.row(c), dim);
      distortion += point_d2[i];
    }
    result.distortion = distortion;
    result.distortion_history.push_back(distortion);
    result.iterations = iter;
    if (!changed) {
      result.converged = true;
      break;
    }
    if (iter >= max_iters) break;

    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = result.labels[i];
      ++counts[c];
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += points.row(i)[d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Farthest point from its own centroid; it is then excluded from
        // further re-seeds in this round.
        const auto far = std::max_element(point_d2.begin(), point_d2.end()) - point_d2.begin();
        std::copy(points.row(far), points.row(far) + dim, result.centroids.row(c));
        point_d2[far] = -1.0;
        continue;
      }
      for (std::size_t d = 0; d < dim; ++d) {
        result.centroids.row(c)[d] = sums[c * dim + d] / static_cast<double>(counts[c]);
      }
    }
  }
  return result;
}

}  // namespace interactee
