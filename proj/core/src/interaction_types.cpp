#include "interactee/interaction_types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "interactee/error.hpp"
#include "interactee/kmeans.hpp"

namespace interactee {

Quantizer fit_quantizer(std::span<const LocalizationParams> examples, std::uint64_t seed) {
  std::set<std::pair<double, double>> distinct_xy;
  std::set<double> distinct_a;
  for (const auto& p : examples) {
    if (!is_valid(p)) throw InvalidArgument("quantizer input contains invalid localization params");
    distinct_xy.emplace(p.dx, p.dy);
    distinct_a.insert(p.a);
  }
  if (examples.size() < kDisplacementClusters || distinct_xy.size() < kDisplacementClusters ||
      distinct_a.size() < kAreaClusters) {
    throw TooFewDistinctPoints("quantizer needs >= 10 distinct displacements and >= 4 distinct areas (got " +
                               std::to_string(distinct_xy.size()) + " and " + std::to_string(distinct_a.size()) + ")");
  }

  PointMatrix xy{2, {}};
  PointMatrix area{1, {}};
  xy.values.reserve(examples.size() * 2);
  area.values.reserve(examples.size());
  for (const auto& p : examples) {
    xy.values.push_back(p.dx);
    xy.values.push_back(p.dy);
    area.values.push_back(p.a);
  }

  const KMeansResult xy_fit = lloyd_kmeans(xy, kDisplacementClusters, seed);
  const KMeansResult area_fit = lloyd_kmeans(area, kAreaClusters, seed);

  Quantizer q;
  q.seed = seed;
  for (std::size_t c = 0; c < kDisplacementClusters; ++c) q.xy_centroids[c] = {xy_fit.centroids.row(c)[0], xy_fit.centroids.row(c)[1]};
  for (std::size_t c = 0; c < kAreaClusters; ++c) q.area_centroids[c] = area_fit.centroids.row(c)[0];
  q.xy_distortion = xy_fit.distortion;
  q.area_distortion = area_fit.distortion;
  q.xy_distortion_history = xy_fit.distortion_history;
  q.area_distortion_history = area_fit.distortion_history;
  return q;
}

InteractionType assign_type(const Quantizer& q, const LocalizationParams& params) {
  InteractionType t;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < kDisplacementClusters; ++c) {
    const double ddx = params.dx - q.xy_centroids[c].x;
    const double ddy = params.dy - q.xy_centroids[c].y;
    const double d = ddx * ddx + ddy * ddy;
    if (d < best) {
      best = d;
      t.xy_index = c;
    }
  }
  best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < kAreaClusters; ++c) {
    const double d = std::abs(params.a - q.area_centroids[c]);
    if (d < best) {
      best = d;
      t.area_index = c;
    }
  }
  return t;
}

std::vector<TypeDistribution> type_distribution(std::span<const std::pair<InteractionType, std::string>> assignments) {
  std::vector<TypeDistribution> out(kInteractionTypeCount);
  for (std::size_t t = 0; t < kInteractionTypeCount; ++t) out[t].type_id = t;
  for (const auto& [type, label] : assignments) {
    const std::size_t id = type.type_id();
    if (id >= kInteractionTypeCount) throw InvalidArgument("interaction type id out of range");
    ++out[id].counts[label];
    ++out[id].total;
  }
  for (auto& dist : out) {
    double entropy = 0.0;
    for (const auto& [label, count] : dist.counts) {
      const double p = static_cast<double>(count) / static_cast<double>(dist.total);
      dist.probabilities[label] = p;
      entropy -= p * std::log(p);
    }
    dist.entropy = entropy;
  }
  return out;
}

}  // namespace interactee
