#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "interactee/geometry.hpp"

namespace interactee {

inline constexpr std::size_t kDisplacementClusters = 10;
inline constexpr std::size_t kAreaClusters = 4;
inline constexpr std::size_t kInteractionTypeCount = kDisplacementClusters * kAreaClusters;

/// Two independent codebooks: 10 displacement centroids over (dx, dy) and 4
/// area centroids over a.
struct Quantizer {
  std::array<Point2, kDisplacementClusters> xy_centroids{};
  std::array<double, kAreaClusters> area_centroids{};
  std::uint64_t seed = 0;
  double xy_distortion = 0.0;
  double area_distortion = 0.0;
  std::vector<double> xy_distortion_history;
  std::vector<double> area_distortion_history;
};

struct InteractionType {
  std::size_t xy_index = 0;
  std::size_t area_index = 0;

  /// xy_index * 4 + area_index. The numbering carries no semantic order.
  std::size_t type_id() const noexcept { return xy_index * kAreaClusters + area_index; }

  friend bool operator==(const InteractionType&, const InteractionType&) = default;
};

/// Throws TooFewDistinctPoints unless there are >= 10 examples with >= 10
/// distinct (dx, dy) and >= 4 distinct a values.
Quantizer fit_quantizer(std::span<const LocalizationParams> examples, std::uint64_t seed);

InteractionType assign_type(const Quantizer& q, const LocalizationParams& params);

struct TypeDistribution {
  std::size_t type_id = 0;
  std::size_t total = 0;
  std::map<std::string, std::size_t> counts;
  std::map<std::string, double> probabilities;
  double entropy = 0.0;  // natural log
};

/// One entry per type id (always kInteractionTypeCount entries); types with
/// no examples have empty maps and zero entropy.
std::vector<TypeDistribution> type_distribution(std::span<const std::pair<InteractionType, std::string>> assignments);

}  // namespace interactee
