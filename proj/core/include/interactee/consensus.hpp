#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "interactee/geometry.hpp"

namespace interactee {

using Point4 = std::array<double, 4>;

/// Multiple annotators' interactee boxes for one person.
struct AnnotationSet {
  std::string image_id;
  std::size_t person_index = 0;
  std::vector<BoundingBox> boxes;
};

struct Cluster {
  std::vector<std::size_t> members;  // ascending input indices
  Point4 mode{};
};

/// Clusters partition the input indices. They are ordered by their first
/// member, so cluster 0 always contains index 0.
struct ClusterResult {
  std::vector<Cluster> clusters;
};

/// (cx, cy, w, h) embedding used for mean shift.
Point4 box_to_point(const BoundingBox& box);

struct MeanShiftOptions {
  double bandwidth = 1.0;
  int max_iters = 300;
  double tol = 1e-6;
};

/// Flat-kernel mean shift. Each point climbs to a mode by repeatedly moving
/// to the mean of all input points within `bandwidth` (Euclidean, closed
/// ball). Modes within bandwidth/2 of an existing cluster's mode join that
/// cluster, scanning points in index order.
ClusterResult mean_shift(std::span<const Point4> points, const MeanShiftOptions& options);

/// Index into `annotations.boxes` of the consensus box: the member of the
/// largest mean-shift cluster with the highest mean IOU against the other
/// members. Ties resolve to the earliest cluster and then the lowest index.
std::size_t consensus_index(const AnnotationSet& annotations, double bandwidth);

BoundingBox consensus_box(const AnnotationSet& annotations, double bandwidth);

/// 0.1 x image diagonal.
double default_consensus_bandwidth(double image_width, double image_height);

}  // namespace interactee
