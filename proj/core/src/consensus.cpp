#include "interactee/consensus.hpp"

#include <cmath>

#include "interactee/error.hpp"

namespace interactee {
namespace {

double squared_distance(const Point4& a, const Point4& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

Point4 climb(std::span<const Point4> points, Point4 start, const MeanShiftOptions& options) {
  const double radius2 = options.bandwidth * options.bandwidth;
  Point4 current = start;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    Point4 sum{};
    std::size_t count = 0;
    for (const Point4& p : points) {
      if (squared_distance(p, current) <= radius2) {
        for (std::size_t i = 0; i < 4; ++i) sum[i] += p[i];
        ++count;
      }
    }
    if (count == 0) break;  // window drifted off the data
    Point4 next;
    for (std::size_t i = 0; i < 4; ++i) next[i] = sum[i] / static_cast<double>(count);
    const double shift = std::sqrt(squared_distance(next, current));
    current = next;
    if (shift < options.tol) break;
  }
  return current;
}

}  // namespace

Point4 box_to_point(const BoundingBox& box) {
  const Point2 c = box.center();
  return {c.x, c.y, box.width(), box.height()};
}

ClusterResult mean_shift(std::span<const Point4> points, const MeanShiftOptions& options) {
  if (points.empty()) throw EmptyInput("mean_shift needs at least one point");
  if (!(options.bandwidth > 0.0)) throw InvalidArgument("mean_shift bandwidth must be positive");

  const double merge2 = (options.bandwidth / 2.0) * (options.bandwidth / 2.0);
  ClusterResult result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point4 mode = climb(points, points[i], options);
    bool merged = false;
    for (Cluster& cluster : result.clusters) {
      if (squared_distance(cluster.mode, mode) <= merge2) {
        cluster.members.push_back(i);
        merged = true;
        break;
      }
    }
    if (!merged) result.clusters.push_back({{i}, mode});
  }
  return result;
}

std::size_t consensus_index(const AnnotationSet& annotations, double bandwidth) {
  const auto& boxes = annotations.boxes;
  if (boxes.empty()) throw EmptyInput("annotation set for image '" + annotations.image_id + "' has no boxes");
  if (boxes.size() == 1) return 0;

  std::vector<Point4> points;
  points.reserve(boxes.size());
  for (const auto& b : boxes) points.push_back(box_to_point(b));
  const ClusterResult clusters = mean_shift(points, {.bandwidth = bandwidth});

  const Cluster* largest = &clusters.clusters.front();
  for (const Cluster& c : clusters.clusters) {
    if (c.members.size() > largest->members.size()) largest = &c;
  }
  const auto& members = largest->members;
  if (members.size() == 1) return members.front();

  std::size_t best = members.front();
  double best_score = -1.0;
  for (std::size_t i : members) {
    double total = 0.0;
    for (std::size_t j : members) {
      if (i != j) total += iou(boxes[i], boxes[j]);
    }
    const double mean = total / static_cast<double>(members.size() - 1);
    if (mean > best_score) {
      best_score = mean;
      best = i;
    }
  }
  return best;
}

BoundingBox consensus_box(const AnnotationSet& annotations, double bandwidth) {
  return annotations.boxes[consensus_index(annotations, bandwidth)];
}

double default_consensus_bandwidth(double image_width, double image_height) {
  return 0.1 * std::hypot(image_width, image_height);
}

}  // namespace interactee
