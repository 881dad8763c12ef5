#include "interactee/priming.hpp"

#include "interactee/error.hpp"

namespace interactee {

BoundingBox enlarge_box(const BoundingBox& box, double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("enlargement factor must be positive");
  const Point2 c = box.center();
  const double w = box.width() * factor;
  const double h = box.height() * factor;
  return {c.x - w / 2.0, c.y - h / 2.0, w, h};
}

std::vector<Detection> prime_detections(std::span<const Detection> detections, const BoundingBox& predicted,
                                        const PrimingOptions& options) {
  const BoundingBox region = enlarge_box(predicted, options.enlargement);
  std::vector<Detection> out(detections.begin(), detections.end());
  for (auto& d : out) {
    const bool keep = options.rule == PrimingRule::kCenterInside ? region.contains(d.box.center())
                                                                 : iou(d.box, region) > options.iou_threshold;
    if (!keep) d.score = -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace interactee
