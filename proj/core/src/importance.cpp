#include "interactee/importance.hpp"

#include <algorithm>

#include "interactee/error.hpp"

namespace interactee {

std::vector<RankedObject> rank_importance(std::span<const SceneObject> objects, const BoundingBox& predicted) {
  if (objects.empty()) throw EmptyInput("importance ranking needs at least one object");
  std::vector<RankedObject> ranked;
  ranked.reserve(objects.size());
  for (const auto& o : objects) {
    ranked.push_back({o, std::clamp(intersection_area(o.box, predicted) / o.box.area(), 0.0, 1.0)});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedObject& a, const RankedObject& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.object.box.area() != b.object.box.area()) return a.object.box.area() < b.object.box.area();
    return a.object.object_id < b.object.object_id;
  });
  return ranked;
}

}  // namespace interactee
