#pragma once

#include <span>
#include <string>
#include <vector>

#include "interactee/geometry.hpp"

namespace interactee {

struct SceneObject {
  BoundingBox box;
  std::string category;
  std::string object_id;
};

struct RankedObject {
  SceneObject object;
  double score = 0.0;  // fraction of the object's area inside the predicted box
};

/// Objects sorted by descending overlap score; ties put the smaller object
/// first, then the lexicographically smaller object_id. Throws EmptyInput.
std::vector<RankedObject> rank_importance(std::span<const SceneObject> objects, const BoundingBox& predicted);

}  // namespace interactee
