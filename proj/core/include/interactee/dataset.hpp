#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "interactee/descriptor_store.hpp"
#include "interactee/geometry.hpp"
#include "interactee/importance.hpp"

namespace interactee {

struct PersonRecord {
  BoundingBox person_box;
  std::vector<BoundingBox> annotator_boxes;
  std::optional<BoundingBox> gt_interactee;
  std::optional<std::string> interactee_category;
  std::optional<std::string> descriptor_ref;
  std::vector<std::string> captions;
  std::vector<SceneObject> scene_objects;
};

struct ImageRecord {
  std::string image_id;
  double width = 0.0;
  double height = 0.0;
  std::string split = "train";
  std::vector<PersonRecord> persons;

  PersonInstance person_instance(std::size_t index) const {
    return {image_id, persons.at(index).person_box, width, height};
  }
};

/// Dataset JSON:
///
///   {"version": 1, "descriptor_store": "<path relative to this file>",
///    "images": [{"image_id", "width", "height", "split",
///                "persons": [{"person_box", "annotator_boxes", "gt_interactee",
///                             "interactee_category", "descriptor_ref",
///                             "captions", "scene_objects"}]}]}
///
/// Everything below "persons" except person_box is optional.
struct DatasetFile {
  int version = 1;
  std::string descriptor_store;
  std::vector<ImageRecord> images;
};

struct LoadedDataset {
  DatasetFile file;
  std::optional<DescriptorStore> store;
  std::size_t clamped_boxes = 0;  // boxes intersected with their image bounds on ingest
};

/// Parses and validates a dataset document. Throws ParseError or
/// ValidationError (with a JSON-pointer locator). Boxes are clamped to the
/// image bounds and counted in `clamped`.
DatasetFile parse_dataset(const std::string& text, std::size_t* clamped = nullptr);
std::string dataset_to_json(const DatasetFile& dataset);

/// Also loads the referenced descriptor store (relative to the dataset file)
/// and checks that every descriptor_ref resolves.
LoadedDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const DatasetFile& dataset, const std::filesystem::path& path);

}  // namespace interactee
