#include "interactee/dataset.hpp"

#include <cmath>
#include <set>

#include "interactee/error.hpp"
#include "interactee/serialization.hpp"

namespace interactee {
namespace {

constexpr int kDatasetVersion = 1;

BoundingBox read_box(const Json& j, const std::string& where, const ImageRecord& image, std::size_t& clamped) {
  BoundingBox raw;
  try {
    raw = j.get<BoundingBox>();
  } catch (const Json::exception& e) {
    throw ValidationError(where, e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where, e.what());
  } catch (const InvalidArgument& e) {
    throw ValidationError(where, e.what());
  }
  BoundingBox inside;
  if (!clamp_to_image(raw, image.width, image.height, inside)) throw ValidationError(where, "box lies outside its image");
  if (!(inside == raw)) ++clamped;
  return inside;
}

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + "/" + key, "missing field");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(where + "/" + key, e.what());
  }
}

PersonRecord read_person(const Json& j, const std::string& where, const ImageRecord& image, std::size_t& clamped) {
  if (!j.is_object()) throw ValidationError(where, "person must be an object");
  PersonRecord p;
  if (!j.contains("person_box")) throw ValidationError(where + "/person_box", "missing field");
  p.person_box = read_box(j.at("person_box"), where + "/person_box", image, clamped);
  if (j.contains("annotator_boxes")) {
    const auto& arr = j.at("annotator_boxes");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      p.annotator_boxes.push_back(read_box(arr[i], where + "/annotator_boxes/" + std::to_string(i), image, clamped));
    }
  }
  if (j.contains("gt_interactee") && !j.at("gt_interactee").is_null()) {
    p.gt_interactee = read_box(j.at("gt_interactee"), where + "/gt_interactee", image, clamped);
  }
  if (j.contains("interactee_category")) p.interactee_category = field<std::string>(j, "interactee_category", where);
  if (j.contains("descriptor_ref")) p.descriptor_ref = field<std::string>(j, "descriptor_ref", where);
  if (j.contains("captions")) p.captions = field<std::vector<std::string>>(j, "captions", where);
  if (j.contains("scene_objects")) {
    const auto& arr = j.at("scene_objects");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string at = where + "/scene_objects/" + std::to_string(i);
      SceneObject o;
      o.object_id = field<std::string>(arr[i], "object_id", at);
      o.category = arr[i].value("category", "");
      if (!arr[i].contains("box")) throw ValidationError(at + "/box", "missing field");
      o.box = read_box(arr[i].at("box"), at + "/box", image, clamped);
      p.scene_objects.push_back(std::move(o));
    }
  }
  return p;
}

}  // namespace

DatasetFile parse_dataset(const std::string& text, std::size_t* clamped_out) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("dataset: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("", "dataset root must be an object");

  DatasetFile ds;
  ds.version = field<int>(root, "version", "");
  if (ds.version != kDatasetVersion) throw ValidationError("/version", "unsupported dataset version");
  if (root.contains("descriptor_store")) ds.descriptor_store = field<std::string>(root, "descriptor_store", "");
  if (!root.contains("images") || !root.at("images").is_array()) throw ValidationError("/images", "missing image list");

  std::size_t clamped = 0;
  std::set<std::string> ids;
  const auto& images = root.at("images");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string where = "/images/" + std::to_string(i);
    const Json& j = images[i];
    if (!j.is_object()) throw ValidationError(where, "image must be an object");
    ImageRecord img;
    img.image_id = field<std::string>(j, "image_id", where);
    if (!ids.insert(img.image_id).second) throw ValidationError(where + "/image_id", "duplicate image_id '" + img.image_id + "'");
    img.width = field<double>(j, "width", where);
    img.height = field<double>(j, "height", where);
    if (!std::isfinite(img.width) || !std::isfinite(img.height) || img.width <= 0.0 || img.height <= 0.0) {
      throw ValidationError(where, "image width and height must be positive");
    }
    if (j.contains("split")) img.split = field<std::string>(j, "split", where);
    if (j.contains("persons")) {
      const auto& persons = j.at("persons");
      for (std::size_t p = 0; p < persons.size(); ++p) {
        img.persons.push_back(read_person(persons[p], where + "/persons/" + std::to_string(p), img, clamped));
      }
    }
    ds.images.push_back(std::move(img));
  }
  if (clamped_out) *clamped_out = clamped;
  return ds;
}

std::string dataset_to_json(const DatasetFile& ds) {
  Json root = Json::object();
  root["version"] = ds.version;
  if (!ds.descriptor_store.empty()) root["descriptor_store"] = ds.descriptor_store;
  Json images = Json::array();
  for (const auto& img : ds.images) {
    Json ji = {{"image_id", img.image_id}, {"width", img.width}, {"height", img.height}, {"split", img.split}};
    Json persons = Json::array();
    for (const auto& p : img.persons) {
      Json jp = {{"person_box", p.person_box}};
      if (!p.annotator_boxes.empty()) jp["annotator_boxes"] = p.annotator_boxes;
      if (p.gt_interactee) jp["gt_interactee"] = *p.gt_interactee;
      if (p.interactee_category) jp["interactee_category"] = *p.interactee_category;
      if (p.descriptor_ref) jp["descriptor_ref"] = *p.descriptor_ref;
      if (!p.captions.empty()) jp["captions"] = p.captions;
      if (!p.scene_objects.empty()) jp["scene_objects"] = p.scene_objects;
      persons.push_back(std::move(jp));
    }
    ji["persons"] = std::move(persons);
    images.push_back(std::move(ji));
  }
  root["images"] = std::move(images);
  return root.dump(2) + "\n";
}

LoadedDataset load_dataset(const std::filesystem::path& path) {
  LoadedDataset out;
  out.file = parse_dataset(read_text_file(path), &out.clamped_boxes);
  if (!out.file.descriptor_store.empty()) {
    out.store = DescriptorStore::load(path.parent_path() / out.file.descriptor_store);
  }
  for (std::size_t i = 0; i < out.file.images.size(); ++i) {
    const auto& img = out.file.images[i];
    for (std::size_t p = 0; p < img.persons.size(); ++p) {
      const auto& ref = img.persons[p].descriptor_ref;
      if (!ref) continue;
      const std::string where = "/images/" + std::to_string(i) + "/persons/" + std::to_string(p) + "/descriptor_ref";
      if (!out.store) throw ValidationError(where, "descriptor_ref given but the dataset names no descriptor_store");
      if (!out.store->contains(*ref)) throw ValidationError(where, "unresolved descriptor_ref '" + *ref + "'");
    }
  }
  return out;
}

void save_dataset(const DatasetFile& dataset, const std::filesystem::path& path) {
  write_text_file(path, dataset_to_json(dataset));
}

}  // namespace interactee
