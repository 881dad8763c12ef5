#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "interactee/bleu.hpp"
#include "interactee/evaluation.hpp"
#include "interactee/features.hpp"
#include "interactee/geometry.hpp"
#include "interactee/importance.hpp"
#include "interactee/interaction_types.hpp"
#include "interactee/mdn.hpp"
#include "interactee/priming.hpp"

// JSON encodings. Boxes are [x_min, y_min, width, height]; a box may also be
// read from {"x_min","y_min","x_max","y_max"} corner form. Doubles are
// written in shortest round-trip form, so save/load is bit-exact.
namespace interactee {

using Json = nlohmann::json;

void to_json(Json& j, const BoundingBox& b);
void from_json(const Json& j, BoundingBox& b);
void to_json(Json& j, const LocalizationParams& p);
void from_json(const Json& j, LocalizationParams& p);
void to_json(Json& j, const Quantizer& q);
void from_json(const Json& j, Quantizer& q);
void to_json(Json& j, const BlockNormalizer& n);
void from_json(const Json& j, BlockNormalizer& n);
void to_json(Json& j, const MdnNetwork& net);
void from_json(const Json& j, MdnNetwork& net);
void to_json(Json& j, const GmmParams& g);
void to_json(Json& j, const EvalReport& r);
void to_json(Json& j, const TypeDistribution& d);
void to_json(Json& j, const BleuScore& s);
void to_json(Json& j, const Detection& d);
void from_json(const Json& j, Detection& d);
void to_json(Json& j, const SceneObject& o);
void from_json(const Json& j, SceneObject& o);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses a file, mapping JSON syntax errors to ParseError.
Json read_json_file(const std::filesystem::path& path);
/// Two-space indented with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace interactee
