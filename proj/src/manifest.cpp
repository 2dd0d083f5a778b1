// Copyright 2026 The motionsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "motionsim/manifest.hpp"

#include <set>

#include <json.hpp>

#include "motionsim/error.hpp"
#include "motionsim/io.hpp"

namespace motionsim {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

Params params_from_json(const json& obj, const std::string& where) {
  Params out;
  if (obj.is_null()) return out;
  if (!obj.is_object()) throw ParseError(where + ": params must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (value.is_boolean()) {
      out[key] = value.get<bool>();
    } else if (value.is_number_integer()) {
      out[key] = value.get<long>();
    } else if (value.is_number()) {
      out[key] = value.get<double>();
    } else if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else {
      throw ParseError(where + ": parameter '" + key + "' must be a scalar");
    }
  }
  return out;
}

KeypointSchema schema_from_json(const json& obj) {
  KeypointSchema s;
  s.keypoint_names =
      get<std::vector<std::string>>(obj, "keypoint_names", "keypoint schema");
  s.dims_per_keypoint = get<Index>(obj, "dims_per_keypoint", "keypoint schema");
  if (obj.contains("mirror_pairs")) {
    for (const auto& p : obj["mirror_pairs"]) {
      if (!p.is_array() || p.size() != 2) {
        throw SchemaError("mirror_pairs entries must be [left, right]");
      }
      s.mirror_pairs.emplace_back(p[0].get<Index>(), p[1].get<Index>());
    }
  }
  if (obj.contains("mirror_axis")) {
    s.mirror_axis = get<Index>(obj, "mirror_axis", "keypoint schema");
  }
  s.validate();
  return s;
}

RobotMirrorSpec robot_spec_from_json(const json& obj) {
  RobotMirrorSpec r;
  r.negate_channels =
      get<std::vector<Index>>(obj, "negate_channels", "robot mirror spec");
  return r;
}

// A schema reference is either an inline object or a path to a JSON file.
json resolve_document(const json& ref, const std::filesystem::path& base_dir) {
  if (ref.is_string()) {
    const auto path = base_dir / ref.get<std::string>();
    if (!std::filesystem::exists(path)) {
      throw IoError("referenced file not found: '" + path.string() + "'");
    }
    return parse_json(read_file(path), path.string());
  }
  return ref;
}

PreprocessStep step_from_json(const json& obj,
                              const std::filesystem::path& base_dir) {
  const auto op = get<std::string>(obj, "op", "preprocessing step");
  const json params = obj.contains("params") ? obj["params"] : json::object();
  const std::string where = "preprocessing step '" + op + "'";
  if (op == "resample") {
    return ResampleStep{get<double>(params, "target_hz", where)};
  }
  if (op == "select_keypoints") {
    SelectKeypointsStep s;
    s.schema = schema_from_json(
        resolve_document(get<json>(params, "schema", where), base_dir));
    s.keep = params.contains("keep")
                 ? get<std::vector<std::string>>(params, "keep", where)
                 : default_upper_body_keep();
    return s;
  }
  if (op == "mirror") {
    MirrorStep s;
    s.schema = schema_from_json(
        resolve_document(get<json>(params, "schema", where), base_dir));
    s.robot = robot_spec_from_json(
        resolve_document(get<json>(params, "robot", where), base_dir));
    return s;
  }
  if (op == "align") {
    AlignStep s;
    if (params.contains("gamma")) s.options.gamma = get<double>(params, "gamma", where);
    if (params.contains("raw_weight")) {
      s.options.raw_weight = get<double>(params, "raw_weight", where);
    }
    return s;
  }
  throw ParseError("unknown preprocessing op '" + op + "'");
}

std::vector<MeasureSpec> measures_from_json(const json& list) {
  if (!list.is_array()) throw ParseError("measures must be a JSON array");
  std::vector<MeasureSpec> out;
  for (const auto& item : list) {
    std::string name;
    Params params;
    if (item.is_string()) {
      name = item.get<std::string>();
    } else {
      name = get<std::string>(item, "measure", "measure entry");
      if (item.contains("params")) {
        params = params_from_json(item["params"], "measure '" + name + "'");
      }
    }
    const auto measure = parse_measure(name);
    if (!measure) {
      throw ParameterError("unknown measure '" + name + "' (valid: " +
                           measure_names() + ")");
    }
    out.push_back(measure_spec_from_params(*measure, params));
  }
  return out;
}

}  // namespace

std::vector<MeasureSpec> parse_measure_list(const std::string& json_text) {
  return measures_from_json(parse_json(json_text, "measure list"));
}

void MotionPairManifest::validate() const {
  if (entries.empty()) throw ParameterError("manifest has no entries");
  if (measures.empty()) throw ParameterError("manifest has no measures");
  std::set<std::string> ids;
  for (const auto& e : entries) {
    if (!ids.insert(e.pair_id).second) {
      throw ParameterError("duplicate pair_id '" + e.pair_id + "'");
    }
  }
  std::set<Measure> seen;
  for (const auto& m : measures) {
    if (!seen.insert(m.measure).second) {
      throw ParameterError("measure '" + std::string(to_string(m.measure)) +
                           "' listed twice");
    }
  }
}

MotionPairManifest parse_manifest(const std::string& json_text,
                                  const std::filesystem::path& base_dir) {
  const json doc = parse_json(json_text, "manifest");
  if (!doc.is_object()) throw ParseError("manifest must be a JSON object");
  MotionPairManifest m;
  for (const auto& e : get<json>(doc, "entries", "manifest")) {
    ManifestEntry entry;
    entry.pair_id = get<std::string>(e, "pair_id", "manifest entry");
    entry.path_a = base_dir / get<std::string>(e, "path_a", "manifest entry");
    entry.path_b = base_dir / get<std::string>(e, "path_b", "manifest entry");
    entry.group_label = get<std::string>(e, "group_label", "manifest entry");
    for (const auto* p : {&entry.path_a, &entry.path_b}) {
      if (!std::filesystem::exists(*p)) {
        throw IoError("referenced file not found: '" + p->string() + "'");
      }
    }
    m.entries.push_back(std::move(entry));
  }
  m.measures = measures_from_json(get<json>(doc, "measures", "manifest"));
  if (doc.contains("preprocessing")) {
    for (const auto& step : doc["preprocessing"]) {
      m.preprocessing.push_back(step_from_json(step, base_dir));
    }
  }
  m.validate();
  return m;
}

MotionPairManifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw IoError("manifest not found: '" + path.string() + "'");
  }
  return parse_manifest(read_file(path), path.parent_path());
}

KeypointSchema parse_keypoint_schema(const std::string& json_text) {
  return schema_from_json(parse_json(json_text, "keypoint schema"));
}

KeypointSchema load_keypoint_schema(const std::filesystem::path& path) {
  return parse_keypoint_schema(read_file(path));
}

RobotMirrorSpec parse_robot_mirror_spec(const std::string& json_text) {
  return robot_spec_from_json(parse_json(json_text, "robot mirror spec"));
}

}  // namespace motionsim
