// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/registry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infercost/error.hpp"

namespace infercost {

using nlohmann::json;

void DeviceRegistry::add_device(HardwareSpec spec) {
  if (find_device(spec.name())) throw InvalidArgument("duplicate device name '" + spec.name() + "'");
  devices_.push_back(std::move(spec));
}

void DeviceRegistry::add_model(ModelConfig model) {
  if (find_model(model.name())) throw InvalidArgument("duplicate model name '" + model.name() + "'");
  models_.push_back(std::move(model));
}

void DeviceRegistry::merge(const DeviceRegistry& other) {
  for (const auto& d : other.devices_) add_device(d);
  for (const auto& m : other.models_) add_model(m);
}

const HardwareSpec* DeviceRegistry::find_device(std::string_view name) const noexcept {
  auto it = std::find_if(devices_.begin(), devices_.end(),
                         [&](const HardwareSpec& d) { return d.name() == name; });
  return it == devices_.end() ? nullptr : &*it;
}

const ModelConfig* DeviceRegistry::find_model(std::string_view name) const noexcept {
  auto it = std::find_if(models_.begin(), models_.end(),
                         [&](const ModelConfig& m) { return m.name() == name; });
  return it == models_.end() ? nullptr : &*it;
}

const HardwareSpec& DeviceRegistry::device(std::string_view name) const {
  if (const auto* d = find_device(name)) return *d;
  throw NotFound("unknown device '" + std::string(name) + "'");
}

const ModelConfig& DeviceRegistry::model(std::string_view name) const {
  if (const auto* m = find_model(name)) return *m;
  throw NotFound("unknown model '" + std::string(name) + "'");
}

namespace {

class FieldReader {
 public:
  FieldReader(const std::string& source, std::string path) : source_(source), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ParseError(source_ + ": " + path_ + (field.empty() ? "" : "." + field) + ": " + msg);
  }

  void check_keys(const json& obj, std::initializer_list<std::string_view> allowed) const {
    if (!obj.is_object()) fail("", "expected an object");
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(key, "unknown key");
      }
    }
  }

  const json& require(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) fail(key, "missing required field");
    return *it;
  }

  std::string string(const json& obj, const std::string& key) const {
    const json& v = require(obj, key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  // Every numeric registry field is a strictly positive quantity.
  double number(const json& v, const std::string& key) const {
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!(d > 0.0) || !std::isfinite(d)) fail(key, "must be > 0");
    return d;
  }

  double required_number(const json& obj, const std::string& key) const {
    return number(require(obj, key), key);
  }

  std::optional<double> optional_number(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return number(*it, key);
  }

  std::uint64_t count(const json& obj, const std::string& key) const {
    const json& v = require(obj, key);
    if (!v.is_number_unsigned()) {
      fail(key, "expected a positive integer");
    }
    if (v.get<std::uint64_t>() == 0) fail(key, "must be > 0");
    return v.get<std::uint64_t>();
  }

  const std::string& path() const { return path_; }

 private:
  const std::string& source_;
  std::string path_;
};

HardwareSpec read_device(const json& obj, const FieldReader& r) {
  r.check_keys(obj, {"name", "peak_tflops", "hbm_bandwidth", "tdp", "vector_peak_tflops"});
  std::map<DataFormat, double> peaks;
  if (auto it = obj.find("peak_tflops"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) r.fail("peak_tflops", "expected an object keyed by data format");
    for (const auto& [key, value] : it->items()) {
      auto fmt = parse_data_format(key);
      if (!fmt) r.fail("peak_tflops." + key, "unknown data format");
      if (value.is_null()) continue;
      peaks.emplace(*fmt, r.number(value, "peak_tflops." + key));
    }
  }
  try {
    return HardwareSpec(r.string(obj, "name"), std::move(peaks), r.required_number(obj, "tdp"),
                        r.optional_number(obj, "hbm_bandwidth"),
                        r.optional_number(obj, "vector_peak_tflops"));
  } catch (const InvalidArgument& e) {
    r.fail("", e.what());
  }
}

ModelConfig read_model(const json& obj, const FieldReader& r) {
  r.check_keys(obj, {"name", "layers", "hidden", "intermediate_ratio", "head_size", "gqa_group",
                     "vocab"});
  try {
    return ModelConfig(r.string(obj, "name"), r.count(obj, "layers"), r.count(obj, "hidden"),
                       r.required_number(obj, "intermediate_ratio"), r.count(obj, "head_size"),
                       r.count(obj, "gqa_group"), r.count(obj, "vocab"));
  } catch (const InvalidArgument& e) {
    r.fail("", e.what());
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_document(std::string_view text, const std::string& source) {
  // nlohmann keeps the last of two equal keys; track keys per open object to
  // reject duplicates instead.
  std::vector<std::set<std::string>> open_objects;
  std::string duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: open_objects.emplace_back(); break;
      case json::parse_event_t::object_end:
        if (!open_objects.empty()) open_objects.pop_back();
        break;
      case json::parse_event_t::key:
        if (!open_objects.empty() && !open_objects.back().insert(parsed.get<std::string>()).second &&
            duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default: break;
    }
    return true;
  };
  try {
    json doc = json::parse(text.begin(), text.end(), cb, /*allow_exceptions=*/true,
                           /*ignore_comments=*/true);
    if (!duplicate.empty()) throw ParseError(source + ": duplicate key '" + duplicate + "'");
    return doc;
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_of(text, e.byte), e.what());
  }
}

}  // namespace

DeviceRegistry parse_registry(std::string_view text, const std::string& source) {
  const json doc = parse_document(text, source);
  FieldReader top(source, "$");
  top.check_keys(doc, {"devices", "models"});

  DeviceRegistry registry;
  auto read_array = [&](const char* key, auto&& visit) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return;
    if (!it->is_array()) top.fail(key, "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      FieldReader r(source, std::string(key) + "[" + std::to_string(i) + "]");
      try {
        visit((*it)[i], r);
      } catch (const InvalidArgument& e) {
        r.fail("", e.what());
      }
    }
  };
  read_array("devices", [&](const json& obj, const FieldReader& r) {
    registry.add_device(read_device(obj, r));
  });
  read_array("models", [&](const json& obj, const FieldReader& r) {
    registry.add_model(read_model(obj, r));
  });
  return registry;
}

DeviceRegistry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open registry file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str(), path.string());
}

std::string serialize_registry(const DeviceRegistry& registry) {
  json doc = json::object();
  json devices = json::array();
  for (const auto& d : registry.devices()) {
    json peaks = json::object();
    for (const auto& [fmt, peak] : d.peaks()) peaks[std::string(to_string(fmt))] = peak;
    json obj = {{"name", d.name()}, {"peak_tflops", peaks}, {"tdp", d.tdp_watts()}};
    obj["hbm_bandwidth"] = d.hbm_bandwidth_tbps() ? json(*d.hbm_bandwidth_tbps()) : json(nullptr);
    obj["vector_peak_tflops"] =
        d.vector_peak_tflops() ? json(*d.vector_peak_tflops()) : json(nullptr);
    devices.push_back(std::move(obj));
  }
  json models = json::array();
  for (const auto& m : registry.models()) {
    models.push_back({{"name", m.name()},
                      {"layers", m.layers()},
                      {"hidden", m.hidden()},
                      {"intermediate_ratio", m.intermediate_ratio()},
                      {"head_size", m.head_size()},
                      {"gqa_group", m.gqa_group()},
                      {"vocab", m.vocab()}});
  }
  doc["devices"] = std::move(devices);
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

}  // namespace infercost
