// Copyright (c) 2026 Rawforge Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <nlohmann/json.hpp>

#include "rawforge/dng.hpp"
#include "rawforge/error.hpp"
#include "rawforge/image_io.hpp"

// Profile JSON, schema version 1. Numbers are emitted in shortest round-trip
// form (exact double recovery), so save/load is lossless.

namespace rawforge::dng {

namespace {

using nlohmann::json;

json mat_to_json(const Mat3& m) {
    json a = json::array();
    for (double v : m.m) a.push_back(v);
    return a;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

const json& require_field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw Error("profile JSON: missing \"" + path + key + "\"");
    return *it;
}

double require_number(const json& j, const std::string& path, const char* key) {
    const json& f = require_field(j, path, key);
    if (!f.is_number())
        throw Error("profile JSON: \"" + path + key + "\" must be a number");
    return f.get<double>();
}

std::vector<double> require_array(const json& j, const std::string& path, const char* key,
                                  std::size_t n) {
    const json& f = require_field(j, path, key);
    if (!f.is_array() || f.size() != n)
        throw Error("profile JSON: \"" + path + key + "\" must be an array of " +
                    std::to_string(n) + " numbers");
    std::vector<double> out;
    out.reserve(n);
    for (const json& v : f) {
        if (!v.is_number())
            throw Error("profile JSON: \"" + path + key + "\" must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Mat3 mat_from(const std::vector<double>& v) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.m[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    return m;
}

Vec3 vec_from(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

} // namespace

std::string profile_to_json(const CameraProfile& p) {
    json j;
    j["schema"] = 1;
    j["name"] = p.name;
    j["color_matrix_1"] = mat_to_json(p.color_matrix_1);
    j["color_matrix_2"] = mat_to_json(p.color_matrix_2);
    j["forward_matrix_1"] = mat_to_json(p.forward_matrix_1);
    j["forward_matrix_2"] = mat_to_json(p.forward_matrix_2);
    j["calibration_illuminant_1_kelvin"] = p.calib_illum_1_kelvin;
    j["calibration_illuminant_2_kelvin"] = p.calib_illum_2_kelvin;
    j["as_shot_neutral"] = vec_to_json(p.as_shot_neutral);
    j["black_level"] = p.black_level;
    j["white_level"] = p.white_level;
    j["cfa_pattern"] = to_string(p.cfa);
    j["noise_alpha"] = vec_to_json(p.noise_alpha);
    j["noise_beta"] = vec_to_json(p.noise_beta);
    j["noise_calibrated"] = p.noise_calibrated;
    if (p.lens_gain_map) {
        const GainMap& g = *p.lens_gain_map;
        json m;
        m["rows"] = g.rows;
        m["cols"] = g.cols;
        m["r"] = g.gain[0];
        m["g"] = g.gain[1];
        m["b"] = g.gain[2];
        j["lens_gain_map"] = std::move(m);
    }
    return j.dump(2) + "\n";
}

CameraProfile profile_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("profile JSON: parse error");
    if (!j.is_object()) throw Error("profile JSON: root must be an object");

    const int schema = static_cast<int>(require_number(j, "", "schema"));
    if (schema != 1)
        throw Error("profile JSON: unsupported schema version " + std::to_string(schema));

    CameraProfile p;
    const json& name = require_field(j, "", "name");
    if (!name.is_string()) throw Error("profile JSON: \"name\" must be a string");
    p.name = name.get<std::string>();

    p.color_matrix_1 = mat_from(require_array(j, "", "color_matrix_1", 9));
    p.color_matrix_2 = mat_from(require_array(j, "", "color_matrix_2", 9));
    p.forward_matrix_1 = mat_from(require_array(j, "", "forward_matrix_1", 9));
    p.forward_matrix_2 = mat_from(require_array(j, "", "forward_matrix_2", 9));
    p.calib_illum_1_kelvin = require_number(j, "", "calibration_illuminant_1_kelvin");
    p.calib_illum_2_kelvin = require_number(j, "", "calibration_illuminant_2_kelvin");
    p.as_shot_neutral = vec_from(require_array(j, "", "as_shot_neutral", 3));
    p.black_level = require_number(j, "", "black_level");
    p.white_level = require_number(j, "", "white_level");
    const json& cfa = require_field(j, "", "cfa_pattern");
    if (!cfa.is_string()) throw Error("profile JSON: \"cfa_pattern\" must be a string");
    p.cfa = cfa_from_string(cfa.get<std::string>());
    p.noise_alpha = vec_from(require_array(j, "", "noise_alpha", 3));
    p.noise_beta = vec_from(require_array(j, "", "noise_beta", 3));
    const json& flag = require_field(j, "", "noise_calibrated");
    if (!flag.is_boolean()) throw Error("profile JSON: \"noise_calibrated\" must be a boolean");
    p.noise_calibrated = flag.get<bool>();

    if (j.contains("lens_gain_map") && !j["lens_gain_map"].is_null()) {
        const json& m = j["lens_gain_map"];
        if (!m.is_object()) throw Error("profile JSON: \"lens_gain_map\" must be an object");
        GainMap g;
        g.rows = static_cast<int>(require_number(m, "lens_gain_map.", "rows"));
        g.cols = static_cast<int>(require_number(m, "lens_gain_map.", "cols"));
        if (g.rows < 1 || g.cols < 1)
            throw Error("profile JSON: \"lens_gain_map\" dimensions must be positive");
        const std::size_t n = static_cast<std::size_t>(g.rows) * static_cast<std::size_t>(g.cols);
        g.gain[0] = require_array(m, "lens_gain_map.", "r", n);
        g.gain[1] = require_array(m, "lens_gain_map.", "g", n);
        g.gain[2] = require_array(m, "lens_gain_map.", "b", n);
        p.lens_gain_map = std::move(g);
    }

    validate_profile(p);
    return p;
}

CameraProfile load_profile(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = io::read_file(path);
    return profile_from_json(std::string(bytes.begin(), bytes.end()));
}

void save_profile(const std::filesystem::path& path, const CameraProfile& p) {
    io::atomic_write(path, profile_to_json(p));
}

} // namespace rawforge::dng
