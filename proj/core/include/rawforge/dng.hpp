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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rawforge/image.hpp"
#include "rawforge/mat3.hpp"

namespace rawforge {

/// Per-channel lens shading gain grid, bilinearly upsampled to the image.
/// Row-major rows x cols per channel; every gain > 0.
struct GainMap {
    int rows = 0;
    int cols = 0;
    std::array<std::vector<double>, 3> gain; // indexed [channel][row * cols + col]
};

/// Everything the renderer needs to know about one camera, extracted from
/// DNG metadata or a profile JSON.
///
/// Matrix conventions (column-vector): color_matrix_* map XYZ to un-white-
/// balanced camera RGB at the calibration illuminant; forward_matrix_* map
/// white-balanced camera RGB to XYZ with a D50 white.
struct CameraProfile {
    std::string name = "unknown";
    Mat3 color_matrix_1, color_matrix_2;
    Mat3 forward_matrix_1, forward_matrix_2;
    double calib_illum_1_kelvin = 0.0;
    double calib_illum_2_kelvin = 0.0;
    Vec3 as_shot_neutral{1.0, 1.0, 1.0}; // green-normalized at parse time
    double black_level = 0.0;
    double white_level = 1.0;
    CfaPattern cfa = CfaPattern::RGGB;
    Vec3 noise_alpha{0.0, 0.0, 0.0}; // signal-dependent variance slope per channel
    Vec3 noise_beta{0.0, 0.0, 0.0};  // variance floor per channel
    bool noise_calibrated = false;   // DNGs carry no calibration; JSON may
    std::optional<GainMap> lens_gain_map;
};

namespace dng {

/// EXIF LightSource code -> CCT in kelvin. Covers the daylight, tungsten,
/// flash, weather and fluorescent codes plus the standard illuminants
/// (A -> 2850, D65 -> 6504, D50 -> 5003, ...). Unknown or "other" codes
/// throw Error("unsupported illuminant code ...") instead of guessing.
double illuminant_code_to_cct(int exif_code);

/// Parses a DNG/TIFF byte buffer: both byte orders, IFD0 plus SubIFDs, the
/// calibration tags (ColorMatrix1/2, ForwardMatrix1/2, CalibrationIlluminant
/// 1/2, AsShotNeutral, BlackLevel, WhiteLevel, CFAPattern,
/// CFARepeatPatternDim). First tag occurrence wins, searching IFD0 before
/// SubIFDs. Every read is bounds-checked; truncated or corrupt input throws
/// Error, never reads out of range.
CameraProfile parse_dng(const std::uint8_t* bytes, std::size_t size);
CameraProfile parse_dng(const std::vector<std::uint8_t>& bytes);
CameraProfile parse_dng_file(const std::filesystem::path& path);

/// Checks profile consistency: white_level > black_level, both color
/// matrices invertible, as_shot_neutral strictly positive, calibration
/// temperatures inside the accepted CCT window, gain map (if any) strictly
/// positive. Throws Error("invalid calibration: ...").
void validate_profile(const CameraProfile& p);

/// Versioned JSON round-trip (schema 1). Numbers serialize at full double
/// precision (shortest round-trip form), so load(save(p)) == p exactly.
/// Schema violations throw Error naming the offending JSON path.
std::string profile_to_json(const CameraProfile& p);
CameraProfile profile_from_json(const std::string& text);
CameraProfile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const CameraProfile& p);

} // namespace dng
} // namespace rawforge
