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

#include <cstdint>
#include <optional>

#include "rawforge/color.hpp"
#include "rawforge/dng.hpp"
#include "rawforge/image.hpp"

namespace rawforge::rawrender {

/// Scene illuminant expressed as green-normalized linear camera-RGB gains.
struct IlluminantSpec {
    Cct cct = 0.0;
    Vec3 l_rgb{1.0, 1.0, 1.0};
};

/// Heteroscedastic sensor noise: per-channel variance
///   sigma_c^2(v) = strength * (alpha_c * v + beta_c)
/// added as zero-mean Gaussian, then clipped to [0, 1]. strength = 0 is the
/// identity.
struct NoiseSpec {
    Vec3 alpha{0.0, 0.0, 0.0};
    Vec3 beta{0.0, 0.0, 0.0};
    double strength = 1.0;
    std::uint64_t seed = 0;
};

/// Mired-interpolated calibration matrices:
///   M(t) = g * M1 + (1 - g) * M2,  g = cct_weight(t, t1, t2)
/// Verbatim orientation: t = t1 selects M2 and t = t2 selects M1.
/// swap_pairing = true exchanges the roles of M1/M2 for callers that want
/// matrix 1 paired with t1. Throws on identical calibration temperatures or
/// a non-invertible result where inversion is required.
Mat3 interpolated_color_matrix(const CameraProfile& p, Cct t, bool swap_pairing = false);
Mat3 interpolated_forward_matrix(const CameraProfile& p, Cct t, bool swap_pairing = false);

/// Illuminant gains from a temperature: l_rgb = C(t) * cct_to_xyz(t),
/// green-normalized. Throws Error("degenerate illuminant") when the green
/// response is not strictly positive.
IlluminantSpec build_illuminant(const CameraProfile& p, Cct t, bool swap_pairing = false);

/// XYZ -> white-balanced camera RGB through the inverse forward matrix,
/// clipped to [0, 1].
ImagePlane xyz_to_camera_wb(const ImagePlane& xyz, const Mat3& forward);

/// Channelwise multiply by the illuminant gains (undoes white balance),
/// clipped to [0, 1]. CameraRgbWB -> CameraRgbRaw.
ImagePlane apply_illuminant(const ImagePlane& img, const IlluminantSpec& illum);

/// Adds the heteroscedastic noise. 3-channel input uses the channel index;
/// 1-channel input uses the CFA site color when `cfa` is given, channel 0
/// coefficients otherwise. Per-pixel draws are counter-based on
/// (seed, x, y, c), so results never depend on traversal order.
ImagePlane synthesize_noise(const ImagePlane& img, const NoiseSpec& spec,
                            std::optional<CfaPattern> cfa = std::nullopt);

/// Keeps each site's CFA channel. Requires even dimensions. Exact inverse
/// of demosaic on CFA sites: mosaic(demosaic(m)) == m.
ImagePlane mosaic(const ImagePlane& img, CfaPattern cfa);

struct RenderRawOptions {
    std::optional<NoiseSpec> noise;   // applied in the 3-channel raw domain
    std::optional<CfaPattern> cfa;    // re-mosaic after noise when set
    bool swap_pairing = false;
};

/// XYZ -> synthetic raw: inverse forward matrix (clip), illuminant gains
/// (clip), optional noise, optional mosaic.
ImagePlane render_raw(const ImagePlane& xyz, const CameraProfile& p, Cct t,
                      const RenderRawOptions& opts = {});

} // namespace rawforge::rawrender
