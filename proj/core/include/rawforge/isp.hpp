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
#include <optional>

#include "rawforge/color.hpp"
#include "rawforge/dng.hpp"
#include "rawforge/image.hpp"
#include "rawforge/image_io.hpp"

namespace rawforge::isp {

/// Stages in chain order. run_pipeline executes from the front up to and
/// including `terminal`.
enum class Stage { Normalize, LensShading, WhiteBalance, Demosaic, Xyz, Srgb, Gamma };

const char* to_string(Stage s);
Stage stage_from_string(const std::string& s);

enum class DemosaicMethod { Bilinear, EdgeAware };

struct PipelineConfig {
    Stage terminal = Stage::Gamma;
    DemosaicMethod demosaic = DemosaicMethod::EdgeAware;
    /// White-balance gains (R, G, B); unset derives them from the profile's
    /// AsShotNeutral. Must be strictly positive when set; green is fixed at
    /// 1.0 in the derived case.
    std::optional<std::array<double, 3>> wb_gains;
    /// When set, the forward matrix is mired-interpolated at this CCT;
    /// unset uses forward_matrix_1.
    std::optional<Cct> cct;
};

/// Gains (neutral_g / neutral_r, 1, neutral_g / neutral_b) that map the
/// profile's neutral to equal channels.
std::array<double, 3> wb_gains_from_neutral(const Vec3& neutral);

/// (raw - black) / (white - black), clipped to [0, 1].
/// Requires white > black; even dimensions >= 4 (Bayer tiles).
ImagePlane normalize_raw(const io::RawImage& raw, double black, double white);

/// Per-site multiply by the bilinearly upsampled gain of the site's CFA
/// channel (align-corners sampling), clipped to [0, 1]. Absent map is the
/// identity. Gains must be strictly positive.
ImagePlane lens_shading_correct(const ImagePlane& img, const std::optional<GainMap>& map,
                                CfaPattern cfa);

/// Per-site channel gain on the mosaic, clipped to [0, 1].
ImagePlane white_balance_mosaic(const ImagePlane& img, const std::array<double, 3>& gains,
                                CfaPattern cfa);

// Demosaic contracts shared by both methods: output is 3-channel with the
// same width/height, CFA samples pass through exactly, borders use
// reflect-101. Constant mosaics demosaic to constant planes and a linear
// ramp is reproduced away from the borders.
ImagePlane demosaic_bilinear(const ImagePlane& img, CfaPattern cfa);

/// Gradient-selected green (horizontal vs vertical absolute difference,
/// ties average both directions like bilinear), then chroma interpolated
/// bilinearly on color-difference planes against the completed green.
/// Resolves a vertical or horizontal step edge in green without zipper.
ImagePlane demosaic_edge_aware(const ImagePlane& img, CfaPattern cfa);

/// Per-pixel forward matrix multiply into XYZ. No clipping.
ImagePlane camera_to_xyz(const ImagePlane& img, const Mat3& forward);

/// XYZ -> linear sRGB (D50 matrix), clip to [0, 1], sRGB encode.
ImagePlane render_srgb(const ImagePlane& xyz);

/// Executes normalize -> lens shading -> white balance -> demosaic -> xyz
/// -> srgb -> gamma, stopping after cfg.terminal. Stage state tags make
/// out-of-order execution impossible.
ImagePlane run_pipeline(const io::RawImage& raw, const CameraProfile& profile,
                        const PipelineConfig& cfg);

} // namespace rawforge::isp
