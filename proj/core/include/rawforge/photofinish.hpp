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

#include "rawforge/dng.hpp"
#include "rawforge/image.hpp"
#include "rawforge/image_io.hpp"
#include "rawforge/isp.hpp"

namespace rawforge::photofinish {

/// One sampled photo-finishing recipe. Ranges are invariants, enforced when
/// params come back from a manifest:
///   r, b  in [0.7, 1.3]   white-balance gain perturbations (green fixed)
///   beta  in [0.1, 2.0]   tone curve shoulder
///   gamma in [0.5, 1.5]   tone curve exponent
///   c     in [0.7, 1.3]   contrast slope
struct PhotoFinishParams {
    std::uint64_t seed = 0;
    double r = 1.0;
    double b = 1.0;
    double beta = 0.6;
    double gamma = 0.9;
    double c = 1.0;
};

/// Draws a recipe from the documented distributions in fixed order
/// r, b, beta, gamma, c (uniform = 1 generator output, normal = 2):
///   r, b ~ U(0.7, 1.3); beta ~ N(0.6, 0.1^2) clipped to [0.1, 2.0];
///   gamma ~ N(0.9, 0.1^2) clipped to [0.5, 1.5]; c ~ U(0.7, 1.3).
PhotoFinishParams sample_params(std::uint64_t seed);

/// Throws Error("invalid photo-finish params ...") outside the ranges above.
void validate_params(const PhotoFinishParams& p);

/// Global tone curve on linear values in [0, 1]:
///
///   T(e) = (1 + beta) * e^gamma / (beta + e^gamma)
///
/// Fixed points T(0) = 0 and T(1) = 1 hold exactly; strictly increasing for
/// beta > 0, gamma > 0.
double tone_map(double e, double beta, double gamma);

/// Exact inverse of tone_map on [0, 1]: e = (y*beta / (1 + beta - y))^(1/gamma).
double tone_map_inverse(double y, double beta, double gamma);

/// Encoded-domain contrast (v - 0.5) * c + 0.5, clipped to [0, 1].
double apply_contrast(double v, double c);

struct VariantOptions {
    isp::DemosaicMethod demosaic = isp::DemosaicMethod::EdgeAware;
    std::optional<Cct> cct;          // forwarded to the pipeline
    bool apply_tone_map = true;      // test hook; r = b = c = 1 with the tone
                                     // map disabled reproduces the plain render
};

/// Full variant render: ISP to encoded sRGB with gains (base_r * r, 1,
/// base_b * b) where base comes from AsShotNeutral, then per channel
/// decode -> tone_map -> encode, then contrast in the encoded domain.
ImagePlane render_variant(const io::RawImage& raw, const CameraProfile& profile,
                          const PhotoFinishParams& params, const VariantOptions& opts = {});

/// Applies only the photo-finishing tail (tone map + contrast) to an
/// already-encoded plane. render_variant == finish(pipeline render).
ImagePlane finish_encoded(const ImagePlane& encoded, const PhotoFinishParams& params,
                          bool apply_tone_map = true);

} // namespace rawforge::photofinish
