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

#include "rawforge/photofinish.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rawforge/color.hpp"
#include "rawforge/error.hpp"
#include "rawforge/parallel.hpp"
#include "rawforge/rng.hpp"

namespace rawforge::photofinish {

PhotoFinishParams sample_params(std::uint64_t seed) {
    // Draw order is part of the format: r, b, beta, gamma, c. Each uniform
    // consumes one raw generator output, each normal consumes two.
    SplitMix64 rng(seed);
    PhotoFinishParams p;
    p.seed = seed;
    p.r = rng.uniform(0.7, 1.3);
    p.b = rng.uniform(0.7, 1.3);
    p.beta = std::clamp(rng.normal(0.6, 0.1), 0.1, 2.0);
    p.gamma = std::clamp(rng.normal(0.9, 0.1), 0.5, 1.5);
    p.c = rng.uniform(0.7, 1.3);
    return p;
}

namespace {

void check_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi))
        throw Error("invalid photo-finish params: " + std::string(name) + " = " +
                    std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
}

} // namespace

void validate_params(const PhotoFinishParams& p) {
    check_range(p.r, 0.7, 1.3, "r");
    check_range(p.b, 0.7, 1.3, "b");
    check_range(p.beta, 0.1, 2.0, "beta");
    check_range(p.gamma, 0.5, 1.5, "gamma");
    check_range(p.c, 0.7, 1.3, "c");
}

double tone_map(double e, double beta, double gamma) {
    const double eg = std::pow(e, gamma);
    return (1.0 + beta) * eg / (beta + eg);
}

double tone_map_inverse(double y, double beta, double gamma) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return std::pow(y * beta / (1.0 + beta - y), 1.0 / gamma);
}

double apply_contrast(double v, double c) {
    return std::clamp((v - 0.5) * c + 0.5, 0.0, 1.0);
}

ImagePlane finish_encoded(const ImagePlane& encoded, const PhotoFinishParams& params,
                          bool apply_tone_map) {
    require_state(encoded, ColorState::EncodedSrgb, "finish_encoded");
    if (encoded.channels != 3) throw Error("finish_encoded: expected a 3-channel image");
    validate_params(params);

    ImagePlane out = encoded;
    parallel_for(encoded.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < encoded.width; ++x)
                for (int c = 0; c < 3; ++c) {
                    double e = static_cast<double>(encoded.at(x, y, c));
                    if (apply_tone_map) {
                        // The tone curve acts on linear light between the two
                        // transfer-function hops.
                        const double lin = color::srgb_decode(e);
                        e = color::srgb_encode(tone_map(lin, params.beta, params.gamma));
                    }
                    out.at(x, y, c) = static_cast<float>(apply_contrast(e, params.c));
                }
        }
    });
    return out;
}

ImagePlane render_variant(const io::RawImage& raw, const CameraProfile& profile,
                          const PhotoFinishParams& params, const VariantOptions& opts) {
    validate_params(params);
    std::array<double, 3> gains = isp::wb_gains_from_neutral(profile.as_shot_neutral);
    gains[0] *= params.r;
    gains[2] *= params.b;

    isp::PipelineConfig cfg;
    cfg.terminal = isp::Stage::Gamma;
    cfg.demosaic = opts.demosaic;
    cfg.wb_gains = gains;
    cfg.cct = opts.cct;
    const ImagePlane encoded = isp::run_pipeline(raw, profile, cfg);
    return finish_encoded(encoded, params, opts.apply_tone_map);
}

} // namespace rawforge::photofinish
