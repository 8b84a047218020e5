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

#include "rawforge/rawrender.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rawforge/error.hpp"
#include "rawforge/parallel.hpp"
#include "rawforge/rng.hpp"

namespace rawforge::rawrender {

Mat3 interpolated_color_matrix(const CameraProfile& p, Cct t, bool swap_pairing) {
    const double g = color::cct_weight(t, p.calib_illum_1_kelvin, p.calib_illum_2_kelvin);
    return swap_pairing ? interpolate_mat3(g, p.color_matrix_2, p.color_matrix_1)
                        : interpolate_mat3(g, p.color_matrix_1, p.color_matrix_2);
}

Mat3 interpolated_forward_matrix(const CameraProfile& p, Cct t, bool swap_pairing) {
    const double g = color::cct_weight(t, p.calib_illum_1_kelvin, p.calib_illum_2_kelvin);
    return swap_pairing ? interpolate_mat3(g, p.forward_matrix_2, p.forward_matrix_1)
                        : interpolate_mat3(g, p.forward_matrix_1, p.forward_matrix_2);
}

IlluminantSpec build_illuminant(const CameraProfile& p, Cct t, bool swap_pairing) {
    const Vec3 white_xyz = color::cct_to_xyz(t);
    const Mat3 cm = interpolated_color_matrix(p, t, swap_pairing);
    const Vec3 l = cm * white_xyz;
    if (!(l.y > 0.0)) throw Error("degenerate illuminant: non-positive green response");
    return IlluminantSpec{t, Vec3{l.x / l.y, 1.0, l.z / l.y}};
}

ImagePlane xyz_to_camera_wb(const ImagePlane& xyz, const Mat3& forward) {
    require_state(xyz, ColorState::Xyz, "xyz_to_camera_wb");
    if (xyz.channels != 3) throw Error("xyz_to_camera_wb: expected a 3-channel image");
    const Mat3 inv = mat3_invert(forward);

    ImagePlane out = ImagePlane::make(xyz.width, xyz.height, 3, ColorState::CameraRgbWB);
    parallel_for(xyz.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < xyz.width; ++x) {
                const Vec3 v{static_cast<double>(xyz.at(x, y, 0)),
                             static_cast<double>(xyz.at(x, y, 1)),
                             static_cast<double>(xyz.at(x, y, 2))};
                const Vec3 rgb = inv * v;
                out.at(x, y, 0) = static_cast<float>(std::clamp(rgb.x, 0.0, 1.0));
                out.at(x, y, 1) = static_cast<float>(std::clamp(rgb.y, 0.0, 1.0));
                out.at(x, y, 2) = static_cast<float>(std::clamp(rgb.z, 0.0, 1.0));
            }
        }
    });
    return out;
}

ImagePlane apply_illuminant(const ImagePlane& img, const IlluminantSpec& illum) {
    require_state(img, ColorState::CameraRgbWB, "apply_illuminant");
    if (img.channels != 3) throw Error("apply_illuminant: expected a 3-channel image");

    ImagePlane out = ImagePlane::make(img.width, img.height, 3, ColorState::CameraRgbRaw);
    const double l[3] = {illum.l_rgb.x, illum.l_rgb.y, illum.l_rgb.z};
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x)
                for (int c = 0; c < 3; ++c) {
                    const double v = static_cast<double>(img.at(x, y, c)) * l[c];
                    out.at(x, y, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
                }
        }
    });
    return out;
}

ImagePlane synthesize_noise(const ImagePlane& img, const NoiseSpec& spec,
                            std::optional<CfaPattern> cfa) {
    if (img.state == ColorState::Xyz || img.state == ColorState::LinearSrgb ||
        img.state == ColorState::EncodedSrgb)
        throw Error("synthesize_noise: noise applies to linear raw-domain images, got " +
                    std::string(to_string(img.state)));
    if (img.channels != 1 && img.channels != 3)
        throw Error("synthesize_noise: expected a 1- or 3-channel image");
    const double alpha[3] = {spec.alpha.x, spec.alpha.y, spec.alpha.z};
    const double beta[3] = {spec.beta.x, spec.beta.y, spec.beta.z};
    for (int c = 0; c < 3; ++c)
        if (alpha[c] < 0.0 || beta[c] < 0.0)
            throw Error("noise coefficients must be non-negative");
    if (spec.strength < 0.0) throw Error("noise strength must be non-negative");
    if (spec.strength == 0.0) return img;

    ImagePlane out = img;
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x)
                for (int c = 0; c < img.channels; ++c) {
                    const int color =
                        img.channels == 3 ? c : (cfa ? cfa_color_at(*cfa, x, y) : 0);
                    const double v = static_cast<double>(img.at(x, y, c));
                    const double var = spec.strength * (alpha[color] * v + beta[color]);
                    // One decorrelated stream per sample keeps the output
                    // independent of thread count and traversal order.
                    SplitMix64 rng(pixel_stream(spec.seed, x, y, color));
                    const double n = var > 0.0 ? std::sqrt(var) * rng.normal(0.0, 1.0) : 0.0;
                    out.at(x, y, c) = static_cast<float>(std::clamp(v + n, 0.0, 1.0));
                }
        }
    });
    return out;
}

ImagePlane mosaic(const ImagePlane& img, CfaPattern cfa) {
    if (img.channels != 3) throw Error("mosaic: expected a 3-channel image");
    ColorState out_state;
    switch (img.state) {
    case ColorState::CameraRgbRaw: out_state = ColorState::MosaicNormalized; break;
    case ColorState::CameraRgbWB: out_state = ColorState::MosaicWB; break;
    default:
        throw Error(std::string("mosaic: expected camera-RGB input, got ") +
                    to_string(img.state));
    }
    if (img.width < 4 || img.height < 4 || (img.width % 2) != 0 || (img.height % 2) != 0)
        throw Error("mosaic: dimensions must be even and at least 4x4");

    ImagePlane out = ImagePlane::make(img.width, img.height, 1, out_state);
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x)
                out.at(x, y) = img.at(x, y, cfa_color_at(cfa, x, y));
        }
    });
    return out;
}

ImagePlane render_raw(const ImagePlane& xyz, const CameraProfile& p, Cct t,
                      const RenderRawOptions& opts) {
    require_state(xyz, ColorState::Xyz, "render_raw");
    const Mat3 forward = interpolated_forward_matrix(p, t, opts.swap_pairing);
    ImagePlane img = xyz_to_camera_wb(xyz, forward);
    img = apply_illuminant(img, build_illuminant(p, t, opts.swap_pairing));
    if (opts.noise) img = synthesize_noise(img, *opts.noise, opts.cfa);
    if (opts.cfa) img = mosaic(img, *opts.cfa);
    return img;
}

} // namespace rawforge::rawrender
