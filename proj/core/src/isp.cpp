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

#include "rawforge/isp.hpp"

#include <algorithm>
#include <cmath>

#include "rawforge/error.hpp"
#include "rawforge/parallel.hpp"

namespace rawforge::isp {

const char* to_string(Stage s) {
    switch (s) {
    case Stage::Normalize: return "normalize";
    case Stage::LensShading: return "lens-shading";
    case Stage::WhiteBalance: return "white-balance";
    case Stage::Demosaic: return "demosaic";
    case Stage::Xyz: return "xyz";
    case Stage::Srgb: return "srgb";
    case Stage::Gamma: return "gamma";
    }
    return "?";
}

Stage stage_from_string(const std::string& s) {
    if (s == "normalize") return Stage::Normalize;
    if (s == "lens-shading") return Stage::LensShading;
    if (s == "white-balance") return Stage::WhiteBalance;
    if (s == "demosaic") return Stage::Demosaic;
    if (s == "xyz") return Stage::Xyz;
    if (s == "srgb") return Stage::Srgb;
    if (s == "gamma") return Stage::Gamma;
    throw Error("unknown pipeline stage \"" + s + "\"");
}

std::array<double, 3> wb_gains_from_neutral(const Vec3& neutral) {
    if (!(neutral.x > 0.0 && neutral.y > 0.0 && neutral.z > 0.0))
        throw Error("invalid calibration: AsShotNeutral must be strictly positive");
    return {neutral.y / neutral.x, 1.0, neutral.y / neutral.z};
}

namespace {

void require_mosaic_shape(int width, int height, const char* op) {
    if (width < 4 || height < 4 || (width % 2) != 0 || (height % 2) != 0)
        throw Error(std::string(op) + ": mosaic dimensions must be even and at least 4x4");
}

} // namespace

ImagePlane normalize_raw(const io::RawImage& raw, double black, double white) {
    if (!(white > black))
        throw Error("invalid calibration: WhiteLevel must exceed BlackLevel");
    require_mosaic_shape(raw.width, raw.height, "normalize_raw");
    if (raw.data.size() != static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.height))
        throw Error("normalize_raw: sample count mismatch");

    ImagePlane out = ImagePlane::make(raw.width, raw.height, 1, ColorState::MosaicNormalized);
    const double inv = 1.0 / (white - black);
    parallel_for(raw.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t y = y0; y < y1; ++y) {
            const std::size_t row = static_cast<std::size_t>(y) * static_cast<std::size_t>(raw.width);
            for (int x = 0; x < raw.width; ++x) {
                const double v = (static_cast<double>(raw.data[row + static_cast<std::size_t>(x)]) - black) * inv;
                out.data[row + static_cast<std::size_t>(x)] =
                    static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
    });
    return out;
}

ImagePlane lens_shading_correct(const ImagePlane& img, const std::optional<GainMap>& map,
                                CfaPattern cfa) {
    require_state(img, ColorState::MosaicNormalized, "lens_shading_correct");
    if (img.channels != 1) throw Error("lens_shading_correct: expected a single-channel mosaic");
    if (!map) return img;

    const GainMap& g = *map;
    if (g.rows < 1 || g.cols < 1) throw Error("invalid calibration: empty lens gain map");
    for (const auto& plane : g.gain) {
        if (plane.size() != static_cast<std::size_t>(g.rows) * static_cast<std::size_t>(g.cols))
            throw Error("invalid calibration: lens gain map shape mismatch");
        for (double v : plane)
            if (!(v > 0.0)) throw Error("invalid calibration: lens gains must be positive");
    }

    ImagePlane out = img;
    const int w = img.width, h = img.height;
    parallel_for(h, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            // align-corners grid sampling
            const double gy = h > 1 ? static_cast<double>(y) * (g.rows - 1) / (h - 1) : 0.0;
            const int r0 = std::min(static_cast<int>(gy), g.rows - 1);
            const int r1 = std::min(r0 + 1, g.rows - 1);
            const double fy = gy - r0;
            for (int x = 0; x < w; ++x) {
                const double gx = w > 1 ? static_cast<double>(x) * (g.cols - 1) / (w - 1) : 0.0;
                const int c0 = std::min(static_cast<int>(gx), g.cols - 1);
                const int c1 = std::min(c0 + 1, g.cols - 1);
                const double fx = gx - c0;
                const auto& plane = g.gain[static_cast<std::size_t>(cfa_color_at(cfa, x, y))];
                const double top = plane[static_cast<std::size_t>(r0) * g.cols + c0] * (1.0 - fx) +
                                   plane[static_cast<std::size_t>(r0) * g.cols + c1] * fx;
                const double bot = plane[static_cast<std::size_t>(r1) * g.cols + c0] * (1.0 - fx) +
                                   plane[static_cast<std::size_t>(r1) * g.cols + c1] * fx;
                const double gain = top * (1.0 - fy) + bot * fy;
                const double v = static_cast<double>(img.at(x, y)) * gain;
                out.at(x, y) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
    });
    return out;
}

ImagePlane white_balance_mosaic(const ImagePlane& img, const std::array<double, 3>& gains,
                                CfaPattern cfa) {
    require_state(img, ColorState::MosaicNormalized, "white_balance_mosaic");
    if (img.channels != 1) throw Error("white_balance_mosaic: expected a single-channel mosaic");
    if (!(gains[0] > 0.0 && gains[1] > 0.0 && gains[2] > 0.0))
        throw Error("white-balance gains must be strictly positive");

    ImagePlane out = img;
    out.state = ColorState::MosaicWB;
    const int w = img.width;
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < w; ++x) {
                const double v = static_cast<double>(img.at(x, y)) *
                                 gains[static_cast<std::size_t>(cfa_color_at(cfa, x, y))];
                out.at(x, y) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
    });
    return out;
}

ImagePlane camera_to_xyz(const ImagePlane& img, const Mat3& forward) {
    require_state(img, ColorState::CameraRgbWB, "camera_to_xyz");
    if (img.channels != 3) throw Error("camera_to_xyz: expected a 3-channel image");

    ImagePlane out = ImagePlane::make(img.width, img.height, 3, ColorState::Xyz);
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x) {
                const Vec3 rgb{static_cast<double>(img.at(x, y, 0)),
                               static_cast<double>(img.at(x, y, 1)),
                               static_cast<double>(img.at(x, y, 2))};
                const Vec3 xyz = forward * rgb;
                out.at(x, y, 0) = static_cast<float>(xyz.x);
                out.at(x, y, 1) = static_cast<float>(xyz.y);
                out.at(x, y, 2) = static_cast<float>(xyz.z);
            }
        }
    });
    return out;
}

namespace {

ImagePlane xyz_to_linear_stage(const ImagePlane& img) {
    require_state(img, ColorState::Xyz, "srgb stage");
    ImagePlane out = ImagePlane::make(img.width, img.height, 3, ColorState::LinearSrgb);
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x) {
                const Vec3 xyz{static_cast<double>(img.at(x, y, 0)),
                               static_cast<double>(img.at(x, y, 1)),
                               static_cast<double>(img.at(x, y, 2))};
                const Vec3 rgb = color::xyz_d50_to_linear_srgb(xyz);
                out.at(x, y, 0) = static_cast<float>(rgb.x);
                out.at(x, y, 1) = static_cast<float>(rgb.y);
                out.at(x, y, 2) = static_cast<float>(rgb.z);
            }
        }
    });
    return out;
}

ImagePlane encode_stage(const ImagePlane& img) {
    require_state(img, ColorState::LinearSrgb, "gamma stage");
    ImagePlane out = ImagePlane::make(img.width, img.height, 3, ColorState::EncodedSrgb);
    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x)
                for (int c = 0; c < 3; ++c) {
                    const double lin =
                        std::clamp(static_cast<double>(img.at(x, y, c)), 0.0, 1.0);
                    out.at(x, y, c) = static_cast<float>(color::srgb_encode(lin));
                }
        }
    });
    return out;
}

} // namespace

ImagePlane render_srgb(const ImagePlane& xyz) { return encode_stage(xyz_to_linear_stage(xyz)); }

ImagePlane run_pipeline(const io::RawImage& raw, const CameraProfile& profile,
                        const PipelineConfig& cfg) {
    ImagePlane img = normalize_raw(raw, profile.black_level, profile.white_level);
    if (cfg.terminal == Stage::Normalize) return img;

    img = lens_shading_correct(img, profile.lens_gain_map, profile.cfa);
    if (cfg.terminal == Stage::LensShading) return img;

    const std::array<double, 3> gains =
        cfg.wb_gains ? *cfg.wb_gains : wb_gains_from_neutral(profile.as_shot_neutral);
    img = white_balance_mosaic(img, gains, profile.cfa);
    if (cfg.terminal == Stage::WhiteBalance) return img;

    img = cfg.demosaic == DemosaicMethod::Bilinear ? demosaic_bilinear(img, profile.cfa)
                                                   : demosaic_edge_aware(img, profile.cfa);
    if (cfg.terminal == Stage::Demosaic) return img;

    // Without a caller-supplied CCT the first forward matrix is used;
    // solving the shot CCT from AsShotNeutral is out of scope.
    Mat3 forward = profile.forward_matrix_1;
    if (cfg.cct) {
        const double g = color::cct_weight(*cfg.cct, profile.calib_illum_1_kelvin,
                                           profile.calib_illum_2_kelvin);
        forward = interpolate_mat3(g, profile.forward_matrix_1, profile.forward_matrix_2);
    }
    img = camera_to_xyz(img, forward);
    if (cfg.terminal == Stage::Xyz) return img;

    img = xyz_to_linear_stage(img);
    if (cfg.terminal == Stage::Srgb) return img;

    return encode_stage(img);
}

} // namespace rawforge::isp
