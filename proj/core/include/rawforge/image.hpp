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

#include <cstddef>
#include <string>
#include <vector>

namespace rawforge {

/// Where a plane sits in the processing chain. Stage functions check the tag
/// of their input and throw, so running stages out of order is impossible.
enum class ColorState {
    MosaicNormalized, ///< single-channel CFA mosaic, linear, [0,1]
    MosaicWB,         ///< mosaic after white-balance gains, [0,1]
    CameraRgbRaw,     ///< 3-channel linear camera RGB before white balance, [0,1]
    CameraRgbWB,      ///< 3-channel linear camera RGB after white balance
    Xyz,              ///< CIE XYZ (D50 white), unclipped
    LinearSrgb,       ///< linear sRGB primaries, unclipped
    EncodedSrgb,      ///< sRGB transfer applied, [0,1]
};

const char* to_string(ColorState s);

/// 2x2 Bayer tile layouts, named row-major from the top-left sample.
enum class CfaPattern { RGGB, BGGR, GRBG, GBRG };

const char* to_string(CfaPattern p);

/// Parses "RGGB" etc. (case-insensitive). Throws Error on anything else.
CfaPattern cfa_from_string(const std::string& s);

/// Channel of the CFA site at (x, y): 0 = R, 1 = G, 2 = B.
int cfa_color_at(CfaPattern p, int x, int y);

/// Single-precision planar image, row-major, channels interleaved.
/// Invariants: data.size() == width * height * channels, all values finite;
/// mosaic and encoded states additionally keep values in [0, 1].
struct ImagePlane {
    int width = 0;
    int height = 0;
    int channels = 1;
    ColorState state = ColorState::MosaicNormalized;
    std::vector<float> data;

    static ImagePlane make(int w, int h, int ch, ColorState s, float fill = 0.0f);

    float at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(x)) * static_cast<std::size_t>(channels) +
                    static_cast<std::size_t>(c)];
    }
    float& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                     static_cast<std::size_t>(x)) * static_cast<std::size_t>(channels) +
                    static_cast<std::size_t>(c)];
    }

    std::size_t sample_count() const { return data.size(); }
};

/// Throws Error unless the plane has the expected state; `op` names the
/// offended stage in the message.
void require_state(const ImagePlane& img, ColorState expected, const char* op);

/// reflect-101 boundary index: coordinate reflected about the edge sample
/// (..., 2, 1, 0, 1, 2, ... for n >= 2). Demosaic border handling.
int reflect101(int i, int n);

} // namespace rawforge
