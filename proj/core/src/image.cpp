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

#include "rawforge/image.hpp"

#include <algorithm>
#include <cctype>

#include "rawforge/error.hpp"

namespace rawforge {

const char* to_string(ColorState s) {
    switch (s) {
    case ColorState::MosaicNormalized: return "mosaic-normalized";
    case ColorState::MosaicWB: return "mosaic-wb";
    case ColorState::CameraRgbRaw: return "camera-rgb-raw";
    case ColorState::CameraRgbWB: return "camera-rgb-wb";
    case ColorState::Xyz: return "xyz";
    case ColorState::LinearSrgb: return "linear-srgb";
    case ColorState::EncodedSrgb: return "encoded-srgb";
    }
    return "?";
}

const char* to_string(CfaPattern p) {
    switch (p) {
    case CfaPattern::RGGB: return "RGGB";
    case CfaPattern::BGGR: return "BGGR";
    case CfaPattern::GRBG: return "GRBG";
    case CfaPattern::GBRG: return "GBRG";
    }
    return "?";
}

CfaPattern cfa_from_string(const std::string& s) {
    std::string u(s);
    std::transform(u.begin(), u.end(), u.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (u == "RGGB") return CfaPattern::RGGB;
    if (u == "BGGR") return CfaPattern::BGGR;
    if (u == "GRBG") return CfaPattern::GRBG;
    if (u == "GBRG") return CfaPattern::GBRG;
    throw Error("unknown CFA pattern \"" + s + "\" (expected RGGB, BGGR, GRBG or GBRG)");
}

int cfa_color_at(CfaPattern p, int x, int y) {
    // 2x2 tiles row-major from the top-left sample; 0 = R, 1 = G, 2 = B.
    static constexpr int tiles[4][4] = {
        {0, 1, 1, 2}, // RGGB
        {2, 1, 1, 0}, // BGGR
        {1, 0, 2, 1}, // GRBG
        {1, 2, 0, 1}, // GBRG
    };
    return tiles[static_cast<int>(p)][(y & 1) * 2 + (x & 1)];
}

ImagePlane ImagePlane::make(int w, int h, int ch, ColorState s, float fill) {
    if (w <= 0 || h <= 0 || (ch != 1 && ch != 3))
        throw Error("bad image plane shape");
    ImagePlane img;
    img.width = w;
    img.height = h;
    img.channels = ch;
    img.state = s;
    img.data.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) *
                        static_cast<std::size_t>(ch),
                    fill);
    return img;
}

void require_state(const ImagePlane& img, ColorState expected, const char* op) {
    if (img.state != expected)
        throw Error(std::string(op) + ": expected " + to_string(expected) + " input, got " +
                    to_string(img.state));
}

int reflect101(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    int j = i % period;
    if (j < 0) j += period;
    return j < n ? j : period - j;
}

} // namespace rawforge
