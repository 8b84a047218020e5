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

#include <cmath>
#include <cstddef>
#include <vector>

#include "rawforge/error.hpp"
#include "rawforge/isp.hpp"
#include "rawforge/parallel.hpp"

namespace rawforge::isp {

namespace {

// Border reads mirror without repeating the edge sample (reflect-101). The
// mirror has period 2(n-1); with even mosaic dimensions it preserves index
// parity, so a reflected read always lands on a same-color site.
struct MosaicView {
    const ImagePlane& m;

    double operator()(int x, int y) const {
        const int xr = reflect101(x, m.width);
        const int yr = reflect101(y, m.height);
        return static_cast<double>(
            m.data[static_cast<std::size_t>(yr) * static_cast<std::size_t>(m.width) +
                   static_cast<std::size_t>(xr)]);
    }
};

ColorState demosaic_output_state(const ImagePlane& img, const char* op) {
    if (img.channels != 1) throw Error(std::string(op) + ": expected a single-channel mosaic");
    if (img.width < 4 || img.height < 4 || (img.width % 2) != 0 || (img.height % 2) != 0)
        throw Error(std::string(op) + ": mosaic dimensions must be even and at least 4x4");
    switch (img.state) {
    case ColorState::MosaicNormalized: return ColorState::CameraRgbRaw;
    case ColorState::MosaicWB: return ColorState::CameraRgbWB;
    default:
        throw Error(std::string(op) + ": expected mosaic input, got " + to_string(img.state));
    }
}

// R/B interpolation shared by both methods at sites not owning that color.
// At a green site chroma sits in either the row or the column; at the
// opposite-color site it sits on the diagonals.
double bilinear_chroma(const MosaicView& m, CfaPattern cfa, int x, int y, int want,
                       int site_color) {
    if (site_color == 1) {
        if (cfa_color_at(cfa, x + 1, y) == want) return (m(x - 1, y) + m(x + 1, y)) * 0.5;
        return (m(x, y - 1) + m(x, y + 1)) * 0.5;
    }
    return (m(x - 1, y - 1) + m(x + 1, y - 1) + m(x - 1, y + 1) + m(x + 1, y + 1)) * 0.25;
}

} // namespace

ImagePlane demosaic_bilinear(const ImagePlane& img, CfaPattern cfa) {
    const ColorState out_state = demosaic_output_state(img, "demosaic_bilinear");
    ImagePlane out = ImagePlane::make(img.width, img.height, 3, out_state);
    const MosaicView m{img};

    parallel_for(img.height, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < img.width; ++x) {
                const int color = cfa_color_at(cfa, x, y);
                const double v = m(x, y);
                double r, g, b;
                if (color == 1) {
                    g = v;
                    r = bilinear_chroma(m, cfa, x, y, 0, 1);
                    b = bilinear_chroma(m, cfa, x, y, 2, 1);
                } else {
                    g = (m(x - 1, y) + m(x + 1, y) + m(x, y - 1) + m(x, y + 1)) * 0.25;
                    if (color == 0) {
                        r = v;
                        b = bilinear_chroma(m, cfa, x, y, 2, 0);
                    } else {
                        b = v;
                        r = bilinear_chroma(m, cfa, x, y, 0, 2);
                    }
                }
                out.at(x, y, 0) = static_cast<float>(r);
                out.at(x, y, 1) = static_cast<float>(g);
                out.at(x, y, 2) = static_cast<float>(b);
            }
        }
    });
    return out;
}

ImagePlane demosaic_edge_aware(const ImagePlane& img, CfaPattern cfa) {
    const ColorState out_state = demosaic_output_state(img, "demosaic_edge_aware");
    const int w = img.width, h = img.height;
    const MosaicView m{img};

    // Pass 1: full green plane. At non-green sites the interpolation follows
    // the axis with the smaller gradient; an exact tie falls back to the
    // four-neighbor average, which matches the bilinear kernel bit for bit.
    std::vector<double> green(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    parallel_for(h, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < w; ++x) {
                const std::size_t idx =
                    static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                    static_cast<std::size_t>(x);
                if (cfa_color_at(cfa, x, y) == 1) {
                    green[idx] = m(x, y);
                    continue;
                }
                const double l = m(x - 1, y), r = m(x + 1, y);
                const double u = m(x, y - 1), d = m(x, y + 1);
                const double dh = std::abs(l - r), dv = std::abs(u - d);
                if (dh < dv)
                    green[idx] = (l + r) * 0.5;
                else if (dv < dh)
                    green[idx] = (u + d) * 0.5;
                else
                    green[idx] = (l + r + u + d) * 0.25;
            }
        }
    });

    // Pass 2: chroma as color-minus-green differences, valid only at sites
    // owning the color. Reflected reads stay on same-color sites.
    std::vector<double> diff(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 2);
    parallel_for(h, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < w; ++x) {
                const int color = cfa_color_at(cfa, x, y);
                if (color == 1) continue;
                const std::size_t idx =
                    (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(x)) *
                        2 +
                    (color == 0 ? 0 : 1);
                diff[idx] = m(x, y) - green[static_cast<std::size_t>(y) *
                                                static_cast<std::size_t>(w) +
                                            static_cast<std::size_t>(x)];
            }
        }
    });

    const auto diff_at = [&](int x, int y, int plane) {
        const int xr = reflect101(x, w);
        const int yr = reflect101(y, h);
        return diff[(static_cast<std::size_t>(yr) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(xr)) *
                        2 +
                    static_cast<std::size_t>(plane)];
    };

    ImagePlane out = ImagePlane::make(w, h, 3, out_state);
    parallel_for(h, [&](std::int64_t y0, std::int64_t y1) {
        for (std::int64_t yi = y0; yi < y1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int x = 0; x < w; ++x) {
                const int color = cfa_color_at(cfa, x, y);
                const double g = green[static_cast<std::size_t>(y) *
                                           static_cast<std::size_t>(w) +
                                       static_cast<std::size_t>(x)];
                double r, b;
                if (color == 0) {
                    r = m(x, y);
                    b = g + (diff_at(x - 1, y - 1, 1) + diff_at(x + 1, y - 1, 1) +
                             diff_at(x - 1, y + 1, 1) + diff_at(x + 1, y + 1, 1)) *
                                0.25;
                } else if (color == 2) {
                    b = m(x, y);
                    r = g + (diff_at(x - 1, y - 1, 0) + diff_at(x + 1, y - 1, 0) +
                             diff_at(x - 1, y + 1, 0) + diff_at(x + 1, y + 1, 0)) *
                                0.25;
                } else {
                    const bool r_in_row = cfa_color_at(cfa, x + 1, y) == 0;
                    if (r_in_row) {
                        r = g + (diff_at(x - 1, y, 0) + diff_at(x + 1, y, 0)) * 0.5;
                        b = g + (diff_at(x, y - 1, 1) + diff_at(x, y + 1, 1)) * 0.5;
                    } else {
                        r = g + (diff_at(x, y - 1, 0) + diff_at(x, y + 1, 0)) * 0.5;
                        b = g + (diff_at(x - 1, y, 1) + diff_at(x + 1, y, 1)) * 0.5;
                    }
                }
                out.at(x, y, 0) = static_cast<float>(r);
                out.at(x, y, 1) = static_cast<float>(g);
                out.at(x, y, 2) = static_cast<float>(b);
            }
        }
    });
    return out;
}

} // namespace rawforge::isp
