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

#include "rawforge/color.hpp"

#include <algorithm>
#include <cmath>

#include "rawforge/error.hpp"

namespace rawforge {

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double a, double b, double c) {
    Mat3 r;
    r.m = {a, 0.0, 0.0, 0.0, b, 0.0, 0.0, 0.0, c};
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[static_cast<std::size_t>(i)] = s * a.m[static_cast<std::size_t>(i)];
    return r;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i)
        r.m[static_cast<std::size_t>(i)] =
            a.m[static_cast<std::size_t>(i)] + b.m[static_cast<std::size_t>(i)];
    return r;
}

bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }

double determinant(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

Mat3 mat3_invert(const Mat3& a) {
    const double det = determinant(a);
    if (std::abs(det) <= 1e-12)
        throw Error("non-invertible calibration matrix");
    const double inv = 1.0 / det;
    Mat3 r;
    r(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) * inv;
    r(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) * inv;
    r(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) * inv;
    r(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) * inv;
    r(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) * inv;
    r(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) * inv;
    r(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) * inv;
    r(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) * inv;
    r(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) * inv;
    return r;
}

Mat3 interpolate_mat3(double g, const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i)
        r.m[static_cast<std::size_t>(i)] = g * a.m[static_cast<std::size_t>(i)] +
                                           (1.0 - g) * b.m[static_cast<std::size_t>(i)];
    return r;
}

namespace color {

double srgb_encode(double linear) {
    if (linear <= 0.0031308) return 12.92 * linear;
    // Algebraically 1.055 * linear^(1/2.4) - 0.055, arranged so the white
    // anchor is a fixed point: encode(1) == 1 bitwise, matching decode.
    return 1.0 + 1.055 * (std::pow(linear, 1.0 / 2.4) - 1.0);
}

double srgb_decode(double encoded) {
    if (encoded <= 0.04045) return encoded / 12.92;
    return std::pow((encoded + 0.055) / 1.055, 2.4);
}

double cct_weight(Cct t, Cct t1, Cct t2) {
    if (t1 == t2)
        throw Error("identical calibration illuminants");
    const double g = (1.0 / t - 1.0 / t1) / (1.0 / t2 - 1.0 / t1);
    return std::clamp(g, 0.0, 1.0);
}

void cct_to_xy(Cct t, double* x_out, double* y_out) {
    double x, y;
    if (t >= 4000.0) {
        // CIE daylight locus polynomial (two temperature bands).
        const double u = 1e3 / t;
        if (t <= 7000.0)
            x = 0.244063 + 0.09911 * u + 2.9678 * u * u - 4.6070 * u * u * u;
        else
            x = 0.237040 + 0.24748 * u + 1.9018 * u * u - 2.0064 * u * u * u;
        y = -3.000 * x * x + 2.870 * x - 0.275;
    } else {
        // Planckian locus cubic fit (Kim et al.). The fit is published for
        // 1667 K up; below that we extrapolate the low band, which stays
        // monotone over the accepted window.
        const double u = 1e3 / t;
        x = -0.2661239 * u * u * u - 0.2343589 * u * u + 0.8776956 * u + 0.179910;
        if (t <= 2222.0)
            y = -1.1063814 * x * x * x - 1.34811020 * x * x + 2.18555832 * x - 0.20219683;
        else
            y = -0.9549476 * x * x * x - 1.37418593 * x * x + 2.09137015 * x - 0.16748867;
    }
    *x_out = x;
    *y_out = y;
}

Vec3 cct_to_xyz(Cct t) {
    if (!(t >= kCctMin && t <= kCctMax))
        throw Error("degenerate illuminant: CCT outside [1500, 25000] K");
    double x, y;
    cct_to_xy(t, &x, &y);
    // xyY -> XYZ at Y = 1.
    return {x / y, 1.0, (1.0 - x - y) / y};
}

// ICC D50-adapted sRGB matrix (Bradford), 7 significant digits.
const Mat3 kXyzD50ToLinearSrgb{{3.1338561, -1.6168667, -0.4906146,
                                -0.9787684, 1.9161415, 0.0334540,
                                0.0719453, -0.2289914, 1.4052427}};

Vec3 xyz_d50_to_linear_srgb(const Vec3& xyz) { return kXyzD50ToLinearSrgb * xyz; }

} // namespace color
} // namespace rawforge
