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
#include <cstddef>

namespace rawforge {

/// Double-precision RGB/XYZ triple. Scalar color math is double precision
/// throughout; only image planes store single precision.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }

/// Row-major 3x3 double matrix.
struct Mat3 {
    std::array<double, 9> m{};

    static Mat3 identity();
    static Mat3 diag(double a, double b, double c);

    double operator()(int row, int col) const { return m[static_cast<std::size_t>(row * 3 + col)]; }
    double& operator()(int row, int col) { return m[static_cast<std::size_t>(row * 3 + col)]; }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 operator*(double s, const Mat3& a);
Mat3 operator+(const Mat3& a, const Mat3& b);
bool operator==(const Mat3& a, const Mat3& b);

double determinant(const Mat3& a);
Mat3 transpose(const Mat3& a);

/// Adjugate inverse. Throws Error("non-invertible calibration matrix") when
/// |det| <= 1e-12.
Mat3 mat3_invert(const Mat3& a);

/// Elementwise blend g*a + (1-g)*b. Callers pass a mired-space weight.
Mat3 interpolate_mat3(double g, const Mat3& a, const Mat3& b);

} // namespace rawforge
