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

#include "rawforge/mat3.hpp"

namespace rawforge {

/// Correlated color temperature in kelvin. Accepted window is
/// [kCctMin, kCctMax]; enforced at parse/CLI boundaries and by cct_to_xyz.
using Cct = double;

inline constexpr double kCctMin = 1500.0;
inline constexpr double kCctMax = 25000.0;

namespace color {

/// sRGB transfer (IEC 61966-2-1). Linear segment below 0.0031308 with slope
/// 12.92, power segment 1.055 * v^(1/2.4) - 0.055 above. Input expected in
/// [0, 1]; callers clip first.
double srgb_encode(double linear);

/// Exact inverse of srgb_encode; threshold 0.04045 on the encoded side.
double srgb_decode(double encoded);

/// Interpolation weight between two calibration temperatures, computed in
/// reciprocal kelvin (mired) space and clipped to [0, 1]:
///
///   g = clip((1/t - 1/t1) / (1/t2 - 1/t1), 0, 1)
///
/// Note the orientation: g(t1) = 0 and g(t2) = 1, and downstream blends use
/// g * first + (1 - g) * second. Throws Error("identical calibration
/// illuminants") when t1 == t2.
double cct_weight(Cct t, Cct t1, Cct t2);

/// XYZ (Y = 1) of a white at the given temperature. Uses the CIE daylight
/// locus polynomial for t >= 4000 K and a published Planckian locus
/// approximation below; both are table-free with a seam at 4000 K. Throws
/// Error("degenerate illuminant") outside [kCctMin, kCctMax].
Vec3 cct_to_xyz(Cct t);

/// Chromaticity (x, y) backing cct_to_xyz; exposed for tests.
void cct_to_xy(Cct t, double* x, double* y);

/// ICC D50-adapted XYZ -> linear sRGB matrix (Bradford adaptation, constants
/// published to 7 significant digits). Maps the D50 white (0.9642, 1.0,
/// 0.8249) to (1, 1, 1) within 1e-3.
extern const Mat3 kXyzD50ToLinearSrgb;

/// kXyzD50ToLinearSrgb applied to one triple. No clipping.
Vec3 xyz_d50_to_linear_srgb(const Vec3& xyz);

} // namespace color
} // namespace rawforge
