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

#include <string>
#include <vector>

#include "rawforge/image.hpp"

namespace rawforge::metrics {

/// 10 * log10(1 / MSE) for values in [0, 1]; +infinity for identical images
/// (serialized as "inf"). Accumulates in double. Throws on dimension or
/// channel mismatch.
double psnr(const ImagePlane& a, const ImagePlane& b);

/// Mean local SSIM, 11x11 Gaussian window with sigma 1.5, K1 = 0.01,
/// K2 = 0.03, dynamic range 1. Windows are "valid" (no padding), so images
/// must be at least 11x11. Multichannel images average the per-channel
/// scores. Symmetric; identical images score 1.
double ssim(const ImagePlane& a, const ImagePlane& b);

struct CompactnessReport {
    int k = 0;
    int n_points = 0;
    int dim = 0;
    double mean_dist = 0.0;           // mean L2 distance to the projected centroid
    std::vector<double> eigenvalues;  // top-k covariance eigenvalues, descending
};

/// PCA cluster compactness: center the points, project onto the top-k
/// principal directions, report the mean distance to the centroid in the
/// projected space. Deterministic eigenvector sign: the component with the
/// largest magnitude is made positive. Identical points give mean_dist 0.
/// Requires >= 2 points of equal dimension and 1 <= k <= dim.
CompactnessReport pca_compactness(const std::vector<std::vector<double>>& points, int k);

/// Feature vector for image cluster metrics: center-crop + Lanczos resample
/// to side x side, flattened row-major (interleaved channels).
std::vector<double> image_features(const ImagePlane& img, int side = 32);

// Report serialization. PSNR of identical images must survive a round trip
// through text, so infinity serializes as the explicit sentinel "inf".
std::string value_to_json(double v);                       // number or "inf"
std::string metric_json(const std::string& name, double value);
std::string metric_csv(const std::string& name, double value);
std::string compactness_json(const CompactnessReport& r);
std::string compactness_csv(const CompactnessReport& r);

} // namespace rawforge::metrics
