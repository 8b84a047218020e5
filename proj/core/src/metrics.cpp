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

#include "rawforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "rawforge/dataset.hpp"
#include "rawforge/error.hpp"

namespace rawforge::metrics {

namespace {

void check_pair(const ImagePlane& a, const ImagePlane& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw Error("metric inputs must have identical shape");
    if (a.width < 1 || a.height < 1) throw Error("metric inputs must be non-empty");
}

} // namespace

double psnr(const ImagePlane& a, const ImagePlane& b) {
    check_pair(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(a.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(mse);
}

namespace {

constexpr int kWin = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01; // (K1 * L)^2, L = 1
constexpr double kC2 = 0.03 * 0.03;

// 1D Gaussian normalized to sum 1; the 11x11 window is its outer product,
// which also sums to 1, so the window is separable.
std::array<double, kWin> gaussian_kernel() {
    std::array<double, kWin> k{};
    double sum = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double d = i - (kWin - 1) / 2.0;
        k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
        sum += k[static_cast<std::size_t>(i)];
    }
    for (double& v : k) v /= sum;
    return k;
}

// Valid-mode separable filtering: horizontal pass shrinks width, vertical
// pass shrinks height. No padding, so every window sees only real samples.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::array<double, kWin>& k) {
    const int vw = w - kWin + 1;
    const int vh = h - kWin + 1;
    std::vector<double> mid(static_cast<std::size_t>(vw) * static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < vw; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWin; ++i)
                acc += k[static_cast<std::size_t>(i)] *
                       src[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                           static_cast<std::size_t>(x + i)];
            mid[static_cast<std::size_t>(y) * static_cast<std::size_t>(vw) +
                static_cast<std::size_t>(x)] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(vw) * static_cast<std::size_t>(vh));
    for (int y = 0; y < vh; ++y)
        for (int x = 0; x < vw; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWin; ++i)
                acc += k[static_cast<std::size_t>(i)] *
                       mid[static_cast<std::size_t>(y + i) * static_cast<std::size_t>(vw) +
                           static_cast<std::size_t>(x)];
            out[static_cast<std::size_t>(y) * static_cast<std::size_t>(vw) +
                static_cast<std::size_t>(x)] = acc;
        }
    return out;
}

} // namespace

double ssim(const ImagePlane& a, const ImagePlane& b) {
    check_pair(a, b);
    if (a.width < kWin || a.height < kWin)
        throw Error("ssim needs images at least 11x11");

    const std::array<double, kWin> k = gaussian_kernel();
    const int w = a.width, h = a.height;
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);

    double channel_sum = 0.0;
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (int c = 0; c < a.channels; ++c) {
        for (int py = 0; py < h; ++py)
            for (int px = 0; px < w; ++px) {
                const std::size_t i =
                    static_cast<std::size_t>(py) * static_cast<std::size_t>(w) +
                    static_cast<std::size_t>(px);
                const double va = static_cast<double>(a.at(px, py, c));
                const double vb = static_cast<double>(b.at(px, py, c));
                x[i] = va;
                y[i] = vb;
                xx[i] = va * va;
                yy[i] = vb * vb;
                xy[i] = va * vb;
            }
        const std::vector<double> mu_x = filter_valid(x, w, h, k);
        const std::vector<double> mu_y = filter_valid(y, w, h, k);
        const std::vector<double> m_xx = filter_valid(xx, w, h, k);
        const std::vector<double> m_yy = filter_valid(yy, w, h, k);
        const std::vector<double> m_xy = filter_valid(xy, w, h, k);

        double acc = 0.0;
        for (std::size_t i = 0; i < mu_x.size(); ++i) {
            const double mx = mu_x[i], my = mu_y[i];
            const double var_x = m_xx[i] - mx * mx;
            const double var_y = m_yy[i] - my * my;
            const double cov = m_xy[i] - mx * my;
            const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
            const double den = (mx * mx + my * my + kC1) * (var_x + var_y + kC2);
            acc += num / den;
        }
        channel_sum += acc / static_cast<double>(mu_x.size());
    }
    return channel_sum / static_cast<double>(a.channels);
}

CompactnessReport pca_compactness(const std::vector<std::vector<double>>& points, int k) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw Error("pca_compactness needs at least 2 points");
    const int dim = static_cast<int>(points.front().size());
    if (dim < 1) throw Error("pca_compactness: zero-dimensional points");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim)
            throw Error("pca_compactness: points must share one dimension");
    if (k < 1 || k > dim) throw Error("pca_compactness: k must lie in [1, dim]");

    Eigen::MatrixXd xc(n, dim);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < dim; ++c) xc(r, c) = points[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    const Eigen::RowVectorXd mean = xc.colwise().mean();
    xc.rowwise() -= mean;

    // Principal directions, columns of v, eigenvalues descending. Tall data
    // diagonalizes the dim x dim covariance; wide data (dim > n) goes through
    // the n x n Gram matrix, whose nonzero spectrum is the same.
    Eigen::MatrixXd v(dim, k);
    Eigen::VectorXd eigvals(k);
    const double denom = static_cast<double>(n - 1);
    if (dim <= n) {
        const Eigen::MatrixXd cov = xc.transpose() * xc / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
        if (es.info() != Eigen::Success) throw Error("pca_compactness: eigensolver failed");
        for (int j = 0; j < k; ++j) {
            v.col(j) = es.eigenvectors().col(dim - 1 - j);
            eigvals(j) = es.eigenvalues()(dim - 1 - j);
        }
    } else {
        const Eigen::MatrixXd gram = xc * xc.transpose() / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        if (es.info() != Eigen::Success) throw Error("pca_compactness: eigensolver failed");
        if (k > n) throw Error("pca_compactness: k exceeds the point count (rank bound)");
        for (int j = 0; j < k; ++j) {
            const double lambda = es.eigenvalues()(n - 1 - j);
            eigvals(j) = lambda;
            Eigen::VectorXd dir = xc.transpose() * es.eigenvectors().col(n - 1 - j);
            const double norm = dir.norm();
            v.col(j) = norm > 0.0 ? Eigen::VectorXd(dir / norm)
                                  : Eigen::VectorXd::Zero(dim);
        }
    }

    // Deterministic orientation: flip so the largest-magnitude component
    // (first on ties) is positive.
    for (int j = 0; j < k; ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < dim; ++i)
            if (std::abs(v(i, j)) > best) {
                best = std::abs(v(i, j));
                arg = i;
            }
        if (v(arg, j) < 0.0) v.col(j) = -v.col(j);
    }

    const Eigen::MatrixXd proj = xc * v; // n x k
    const Eigen::RowVectorXd centroid = proj.colwise().mean();
    double total = 0.0;
    for (int r = 0; r < n; ++r) total += (proj.row(r) - centroid).norm();

    CompactnessReport rep;
    rep.k = k;
    rep.n_points = n;
    rep.dim = dim;
    rep.mean_dist = total / static_cast<double>(n);
    rep.eigenvalues.assign(eigvals.data(), eigvals.data() + k);
    return rep;
}

std::vector<double> image_features(const ImagePlane& img, int side) {
    const ImagePlane small = dataset::crop_resize(img, side);
    return std::vector<double>(small.data.begin(), small.data.end());
}

std::string value_to_json(double v) {
    if (std::isinf(v)) return "\"inf\"";
    return nlohmann::json(v).dump();
}

std::string metric_json(const std::string& name, double value) {
    return "{\"metric\":" + nlohmann::json(name).dump() + ",\"value\":" + value_to_json(value) +
           "}\n";
}

std::string metric_csv(const std::string& name, double value) {
    const std::string v = std::isinf(value) ? "inf" : nlohmann::json(value).dump();
    return "metric,value\n" + name + "," + v + "\n";
}

std::string compactness_json(const CompactnessReport& r) {
    nlohmann::json j;
    j["metric"] = "pca_compactness";
    j["k"] = r.k;
    j["n_points"] = r.n_points;
    j["dim"] = r.dim;
    j["mean_dist"] = r.mean_dist;
    j["eigenvalues"] = r.eigenvalues;
    return j.dump() + "\n";
}

std::string compactness_csv(const CompactnessReport& r) {
    std::string out = "metric,k,n_points,dim,mean_dist\n";
    out += "pca_compactness," + std::to_string(r.k) + "," + std::to_string(r.n_points) + "," +
           std::to_string(r.dim) + "," + nlohmann::json(r.mean_dist).dump() + "\n";
    return out;
}

} // namespace rawforge::metrics
