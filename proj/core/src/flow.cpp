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

#include "rawforge/flow.hpp"

#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "rawforge/error.hpp"
#include "rawforge/rng.hpp"

namespace rawforge::flow {

namespace {

void check_same_dim(const Vec& a, const Vec& b, const char* what) {
    if (a.size() != b.size())
        throw Error(std::string("flow: dimension mismatch in ") + what);
}

} // namespace

Vec forward_interpolate(const Vec& z, const Vec& eps, double t) {
    check_same_dim(z, eps, "forward_interpolate");
    if (!(t >= 0.0 && t <= 1.0)) throw Error("flow: t must lie in [0, 1]");
    Vec out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = (1.0 - t) * z[i] + t * eps[i];
    return out;
}

Vec velocity_target(const Vec& z, const Vec& eps) {
    check_same_dim(z, eps, "velocity_target");
    Vec out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = eps[i] - z[i];
    return out;
}

FlowSample make_sample(const Vec& z, const Vec& eps, double t) {
    return FlowSample{t, forward_interpolate(z, eps, t), velocity_target(z, eps)};
}

Vec OraclePredictor::predict(const Vec&, double, const Vec&) const {
    return velocity_target(z, eps);
}

Vec LinearPredictor::predict(const Vec& z_t, double t, const Vec& cond) const {
    if (static_cast<int>(z_t.size()) != dim)
        throw Error("flow: predictor dimension mismatch");
    if (static_cast<int>(cond.size()) != cond_dim)
        throw Error("flow: conditioning dimension mismatch");
    const int features = dim + cond_dim + 2;
    if (static_cast<int>(weights.size()) != dim * features)
        throw Error("flow: predictor weight shape mismatch");

    Vec out(static_cast<std::size_t>(dim), 0.0);
    for (int o = 0; o < dim; ++o) {
        const double* w = weights.data() + static_cast<std::size_t>(o) * features;
        double acc = 0.0;
        for (int i = 0; i < dim; ++i) acc += w[i] * z_t[static_cast<std::size_t>(i)];
        acc += w[dim] * t;
        for (int i = 0; i < cond_dim; ++i)
            acc += w[dim + 1 + i] * cond[static_cast<std::size_t>(i)];
        acc += w[features - 1];
        out[static_cast<std::size_t>(o)] = acc;
    }
    return out;
}

double denoise_loss(const VelocityPredictor& pred, std::span<const Episode> batch) {
    if (batch.empty()) throw Error("flow: empty batch");
    const std::size_t dim = batch.front().z.size();
    double total = 0.0;
    for (const Episode& ep : batch) {
        if (ep.z.size() != dim) throw Error("flow: dimension mismatch in batch");
        check_same_dim(ep.z, ep.eps, "episode");
        const Vec z_t = forward_interpolate(ep.z, ep.eps, ep.t);
        const Vec target = velocity_target(ep.z, ep.eps);
        const Vec got = pred.predict(z_t, ep.t, ep.cond);
        check_same_dim(target, got, "prediction");
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = target[i] - got[i];
            total += d * d;
        }
    }
    return total / static_cast<double>(batch.size());
}

Vec euler_sample(const VelocityPredictor& pred, const Vec& z1, const Vec& cond, int steps) {
    if (steps < 1) throw Error("flow: steps must be >= 1");
    Vec z = z1;
    const double dt = 1.0 / static_cast<double>(steps);
    for (int k = 0; k < steps; ++k) {
        const double t = 1.0 - static_cast<double>(k) / static_cast<double>(steps);
        const Vec v = pred.predict(z, t, cond);
        check_same_dim(z, v, "euler_sample");
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= dt * v[i];
    }
    return z;
}

std::vector<Episode> make_training_episodes(std::span<const std::pair<Vec, Vec>> cond_z_pairs,
                                            int samples_per_pair, std::uint64_t seed) {
    if (cond_z_pairs.empty()) throw Error("flow: no training pairs");
    if (samples_per_pair < 1) throw Error("flow: samples_per_pair must be >= 1");
    const std::size_t dim = cond_z_pairs.front().second.size();
    const std::size_t cond_dim = cond_z_pairs.front().first.size();
    if (dim == 0) throw Error("flow: zero-dimensional data");

    SplitMix64 rng(seed);
    std::vector<Episode> episodes;
    episodes.reserve(cond_z_pairs.size() * static_cast<std::size_t>(samples_per_pair));
    for (const auto& [cond, z] : cond_z_pairs) {
        if (z.size() != dim || cond.size() != cond_dim)
            throw Error("flow: dimension mismatch in training pairs");
        for (int s = 0; s < samples_per_pair; ++s) {
            Episode ep;
            ep.cond = cond;
            ep.z = z;
            ep.t = rng.next_double();
            ep.eps.resize(dim);
            for (std::size_t i = 0; i < dim; ++i) ep.eps[i] = rng.normal(0.0, 1.0);
            episodes.push_back(std::move(ep));
        }
    }
    return episodes;
}

LinearPredictor fit_linear_predictor(std::span<const Episode> episodes) {
    if (episodes.empty()) throw Error("flow: no training episodes");
    const int dim = static_cast<int>(episodes.front().z.size());
    const int cond_dim = static_cast<int>(episodes.front().cond.size());
    const int features = dim + cond_dim + 2;
    const int rows = static_cast<int>(episodes.size());
    if (rows < features)
        throw Error("flow: need at least " + std::to_string(features) +
                    " episodes for " + std::to_string(features) + " features, got " +
                    std::to_string(rows));

    Eigen::MatrixXd a(rows, features);
    Eigen::MatrixXd b(rows, dim);
    for (int r = 0; r < rows; ++r) {
        const Episode& ep = episodes[static_cast<std::size_t>(r)];
        if (static_cast<int>(ep.z.size()) != dim ||
            static_cast<int>(ep.cond.size()) != cond_dim)
            throw Error("flow: dimension mismatch in training episodes");
        const Vec z_t = forward_interpolate(ep.z, ep.eps, ep.t);
        const Vec target = velocity_target(ep.z, ep.eps);
        for (int i = 0; i < dim; ++i) a(r, i) = z_t[static_cast<std::size_t>(i)];
        a(r, dim) = ep.t;
        for (int i = 0; i < cond_dim; ++i)
            a(r, dim + 1 + i) = ep.cond[static_cast<std::size_t>(i)];
        a(r, features - 1) = 1.0;
        for (int i = 0; i < dim; ++i) b(r, i) = target[static_cast<std::size_t>(i)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < features) throw Error("flow: rank-deficient design matrix");
    const Eigen::MatrixXd sol = qr.solve(b); // features x dim

    LinearPredictor pred;
    pred.dim = dim;
    pred.cond_dim = cond_dim;
    pred.weights.resize(static_cast<std::size_t>(dim) * static_cast<std::size_t>(features));
    for (int o = 0; o < dim; ++o)
        for (int f = 0; f < features; ++f)
            pred.weights[static_cast<std::size_t>(o) * features + static_cast<std::size_t>(f)] =
                sol(f, o);
    return pred;
}

LinearPredictor fit_linear_predictor(std::span<const std::pair<Vec, Vec>> cond_z_pairs,
                                     int samples_per_pair, std::uint64_t seed) {
    const std::vector<Episode> episodes =
        make_training_episodes(cond_z_pairs, samples_per_pair, seed);
    return fit_linear_predictor(std::span<const Episode>(episodes));
}

} // namespace rawforge::flow
