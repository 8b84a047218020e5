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

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

// Desk-scale rectified-flow bench: straight-line interpolation between data
// and noise, constant-velocity targets, Euler sampling and a closed-form
// linear least-squares "predictor". Small dense vectors, no autodiff --
// enough to check the transport math exactly.

namespace rawforge::flow {

using Vec = std::vector<double>;

/// z_t = (1 - t) * z + t * eps, t in [0, 1]. t = 1 is pure noise.
Vec forward_interpolate(const Vec& z, const Vec& eps, double t);

/// Constant ground-truth velocity of the straight path: eps - z.
Vec velocity_target(const Vec& z, const Vec& eps);

struct FlowSample {
    double t = 0.0;
    Vec z_t;
    Vec target; // velocity_target(z, eps)
};

FlowSample make_sample(const Vec& z, const Vec& eps, double t);

/// One training episode: endpoints plus conditioning (may be empty).
struct Episode {
    Vec z;
    Vec eps;
    Vec cond;
    double t = 0.0;
};

struct VelocityPredictor {
    virtual ~VelocityPredictor() = default;
    virtual Vec predict(const Vec& z_t, double t, const Vec& cond) const = 0;
};

/// Knows the episode's true endpoints; always returns eps - z. Recovers the
/// data exactly under Euler sampling for any step count.
struct OraclePredictor final : VelocityPredictor {
    Vec z;
    Vec eps;
    OraclePredictor(Vec z_, Vec eps_) : z(std::move(z_)), eps(std::move(eps_)) {}
    Vec predict(const Vec&, double, const Vec&) const override;
};

/// v = W * [z_t; t; cond; 1], row-major W of shape dim x (dim + cond_dim + 2).
struct LinearPredictor final : VelocityPredictor {
    int dim = 0;
    int cond_dim = 0;
    std::vector<double> weights;
    Vec predict(const Vec& z_t, double t, const Vec& cond) const override;
};

/// Mean over episodes of || velocity_target - predictor(z_t, t, cond) ||^2
/// with z_t = forward_interpolate(z, eps, t). Zero predictor gives the mean
/// squared target norm; the oracle gives exactly 0.
double denoise_loss(const VelocityPredictor& pred, std::span<const Episode> batch);

/// Euler integration from t = 1 to t = 0 with left-endpoint evaluation:
/// repeat steps times: z -= (1/steps) * pred(z, t_k, cond), t_k = 1 - k/steps.
/// steps >= 1.
Vec euler_sample(const VelocityPredictor& pred, const Vec& z1, const Vec& cond, int steps);

/// Deterministic training rows: per (cond, z) pair in order, samples_per_pair
/// episodes drawn from one shared stream, t ~ U(0, 1) first, then the
/// dim(z) components of eps ~ N(0, I).
std::vector<Episode> make_training_episodes(std::span<const std::pair<Vec, Vec>> cond_z_pairs,
                                            int samples_per_pair, std::uint64_t seed);

/// Closed-form least squares over explicit episodes, features [z_t; t; cond;
/// 1]. Training loss never exceeds the zero predictor's; episodes whose
/// targets are exactly linear in the features are fit to machine precision.
/// Throws Error on a rank-deficient design or fewer rows than features.
LinearPredictor fit_linear_predictor(std::span<const Episode> episodes);

/// fit_linear_predictor(make_training_episodes(...)).
LinearPredictor fit_linear_predictor(std::span<const std::pair<Vec, Vec>> cond_z_pairs,
                                     int samples_per_pair, std::uint64_t seed);

} // namespace rawforge::flow
