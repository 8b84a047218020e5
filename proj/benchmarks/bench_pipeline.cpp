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

// Microbenchmarks for the hot paths: demosaic, noise synthesis, the
// photo-finish transfer, Lanczos resize, and PCA feature compaction.
// Sizes are chosen so one iteration stays in the low-millisecond range.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "rawforge/dataset.hpp"
#include "rawforge/image.hpp"
#include "rawforge/isp.hpp"
#include "rawforge/metrics.hpp"
#include "rawforge/photofinish.hpp"
#include "rawforge/rawrender.hpp"
#include "rawforge/rng.hpp"

namespace rf = rawforge;

namespace {

rf::ImagePlane random_mosaic(int n, std::uint64_t seed) {
    rf::ImagePlane img = rf::ImagePlane::make(n, n, 1, rf::ColorState::MosaicWB);
    rf::SplitMix64 rng(seed);
    for (float& v : img.data) v = static_cast<float>(rng.next_double());
    return img;
}

rf::ImagePlane random_rgb(int n, rf::ColorState state, std::uint64_t seed) {
    rf::ImagePlane img = rf::ImagePlane::make(n, n, 3, state);
    rf::SplitMix64 rng(seed);
    for (float& v : img.data) v = static_cast<float>(rng.next_double());
    return img;
}

void bm_demosaic_bilinear(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rf::ImagePlane mosaic = random_mosaic(n, 1);
    for (auto _ : state) {
        rf::ImagePlane rgb = rf::isp::demosaic_bilinear(mosaic, rf::CfaPattern::RGGB);
        benchmark::DoNotOptimize(rgb.data.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void bm_demosaic_edge_aware(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rf::ImagePlane mosaic = random_mosaic(n, 2);
    for (auto _ : state) {
        rf::ImagePlane rgb = rf::isp::demosaic_edge_aware(mosaic, rf::CfaPattern::RGGB);
        benchmark::DoNotOptimize(rgb.data.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void bm_noise_synthesis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rf::ImagePlane img = random_rgb(n, rf::ColorState::CameraRgbRaw, 3);
    rf::rawrender::NoiseSpec spec;
    spec.alpha = {0.01, 0.009, 0.011};
    spec.beta = {1e-4, 9e-5, 1.1e-4};
    spec.seed = 42;
    for (auto _ : state) {
        rf::ImagePlane noisy = rf::rawrender::synthesize_noise(img, spec);
        benchmark::DoNotOptimize(noisy.data.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n * 3);
}

void bm_photo_finish(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rf::ImagePlane img = random_rgb(n, rf::ColorState::EncodedSrgb, 4);
    const rf::photofinish::PhotoFinishParams params = rf::photofinish::sample_params(9);
    for (auto _ : state) {
        rf::ImagePlane out = rf::photofinish::finish_encoded(img, params);
        benchmark::DoNotOptimize(out.data.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n * 3);
}

void bm_crop_resize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const rf::ImagePlane img = random_rgb(n, rf::ColorState::EncodedSrgb, 5);
    for (auto _ : state) {
        rf::ImagePlane small = rf::dataset::crop_resize(img, 32);
        benchmark::DoNotOptimize(small.data.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n * 3);
}

void bm_pca_compactness(benchmark::State& state) {
    const int points = static_cast<int>(state.range(0));
    rf::SplitMix64 rng(6);
    std::vector<std::vector<double>> feats(static_cast<std::size_t>(points));
    for (auto& f : feats) {
        f.resize(32 * 32 * 3);
        for (double& v : f) v = rng.next_double();
    }
    for (auto _ : state) {
        rf::metrics::CompactnessReport rep = rf::metrics::pca_compactness(feats, 2);
        benchmark::DoNotOptimize(rep.mean_dist);
    }
    state.SetItemsProcessed(state.iterations() * points);
}

} // namespace

BENCHMARK(bm_demosaic_bilinear)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_demosaic_edge_aware)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_noise_synthesis)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_photo_finish)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_crop_resize)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_pca_compactness)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
