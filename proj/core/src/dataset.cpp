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

#include "rawforge/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "rawforge/error.hpp"
#include "rawforge/isp.hpp"
#include "rawforge/parallel.hpp"
#include "rawforge/rng.hpp"

namespace rawforge::dataset {

using nlohmann::json;

std::string manifest_row_to_json(const ManifestRow& row) {
    json j;
    j["schema"] = 1;
    j["scene_id"] = row.scene_id;
    j["variant_index"] = row.variant_index;
    j["seed"] = row.params.seed; // uint64, serialized as a full-width integer
    j["r"] = row.params.r;
    j["b"] = row.params.b;
    j["beta"] = row.params.beta;
    j["gamma"] = row.params.gamma;
    j["c"] = row.params.c;
    return j.dump();
}

ManifestRow manifest_row_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(std::string("manifest row: not valid JSON: ") + e.what());
    }
    const auto need = [&](const char* key) -> const json& {
        if (!j.contains(key))
            throw Error(std::string("manifest row: missing \"") + key + "\"");
        return j.at(key);
    };
    if (need("schema").get<int>() != 1)
        throw Error("manifest row: unsupported schema version");
    ManifestRow row;
    row.scene_id = need("scene_id").get<std::string>();
    row.variant_index = need("variant_index").get<int>();
    row.params.seed = need("seed").get<std::uint64_t>();
    row.params.r = need("r").get<double>();
    row.params.b = need("b").get<double>();
    row.params.beta = need("beta").get<double>();
    row.params.gamma = need("gamma").get<double>();
    row.params.c = need("c").get<double>();
    photofinish::validate_params(row.params);
    return row;
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest " + path.string());
    std::vector<ManifestRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(manifest_row_from_json(line));
    }
    return rows;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows) {
    std::string out;
    for (const ManifestRow& row : rows) {
        out += manifest_row_to_json(row);
        out += '\n';
    }
    io::atomic_write(path, out);
}

ImagePlane build_anchor(const io::RawImage& raw, const CameraProfile& profile,
                        std::optional<Cct> cct) {
    isp::PipelineConfig cfg;
    cfg.terminal = isp::Stage::Xyz;
    cfg.demosaic = isp::DemosaicMethod::EdgeAware;
    cfg.cct = cct;
    return isp::run_pipeline(raw, profile, cfg);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double lanczos3(double t) {
    t = std::abs(t);
    if (t >= 3.0) return 0.0;
    if (t < 1e-12) return 1.0;
    const double pt = kPi * t;
    return 3.0 * std::sin(pt) * std::sin(pt / 3.0) / (pt * pt);
}

struct Taps {
    int begin = 0;
    std::vector<double> w;
};

// Per-output-pixel kernel taps, sum-normalized so flat fields survive the
// resample exactly. Downscales stretch the kernel by the scale factor.
std::vector<Taps> make_taps(int src, int dst) {
    const double scale = static_cast<double>(src) / dst;
    const double fscale = std::max(1.0, scale);
    const double support = 3.0 * fscale;
    std::vector<Taps> taps(static_cast<std::size_t>(dst));
    for (int o = 0; o < dst; ++o) {
        const double center = (o + 0.5) * scale - 0.5;
        const int i0 = static_cast<int>(std::ceil(center - support));
        const int i1 = static_cast<int>(std::floor(center + support));
        Taps& t = taps[static_cast<std::size_t>(o)];
        t.begin = i0;
        t.w.resize(static_cast<std::size_t>(i1 - i0 + 1));
        double sum = 0.0;
        for (int i = i0; i <= i1; ++i) {
            const double w = lanczos3((i - center) / fscale);
            t.w[static_cast<std::size_t>(i - i0)] = w;
            sum += w;
        }
        if (sum <= 0.0) throw Error("crop_resize: degenerate kernel");
        for (double& w : t.w) w /= sum;
    }
    return taps;
}

} // namespace

ImagePlane crop_resize(const ImagePlane& img, int size) {
    if (img.channels != 1 && img.channels != 3)
        throw Error("crop_resize: expected a 1- or 3-channel image");
    if (size < 1) throw Error("crop_resize: size must be positive");
    if (img.width < 1 || img.height < 1) throw Error("crop_resize: empty image");

    const int s = std::min(img.width, img.height);
    const int x0 = (img.width - s) / 2;
    const int y0 = (img.height - s) / 2;
    const int ch = img.channels;

    if (s == size) {
        // Crop only: samples pass through untouched (no kernel, no clip).
        ImagePlane out = ImagePlane::make(size, size, ch, img.state);
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x)
                for (int c = 0; c < ch; ++c) out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
        return out;
    }

    const std::vector<Taps> taps = make_taps(s, size);
    const auto clamp_idx = [s](int i) { return std::clamp(i, 0, s - 1); };

    // Horizontal pass: s rows of `size` samples, double precision throughout.
    std::vector<double> mid(static_cast<std::size_t>(s) * static_cast<std::size_t>(size) *
                            static_cast<std::size_t>(ch));
    parallel_for(s, [&](std::int64_t r0, std::int64_t r1) {
        for (std::int64_t yi = r0; yi < r1; ++yi) {
            const int y = static_cast<int>(yi);
            for (int o = 0; o < size; ++o) {
                const Taps& t = taps[static_cast<std::size_t>(o)];
                for (int c = 0; c < ch; ++c) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < t.w.size(); ++k) {
                        const int xi = clamp_idx(t.begin + static_cast<int>(k));
                        acc += t.w[k] * static_cast<double>(img.at(x0 + xi, y0 + y, c));
                    }
                    mid[(static_cast<std::size_t>(y) * static_cast<std::size_t>(size) +
                         static_cast<std::size_t>(o)) *
                            static_cast<std::size_t>(ch) +
                        static_cast<std::size_t>(c)] = acc;
                }
            }
        }
    });

    // Vertical pass onto the output grid; the kernel overshoots on edges, so
    // the result is clipped back to [0, 1].
    ImagePlane out = ImagePlane::make(size, size, ch, img.state);
    parallel_for(size, [&](std::int64_t r0, std::int64_t r1) {
        for (std::int64_t oi = r0; oi < r1; ++oi) {
            const int oy = static_cast<int>(oi);
            const Taps& t = taps[static_cast<std::size_t>(oy)];
            for (int x = 0; x < size; ++x)
                for (int c = 0; c < ch; ++c) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < t.w.size(); ++k) {
                        const int yi = clamp_idx(t.begin + static_cast<int>(k));
                        acc += t.w[k] *
                               mid[(static_cast<std::size_t>(yi) *
                                        static_cast<std::size_t>(size) +
                                    static_cast<std::size_t>(x)) *
                                       static_cast<std::size_t>(ch) +
                                   static_cast<std::size_t>(c)];
                    }
                    out.at(x, oy, c) = static_cast<float>(std::clamp(acc, 0.0, 1.0));
                }
        }
    });
    return out;
}

namespace {

void check_scene_id(const std::string& id) {
    if (id.empty()) throw Error("scene id must not be empty");
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == '-' || ch == '.';
        if (!ok)
            throw Error("scene id \"" + id + "\" must match [A-Za-z0-9._-]+");
    }
    if (id[0] == '.') throw Error("scene id must not start with '.'");
}

std::string variant_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "variant_%03d.png", index);
    return buf;
}

} // namespace

SceneRecord build_scene(const io::RawImage& raw, const CameraProfile& profile,
                        const std::string& scene_id, int n_variants, std::uint64_t base_seed,
                        const std::filesystem::path& out_root, const BuildOptions& opts) {
    check_scene_id(scene_id);
    if (n_variants < 1) throw Error("dataset: need at least one variant per scene");
    if (opts.resize < 0) throw Error("dataset: resize must be non-negative");

    const std::filesystem::path dir = out_root / scene_id;
    std::filesystem::create_directories(dir);

    SceneRecord rec;
    rec.scene_id = scene_id;

    ImagePlane anchor = build_anchor(raw, profile, opts.cct);
    std::size_t clipped = 0;
    for (float v : anchor.data)
        if (v < 0.0f || v > 1.0f) ++clipped;
    rec.anchor_clipped_fraction =
        static_cast<double>(clipped) / static_cast<double>(anchor.data.size());

    if (opts.resize > 0) anchor = crop_resize(anchor, opts.resize);
    rec.anchor_path = dir / "anchor.png";
    io::write_plane_png(rec.anchor_path, anchor);

    // Variants are sequential here; the pipeline stages inside each render
    // already row-parallelize, and per-variant seeds make order irrelevant.
    for (int k = 0; k < n_variants; ++k) {
        const std::uint64_t seed = split_seed(base_seed, scene_id, static_cast<std::uint64_t>(k));
        const photofinish::PhotoFinishParams params = photofinish::sample_params(seed);

        photofinish::VariantOptions vopts;
        vopts.demosaic = opts.demosaic;
        vopts.cct = opts.cct;
        ImagePlane variant = photofinish::render_variant(raw, profile, params, vopts);
        if (opts.resize > 0) variant = crop_resize(variant, opts.resize);

        const std::filesystem::path path = dir / variant_name(k);
        io::write_plane_png(path, variant);
        rec.variant_paths.push_back(path);
        rec.rows.push_back(ManifestRow{scene_id, k, params});
    }
    return rec;
}

std::vector<SceneRecord> build_dataset(const std::vector<SceneInput>& scenes, int n_variants,
                                       std::uint64_t base_seed,
                                       const std::filesystem::path& out_root,
                                       const BuildOptions& opts) {
    if (scenes.empty()) throw Error("dataset: no scenes given");
    std::filesystem::create_directories(out_root);

    std::vector<SceneRecord> records;
    records.reserve(scenes.size());
    std::vector<ManifestRow> all_rows;
    for (const SceneInput& scene : scenes) {
        records.push_back(
            build_scene(scene.raw, scene.profile, scene.scene_id, n_variants, base_seed,
                        out_root, opts));
        const SceneRecord& rec = records.back();
        all_rows.insert(all_rows.end(), rec.rows.begin(), rec.rows.end());
    }
    write_manifest(out_root / "manifest.jsonl", all_rows);
    return records;
}

} // namespace rawforge::dataset
