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

// rawforge: camera raw synthesis and ISP toolbox.
//
// Exit codes: 0 success, 1 usage error, 2 data or processing error. All file
// outputs are written atomically (temp file + rename).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rawforge/color.hpp"
#include "rawforge/dataset.hpp"
#include "rawforge/dng.hpp"
#include "rawforge/error.hpp"
#include "rawforge/flow.hpp"
#include "rawforge/image_io.hpp"
#include "rawforge/isp.hpp"
#include "rawforge/metrics.hpp"
#include "rawforge/parallel.hpp"
#include "rawforge/photofinish.hpp"
#include "rawforge/rawrender.hpp"
#include "rawforge/rng.hpp"

namespace rf = rawforge;

namespace {

// A profile argument accepts either a DNG/TIFF container or a profile JSON;
// the byte order mark distinguishes them.
rf::CameraProfile load_profile_any(const std::string& path) {
    const std::vector<std::uint8_t> bytes = rf::io::read_file(path);
    if (bytes.size() >= 2 && ((bytes[0] == 'I' && bytes[1] == 'I') ||
                              (bytes[0] == 'M' && bytes[1] == 'M')))
        return rf::dng::parse_dng(bytes.data(), bytes.size());
    return rf::dng::profile_from_json(std::string(bytes.begin(), bytes.end()));
}

rf::Vec3 parse_triplet(const std::string& s, const char* what) {
    std::array<double, 3> v{};
    std::stringstream ss(s);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 3) throw rf::Error(std::string(what) + ": expected exactly 3 values");
        try {
            v[static_cast<std::size_t>(i)] = std::stod(item);
        } catch (const std::exception&) {
            throw rf::Error(std::string(what) + ": not a number: " + item);
        }
        ++i;
    }
    if (i != 3) throw rf::Error(std::string(what) + ": expected exactly 3 values");
    return rf::Vec3{v[0], v[1], v[2]};
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw rf::Error(std::string(what) + ": not an integer: " + item);
        }
    }
    if (out.empty()) throw rf::Error(std::string(what) + ": empty list");
    return out;
}

std::string variant_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "variant_%03d.png", index);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        rf::io::atomic_write(out_path, text);
}

rf::isp::DemosaicMethod demosaic_from_string(const std::string& s) {
    if (s == "bilinear") return rf::isp::DemosaicMethod::Bilinear;
    if (s == "edge-aware") return rf::isp::DemosaicMethod::EdgeAware;
    throw rf::Error("unknown demosaic method \"" + s + "\" (bilinear, edge-aware)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"camera raw synthesis and ISP toolbox"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "rawforge 0.1.0");
    app.fallthrough();

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = auto, RAWFORGE_THREADS, cores)");

    // ---- profile extract ----------------------------------------------
    auto* profile_cmd = app.add_subcommand("profile", "camera profile operations");
    profile_cmd->require_subcommand(1);
    auto* extract = profile_cmd->add_subcommand(
        "extract", "read calibration metadata from a DNG/TIFF into profile JSON");
    struct {
        std::string in, out;
    } ex;
    extract->add_option("input", ex.in, "DNG/TIFF file")->required();
    extract->add_option("-o,--out", ex.out, "output JSON path (default: stdout)");
    extract->callback([&] {
        rf::set_thread_count(threads);
        const rf::CameraProfile p = load_profile_any(ex.in);
        if (ex.out.empty())
            std::cout << rf::dng::profile_to_json(p);
        else
            rf::dng::save_profile(ex.out, p);
    });

    // ---- isp run --------------------------------------------------------
    auto* isp_cmd = app.add_subcommand("isp", "forward ISP pipeline");
    isp_cmd->require_subcommand(1);
    auto* run = isp_cmd->add_subcommand("run", "render a raw mosaic through the pipeline");
    struct {
        std::string raw, profile, out;
        std::string stage = "gamma";
        std::string demosaic = "edge-aware";
        std::string wb;
        double cct = 0.0;
    } ir;
    run->add_option("--raw", ir.raw, "input mosaic (PNG or PGM, 16-bit)")->required();
    run->add_option("--profile", ir.profile, "camera profile (JSON or DNG)")->required();
    run->add_option("-o,--out", ir.out, "output PNG")->required();
    run->add_option("--stage", ir.stage,
                    "terminal stage: normalize, lens-shading, white-balance, demosaic, "
                    "xyz, srgb, gamma");
    run->add_option("--demosaic", ir.demosaic, "bilinear or edge-aware");
    run->add_option("--wb", ir.wb, "white-balance gains r,g,b (default: AsShotNeutral)");
    auto* run_cct = run->add_option("--cct", ir.cct,
                                    "interpolate the forward matrix at this temperature (K)");
    run->callback([&] {
        rf::set_thread_count(threads);
        const rf::io::RawImage raw = rf::io::read_raw_image(ir.raw);
        const rf::CameraProfile p = load_profile_any(ir.profile);
        rf::isp::PipelineConfig cfg;
        cfg.terminal = rf::isp::stage_from_string(ir.stage);
        cfg.demosaic = demosaic_from_string(ir.demosaic);
        if (!ir.wb.empty()) {
            const rf::Vec3 g = parse_triplet(ir.wb, "--wb");
            cfg.wb_gains = std::array<double, 3>{g.x, g.y, g.z};
        }
        if (run_cct->count() > 0) cfg.cct = ir.cct;
        rf::io::write_plane_png(ir.out, rf::isp::run_pipeline(raw, p, cfg));
    });

    // ---- demosaic -------------------------------------------------------
    auto* dem = app.add_subcommand("demosaic", "demosaic a bare mosaic PNG");
    struct {
        std::string in, out;
        std::string cfa = "rggb";
        std::string method = "edge-aware";
    } dm;
    dem->add_option("--in", dm.in, "input mosaic PNG/PGM")->required();
    dem->add_option("-o,--out", dm.out, "output PNG (16-bit RGB)")->required();
    dem->add_option("--cfa", dm.cfa, "rggb, bggr, grbg or gbrg");
    dem->add_option("--method", dm.method, "bilinear or edge-aware");
    dem->callback([&] {
        rf::set_thread_count(threads);
        const rf::io::RawImage raw = rf::io::read_raw_image(dm.in);
        rf::ImagePlane m = rf::ImagePlane::make(raw.width, raw.height, 1,
                                                rf::ColorState::MosaicWB);
        for (std::size_t i = 0; i < raw.data.size(); ++i)
            m.data[i] = static_cast<float>(raw.data[i]) / 65535.0f;
        const rf::CfaPattern cfa = rf::cfa_from_string(dm.cfa);
        const rf::ImagePlane rgb = demosaic_from_string(dm.method) ==
                                           rf::isp::DemosaicMethod::Bilinear
                                       ? rf::isp::demosaic_bilinear(m, cfa)
                                       : rf::isp::demosaic_edge_aware(m, cfa);
        rf::io::write_plane_png(dm.out, rgb);
    });

    // ---- xyz2raw --------------------------------------------------------
    auto* x2r = app.add_subcommand("xyz2raw", "render an XYZ image to synthetic raw");
    struct {
        std::string in, profile, out;
        double cct = 5000.0;
        bool to_mosaic = false;
        std::string cfa;
        double strength = 0.0;
        std::uint64_t seed = 0;
        std::string alpha, beta;
        bool swap_pairing = false;
    } xr;
    x2r->add_option("--xyz", xr.in, "input XYZ PNG (16-bit)")->required();
    x2r->add_option("--profile", xr.profile, "camera profile (JSON or DNG)")->required();
    x2r->add_option("-o,--out", xr.out, "output PNG")->required();
    x2r->add_option("--cct", xr.cct, "illuminant temperature (K)")->required();
    x2r->add_flag("--mosaic", xr.to_mosaic, "emit a single-channel CFA mosaic");
    x2r->add_option("--cfa", xr.cfa, "CFA pattern override (default: profile)");
    x2r->add_option("--noise-strength", xr.strength, "noise strength (0 = no noise)");
    x2r->add_option("--noise-seed", xr.seed, "noise seed");
    x2r->add_option("--alpha", xr.alpha, "noise alpha r,g,b (default: profile)");
    x2r->add_option("--beta", xr.beta, "noise beta r,g,b (default: profile)");
    x2r->add_flag("--swap-pairing", xr.swap_pairing,
                  "pair calibration matrix 1 with the first temperature");
    x2r->callback([&] {
        rf::set_thread_count(threads);
        const rf::CameraProfile p = load_profile_any(xr.profile);
        const rf::ImagePlane xyz =
            rf::io::read_plane_png(xr.in, rf::ColorState::Xyz);
        rf::rawrender::RenderRawOptions opts;
        opts.swap_pairing = xr.swap_pairing;
        if (xr.strength > 0.0) {
            rf::rawrender::NoiseSpec noise;
            noise.alpha = xr.alpha.empty() ? p.noise_alpha : parse_triplet(xr.alpha, "--alpha");
            noise.beta = xr.beta.empty() ? p.noise_beta : parse_triplet(xr.beta, "--beta");
            noise.strength = xr.strength;
            noise.seed = xr.seed;
            opts.noise = noise;
        }
        if (xr.to_mosaic || !xr.cfa.empty())
            opts.cfa = xr.cfa.empty() ? p.cfa : rf::cfa_from_string(xr.cfa);
        rf::io::write_plane_png(xr.out, rf::rawrender::render_raw(xyz, p, xr.cct, opts));
    });

    // ---- noise add ------------------------------------------------------
    auto* noise_cmd = app.add_subcommand("noise", "sensor noise synthesis");
    noise_cmd->require_subcommand(1);
    auto* nadd = noise_cmd->add_subcommand("add", "add heteroscedastic Gaussian noise");
    struct {
        std::string in, out, alpha, beta, cfa;
        double strength = 1.0;
        std::uint64_t seed = 0;
    } na;
    nadd->add_option("--in", na.in, "input PNG (1 or 3 channels, linear raw domain)")
        ->required();
    nadd->add_option("-o,--out", na.out, "output PNG")->required();
    nadd->add_option("--alpha", na.alpha, "signal-dependent variance r,g,b")->required();
    nadd->add_option("--beta", na.beta, "signal-independent variance r,g,b")->required();
    nadd->add_option("--strength", na.strength, "noise strength multiplier");
    nadd->add_option("--seed", na.seed, "noise seed");
    nadd->add_option("--cfa", na.cfa, "CFA pattern for mosaic inputs");
    nadd->callback([&] {
        rf::set_thread_count(threads);
        const rf::io::PngImage png = rf::io::read_png(na.in);
        const rf::ColorState state = png.channels == 1 ? rf::ColorState::MosaicNormalized
                                                       : rf::ColorState::CameraRgbRaw;
        const rf::ImagePlane img = rf::io::plane_from_png(png, state);
        rf::rawrender::NoiseSpec spec;
        spec.alpha = parse_triplet(na.alpha, "--alpha");
        spec.beta = parse_triplet(na.beta, "--beta");
        spec.strength = na.strength;
        spec.seed = na.seed;
        std::optional<rf::CfaPattern> cfa;
        if (!na.cfa.empty()) cfa = rf::cfa_from_string(na.cfa);
        rf::io::write_plane_png(na.out, rf::rawrender::synthesize_noise(img, spec, cfa));
    });

    // ---- mosaic ---------------------------------------------------------
    auto* mos = app.add_subcommand("mosaic", "sample a 3-channel image onto a CFA");
    struct {
        std::string in, out;
        std::string cfa = "rggb";
    } mo;
    mos->add_option("--in", mo.in, "input PNG (3 channels, linear raw)")->required();
    mos->add_option("-o,--out", mo.out, "output PNG (single channel, 16-bit)")->required();
    mos->add_option("--cfa", mo.cfa, "rggb, bggr, grbg or gbrg");
    mos->callback([&] {
        rf::set_thread_count(threads);
        const rf::ImagePlane img =
            rf::io::read_plane_png(mo.in, rf::ColorState::CameraRgbRaw);
        rf::io::write_plane_png(mo.out, rf::rawrender::mosaic(img, rf::cfa_from_string(mo.cfa)));
    });

    // ---- dataset build --------------------------------------------------
    auto* dataset_cmd = app.add_subcommand("dataset", "many-to-one dataset construction");
    dataset_cmd->require_subcommand(1);
    auto* dbuild = dataset_cmd->add_subcommand(
        "build", "render anchors plus photo-finish variants and a manifest");
    struct {
        std::vector<std::string> raws;
        std::vector<std::string> ids;
        std::string profile, out;
        int variants = 8;
        std::uint64_t seed = 0;
        int resize = 0;
        double cct = 0.0;
        std::string demosaic = "edge-aware";
    } db;
    dbuild->add_option("--raw", db.raws, "raw mosaic file(s), one per scene")->required();
    dbuild->add_option("--profile", db.profile, "camera profile (JSON or DNG)")->required();
    dbuild->add_option("-o,--out", db.out, "dataset root directory")->required();
    dbuild->add_option("--variants", db.variants, "variants per scene");
    dbuild->add_option("--seed", db.seed, "base seed");
    dbuild->add_option("--resize", db.resize, "center-crop + Lanczos resample to this size");
    auto* db_cct = dbuild->add_option("--cct", db.cct, "render temperature (K)");
    dbuild->add_option("--scene-ids", db.ids, "scene ids (default: file stems)");
    dbuild->add_option("--demosaic", db.demosaic, "bilinear or edge-aware");
    dbuild->callback([&] {
        rf::set_thread_count(threads);
        const rf::CameraProfile p = load_profile_any(db.profile);
        if (!db.ids.empty() && db.ids.size() != db.raws.size())
            throw rf::Error("--scene-ids count must match --raw count");
        std::vector<rf::dataset::SceneInput> scenes;
        for (std::size_t i = 0; i < db.raws.size(); ++i) {
            rf::dataset::SceneInput s;
            s.scene_id = i < db.ids.size()
                             ? db.ids[i]
                             : std::filesystem::path(db.raws[i]).stem().string();
            s.raw = rf::io::read_raw_image(db.raws[i]);
            s.profile = p;
            scenes.push_back(std::move(s));
        }
        rf::dataset::BuildOptions opts;
        opts.resize = db.resize;
        if (db_cct->count() > 0) opts.cct = db.cct;
        opts.demosaic = demosaic_from_string(db.demosaic);
        const auto records =
            rf::dataset::build_dataset(scenes, db.variants, db.seed, db.out, opts);
        std::size_t rows = 0;
        for (const auto& rec : records) {
            rows += rec.rows.size();
            std::cout << "scene " << rec.scene_id << ": " << rec.rows.size()
                      << " variants, clipped fraction " << rec.anchor_clipped_fraction
                      << "\n";
        }
        std::cout << "wrote " << (std::filesystem::path(db.out) / "manifest.jsonl").string()
                  << " (" << rows << " rows)\n";
    });

    // ---- variants render -------------------------------------------------
    auto* variants_cmd = app.add_subcommand("variants", "photo-finish variant rendering");
    variants_cmd->require_subcommand(1);
    auto* vrender = variants_cmd->add_subcommand(
        "render", "sample fresh variants or re-render them from a manifest");
    struct {
        std::string raw, profile, out, manifest, scene_id;
        int count = 4;
        std::uint64_t seed = 0;
        int resize = 0;
        double cct = 0.0;
        std::string demosaic = "edge-aware";
        bool no_tone = false;
    } vr;
    vrender->add_option("--raw", vr.raw, "raw mosaic of the scene")->required();
    vrender->add_option("--profile", vr.profile, "camera profile (JSON or DNG)")->required();
    vrender->add_option("-o,--out", vr.out, "output directory")->required();
    vrender->add_option("--manifest", vr.manifest,
                        "re-render rows from this manifest instead of sampling");
    vrender->add_option("--scene-id", vr.scene_id,
                        "scene id (seed salt when sampling, row filter with --manifest)");
    vrender->add_option("--count", vr.count, "number of variants to sample");
    vrender->add_option("--seed", vr.seed, "base seed for sampling");
    vrender->add_option("--resize", vr.resize, "center-crop + Lanczos resample to this size");
    auto* vr_cct = vrender->add_option("--cct", vr.cct, "render temperature (K)");
    vrender->add_option("--demosaic", vr.demosaic, "bilinear or edge-aware");
    vrender->add_flag("--no-tone-map", vr.no_tone, "skip the tone curve (diagnostics)");
    vrender->callback([&] {
        rf::set_thread_count(threads);
        const rf::io::RawImage raw = rf::io::read_raw_image(vr.raw);
        const rf::CameraProfile p = load_profile_any(vr.profile);
        const std::string scene_id =
            vr.scene_id.empty() ? std::filesystem::path(vr.raw).stem().string() : vr.scene_id;

        rf::photofinish::VariantOptions opts;
        opts.demosaic = demosaic_from_string(vr.demosaic);
        if (vr_cct->count() > 0) opts.cct = vr.cct;
        opts.apply_tone_map = !vr.no_tone;

        std::vector<rf::dataset::ManifestRow> rows;
        if (!vr.manifest.empty()) {
            for (const auto& row : rf::dataset::read_manifest(vr.manifest))
                if (vr.scene_id.empty() || row.scene_id == vr.scene_id) rows.push_back(row);
            if (rows.empty()) throw rf::Error("manifest has no rows for this scene");
        } else {
            if (vr.count < 1) throw rf::Error("--count must be at least 1");
            for (int k = 0; k < vr.count; ++k) {
                const std::uint64_t seed =
                    rf::split_seed(vr.seed, scene_id, static_cast<std::uint64_t>(k));
                rows.push_back(rf::dataset::ManifestRow{
                    scene_id, k, rf::photofinish::sample_params(seed)});
            }
        }

        std::filesystem::create_directories(vr.out);
        for (const auto& row : rows) {
            rf::ImagePlane img = rf::photofinish::render_variant(raw, p, row.params, opts);
            if (vr.resize > 0) img = rf::dataset::crop_resize(img, vr.resize);
            rf::io::write_plane_png(
                std::filesystem::path(vr.out) / variant_name(row.variant_index), img);
            std::cout << rf::dataset::manifest_row_to_json(row) << "\n";
        }
    });

    // ---- metrics ----------------------------------------------------------
    auto* metrics_cmd = app.add_subcommand("metrics", "image and cluster metrics");
    metrics_cmd->require_subcommand(1);

    struct {
        std::string a, b, out;
        std::string format = "json";
    } mp;
    const auto add_pair_metric = [&](const char* name, const char* help) {
        auto* sub = metrics_cmd->add_subcommand(name, help);
        sub->add_option("--a", mp.a, "first image")->required();
        sub->add_option("--b", mp.b, "second image")->required();
        sub->add_option("--format", mp.format, "json or csv");
        sub->add_option("-o,--out", mp.out, "output path (default: stdout)");
        return sub;
    };
    const auto run_pair_metric = [&](const std::string& name) {
        rf::set_thread_count(threads);
        const auto load = [](const std::string& path) {
            const rf::io::PngImage png = rf::io::read_png(path);
            // Metric values only depend on the [0, 1] samples; the tag just
            // has to be consistent between the two inputs.
            return rf::io::plane_from_png(png, rf::ColorState::EncodedSrgb);
        };
        const rf::ImagePlane a = load(mp.a);
        const rf::ImagePlane b = load(mp.b);
        const double value =
            name == "psnr" ? rf::metrics::psnr(a, b) : rf::metrics::ssim(a, b);
        if (mp.format == "json")
            emit(rf::metrics::metric_json(name, value), mp.out);
        else if (mp.format == "csv")
            emit(rf::metrics::metric_csv(name, value), mp.out);
        else
            throw rf::Error("unknown format \"" + mp.format + "\" (json, csv)");
    };
    add_pair_metric("psnr", "peak signal-to-noise ratio, range [0, 1]")
        ->callback([&] { run_pair_metric("psnr"); });
    add_pair_metric("ssim", "mean structural similarity, 11x11 Gaussian windows")
        ->callback([&] { run_pair_metric("ssim"); });

    auto* compact = metrics_cmd->add_subcommand(
        "compactness", "PCA cluster compactness over image feature vectors");
    struct {
        std::vector<std::string> inputs;
        int k = 2;
        int side = 32;
        std::string format = "json";
        std::string out;
    } mc;
    compact->add_option("inputs", mc.inputs, "input images (>= 2)")->required();
    compact->add_option("--k", mc.k, "number of principal directions");
    compact->add_option("--side", mc.side, "feature resample size");
    compact->add_option("--format", mc.format, "json or csv");
    compact->add_option("-o,--out", mc.out, "output path (default: stdout)");
    compact->callback([&] {
        rf::set_thread_count(threads);
        std::vector<std::vector<double>> features;
        for (const std::string& path : mc.inputs) {
            const rf::io::PngImage png = rf::io::read_png(path);
            features.push_back(rf::metrics::image_features(
                rf::io::plane_from_png(png, rf::ColorState::EncodedSrgb), mc.side));
        }
        const rf::metrics::CompactnessReport rep =
            rf::metrics::pca_compactness(features, mc.k);
        if (mc.format == "json")
            emit(rf::metrics::compactness_json(rep), mc.out);
        else if (mc.format == "csv")
            emit(rf::metrics::compactness_csv(rep), mc.out);
        else
            throw rf::Error("unknown format \"" + mc.format + "\" (json, csv)");
    });

    // ---- flow demo --------------------------------------------------------
    auto* flow_cmd = app.add_subcommand("flow", "rectified-flow bench");
    flow_cmd->require_subcommand(1);
    auto* fdemo = flow_cmd->add_subcommand(
        "demo", "oracle Euler recovery plus a linear least-squares fit");
    struct {
        int dim = 8;
        int cond_dim = 3;
        int pairs = 32;
        int samples = 8;
        std::uint64_t seed = 7;
        std::string steps = "1,4,32";
        std::string out;
    } fd;
    fdemo->add_option("--dim", fd.dim, "data dimension");
    fdemo->add_option("--cond-dim", fd.cond_dim, "conditioning dimension");
    fdemo->add_option("--pairs", fd.pairs, "number of (cond, z) pairs");
    fdemo->add_option("--samples", fd.samples, "training episodes per pair");
    fdemo->add_option("--seed", fd.seed, "seed");
    fdemo->add_option("--steps", fd.steps, "Euler step counts, comma separated");
    fdemo->add_option("-o,--out", fd.out, "output path (default: stdout)");
    fdemo->callback([&] {
        rf::set_thread_count(threads);
        if (fd.dim < 1 || fd.cond_dim < 0 || fd.pairs < 1 || fd.samples < 1)
            throw rf::Error("flow demo: dimensions and counts must be positive");

        // Smooth synthetic data: z = tanh(A * cond) with a seeded random A.
        rf::SplitMix64 rng(fd.seed);
        std::vector<double> a(static_cast<std::size_t>(fd.dim) *
                              static_cast<std::size_t>(std::max(fd.cond_dim, 1)));
        for (double& v : a) v = rng.normal(0.0, 1.0);
        std::vector<std::pair<rf::flow::Vec, rf::flow::Vec>> pairs;
        for (int i = 0; i < fd.pairs; ++i) {
            rf::flow::Vec cond(static_cast<std::size_t>(fd.cond_dim));
            for (double& v : cond) v = rng.normal(0.0, 1.0);
            rf::flow::Vec z(static_cast<std::size_t>(fd.dim));
            for (int o = 0; o < fd.dim; ++o) {
                double acc = 0.0;
                for (int c = 0; c < fd.cond_dim; ++c)
                    acc += a[static_cast<std::size_t>(o) *
                                 static_cast<std::size_t>(std::max(fd.cond_dim, 1)) +
                             static_cast<std::size_t>(c)] *
                           cond[static_cast<std::size_t>(c)];
                z[static_cast<std::size_t>(o)] = std::tanh(acc);
            }
            pairs.emplace_back(std::move(cond), std::move(z));
        }

        std::string report = "steps,max_recovery_error\n";
        const auto& [cond0, z0] = pairs.front();
        rf::flow::Vec eps(static_cast<std::size_t>(fd.dim));
        for (double& v : eps) v = rng.normal(0.0, 1.0);
        const rf::flow::OraclePredictor oracle(z0, eps);
        for (int steps : parse_int_list(fd.steps, "--steps")) {
            const rf::flow::Vec z1 = rf::flow::forward_interpolate(z0, eps, 1.0);
            const rf::flow::Vec back = rf::flow::euler_sample(oracle, z1, cond0, steps);
            double err = 0.0;
            for (std::size_t i = 0; i < back.size(); ++i)
                err = std::max(err, std::abs(back[i] - z0[i]));
            report += std::to_string(steps) + "," + rf::metrics::value_to_json(err) + "\n";
        }

        const std::vector<rf::flow::Episode> episodes =
            rf::flow::make_training_episodes(pairs, fd.samples, fd.seed);
        struct ZeroPredictor final : rf::flow::VelocityPredictor {
            rf::flow::Vec predict(const rf::flow::Vec& z_t, double, const rf::flow::Vec&)
                const override {
                return rf::flow::Vec(z_t.size(), 0.0);
            }
        } zero;
        const rf::flow::LinearPredictor fitted = rf::flow::fit_linear_predictor(
            std::span<const rf::flow::Episode>(episodes));
        report += "\npredictor,denoise_loss\n";
        report += "zero," +
                  rf::metrics::value_to_json(rf::flow::denoise_loss(zero, episodes)) + "\n";
        report += "fitted," +
                  rf::metrics::value_to_json(rf::flow::denoise_loss(fitted, episodes)) + "\n";
        emit(report, fd.out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const rf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
