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

// End-to-end checks of the installed command line: exit codes, output
// formats, and byte equality against the library called in-process. The
// binary path comes in through RAWFORGE_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rawforge/dataset.hpp"
#include "rawforge/dng.hpp"
#include "rawforge/image.hpp"
#include "rawforge/image_io.hpp"
#include "rawforge/isp.hpp"
#include "rawforge/rawrender.hpp"
#include "rawforge/rng.hpp"

#include "common/helpers.hpp"

namespace fs = std::filesystem;
namespace rf = rawforge;

namespace {

const std::string kCli = RAWFORGE_CLI_PATH;

int cli(std::vector<std::string> args, std::string* output = nullptr) {
    args.insert(args.begin(), kCli);
    return rftest::run_command(args, output);
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    return rf::io::read_file(a) == rf::io::read_file(b);
}

// Shared fixture material: a profile JSON and a raw mosaic PGM on disk.
struct CliScene {
    fs::path dir;
    fs::path profile_path;
    fs::path raw_path;
    rf::CameraProfile profile;
    rf::io::RawImage raw;

    explicit CliScene(const std::string& label, std::uint64_t seed = 41, int side = 48)
        : dir(rftest::scratch_dir(label)) {
        profile = rftest::fixture_profile();
        profile_path = dir / "profile.json";
        rf::dng::save_profile(profile_path, profile);
        raw = rftest::random_raw(side, side, seed);
        raw_path = dir / "scene.pgm";
        rf::io::write_pgm(raw_path, raw);
    }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("version, help and usage errors") {
    std::string out;
    CHECK(cli({"--version"}, &out) == 0);
    CHECK(out.find("rawforge 0.1.0") != std::string::npos);

    CHECK(cli({"--help"}, &out) == 0);
    CHECK(out.find("Usage") != std::string::npos);

    CHECK(cli({"frobnicate"}, &out) == 1);
    CHECK(cli({}, &out) == 1);              // a subcommand is required
    CHECK(cli({"isp", "run"}, &out) == 1);  // missing required options
}

TEST_CASE("data errors exit with code 2") {
    const CliScene sc("cli-errors");
    std::string out;

    CHECK(cli({"profile", "extract", (sc.dir / "missing.dng").string()}, &out) == 2);
    CHECK(out.find("error:") != std::string::npos);

    CHECK(cli({"isp", "run", "--raw", sc.raw_path.string(), "--profile",
               sc.profile_path.string(), "-o", (sc.dir / "x.png").string(), "--wb", "1,2"},
              &out) == 2);
    CHECK(out.find("exactly 3") != std::string::npos);

    CHECK(cli({"isp", "run", "--raw", sc.raw_path.string(), "--profile",
               sc.profile_path.string(), "-o", (sc.dir / "x.png").string(), "--demosaic",
               "cubic"},
              &out) == 2);
    CHECK(out.find("unknown demosaic") != std::string::npos);

    // The format check fires after the inputs load, so feed real images.
    const rf::ImagePlane img =
        rftest::random_plane(16, 16, 3, rf::ColorState::EncodedSrgb, 5);
    rf::io::write_plane_png(sc.dir / "a.png", img);
    CHECK(cli({"metrics", "psnr", "--a", (sc.dir / "a.png").string(), "--b",
               (sc.dir / "a.png").string(), "--format", "yaml"},
              &out) == 2);
    CHECK(out.find("unknown format") != std::string::npos);

    fs::remove_all(sc.dir);
}

TEST_CASE("profile extract reproduces the parser's JSON") {
    const fs::path dir = rftest::scratch_dir("cli-extract");
    const std::vector<std::uint8_t> dng = rftest::make_fixture_dng(false);
    rf::io::atomic_write(dir / "fixture.dng", dng.data(), dng.size());

    const std::string want = rf::dng::profile_to_json(rftest::fixture_dng_profile());

    std::string out;
    REQUIRE(cli({"profile", "extract", (dir / "fixture.dng").string()}, &out) == 0);
    CHECK(out == want);

    REQUIRE(cli({"profile", "extract", (dir / "fixture.dng").string(), "-o",
                 (dir / "profile.json").string()},
                &out) == 0);
    const std::vector<std::uint8_t> bytes = rf::io::read_file(dir / "profile.json");
    CHECK(std::string(bytes.begin(), bytes.end()) == want);

    // The emitted JSON loads back into an identical profile.
    const rf::CameraProfile p = rf::dng::load_profile(dir / "profile.json");
    CHECK(rftest::compare_profiles(p, rftest::fixture_dng_profile()).empty());

    fs::remove_all(dir);
}

TEST_CASE("isp run matches the library renderer byte for byte") {
    const CliScene sc("cli-isp");

    // Default flags resolve to gamma-terminal, edge-aware, AsShotNeutral WB.
    REQUIRE(cli({"isp", "run", "--raw", sc.raw_path.string(), "--profile",
                 sc.profile_path.string(), "-o", (sc.dir / "cli.png").string()}) == 0);
    rf::isp::PipelineConfig cfg;
    cfg.terminal = rf::isp::Stage::Gamma;
    cfg.demosaic = rf::isp::DemosaicMethod::EdgeAware;
    rf::io::write_plane_png(sc.dir / "ref.png", rf::isp::run_pipeline(sc.raw, sc.profile, cfg));
    CHECK(same_bytes(sc.dir / "cli.png", sc.dir / "ref.png"));

    const rf::io::PngImage gamma = rf::io::read_png(sc.dir / "cli.png");
    CHECK(gamma.channels == 3);
    CHECK(gamma.bit_depth == 8); // encoded output quantizes to 8 bits

    // Linear terminals write 16-bit planes.
    REQUIRE(cli({"isp", "run", "--raw", sc.raw_path.string(), "--profile",
                 sc.profile_path.string(), "-o", (sc.dir / "xyz.png").string(), "--stage",
                 "xyz"}) == 0);
    const rf::io::PngImage xyz = rf::io::read_png(sc.dir / "xyz.png");
    CHECK(xyz.channels == 3);
    CHECK(xyz.bit_depth == 16);

    REQUIRE(cli({"isp", "run", "--raw", sc.raw_path.string(), "--profile",
                 sc.profile_path.string(), "-o", (sc.dir / "norm.png").string(), "--stage",
                 "normalize"}) == 0);
    const rf::io::PngImage norm = rf::io::read_png(sc.dir / "norm.png");
    CHECK(norm.channels == 1);
    CHECK(norm.bit_depth == 16);

    fs::remove_all(sc.dir);
}

TEST_CASE("demosaic subcommand equals the library call") {
    const fs::path dir = rftest::scratch_dir("cli-demosaic");
    rf::io::RawImage mosaic;
    mosaic.width = 32;
    mosaic.height = 32;
    rf::SplitMix64 rng(17);
    mosaic.data.resize(32 * 32);
    for (auto& v : mosaic.data) v = static_cast<std::uint16_t>(rng.next() % 65536);
    rf::io::write_pgm(dir / "mosaic.pgm", mosaic);

    REQUIRE(cli({"demosaic", "--in", (dir / "mosaic.pgm").string(), "-o",
                 (dir / "cli.png").string(), "--cfa", "grbg", "--method", "bilinear"}) == 0);

    rf::ImagePlane m = rf::ImagePlane::make(32, 32, 1, rf::ColorState::MosaicWB);
    for (std::size_t i = 0; i < mosaic.data.size(); ++i)
        m.data[i] = static_cast<float>(mosaic.data[i]) / 65535.0f;
    rf::io::write_plane_png(dir / "ref.png",
                            rf::isp::demosaic_bilinear(m, rf::CfaPattern::GRBG));
    CHECK(same_bytes(dir / "cli.png", dir / "ref.png"));

    const rf::io::PngImage png = rf::io::read_png(dir / "cli.png");
    CHECK(png.channels == 3);
    CHECK(png.bit_depth == 16);

    fs::remove_all(dir);
}

TEST_CASE("xyz2raw matches render_raw, including noise and mosaic output") {
    const CliScene sc("cli-xyz2raw");

    // Reuse the forward ISP to get a plausible XYZ plane on disk.
    rf::isp::PipelineConfig cfg;
    cfg.terminal = rf::isp::Stage::Xyz;
    rf::io::write_plane_png(sc.dir / "xyz.png", rf::isp::run_pipeline(sc.raw, sc.profile, cfg));
    const rf::ImagePlane xyz = rf::io::read_plane_png(sc.dir / "xyz.png", rf::ColorState::Xyz);

    REQUIRE(cli({"xyz2raw", "--xyz", (sc.dir / "xyz.png").string(), "--profile",
                 sc.profile_path.string(), "-o", (sc.dir / "cli_rgb.png").string(), "--cct",
                 "5000"}) == 0);
    rf::io::write_plane_png(sc.dir / "ref_rgb.png",
                            rf::rawrender::render_raw(xyz, sc.profile, 5000.0, {}));
    CHECK(same_bytes(sc.dir / "cli_rgb.png", sc.dir / "ref_rgb.png"));

    REQUIRE(cli({"xyz2raw", "--xyz", (sc.dir / "xyz.png").string(), "--profile",
                 sc.profile_path.string(), "-o", (sc.dir / "cli_mosaic.png").string(),
                 "--cct", "5000", "--mosaic", "--noise-strength", "0.5", "--noise-seed",
                 "7"}) == 0);
    rf::rawrender::RenderRawOptions opts;
    rf::rawrender::NoiseSpec noise;
    noise.alpha = sc.profile.noise_alpha;
    noise.beta = sc.profile.noise_beta;
    noise.strength = 0.5;
    noise.seed = 7;
    opts.noise = noise;
    opts.cfa = sc.profile.cfa;
    rf::io::write_plane_png(sc.dir / "ref_mosaic.png",
                            rf::rawrender::render_raw(xyz, sc.profile, 5000.0, opts));
    CHECK(same_bytes(sc.dir / "cli_mosaic.png", sc.dir / "ref_mosaic.png"));

    const rf::io::PngImage png = rf::io::read_png(sc.dir / "cli_mosaic.png");
    CHECK(png.channels == 1);
    CHECK(png.bit_depth == 16);

    fs::remove_all(sc.dir);
}

TEST_CASE("dataset build is deterministic across runs and thread counts") {
    const fs::path dir = rftest::scratch_dir("cli-dataset");
    const rf::CameraProfile profile = rftest::fixture_profile();
    rf::dng::save_profile(dir / "profile.json", profile);
    rf::io::write_pgm(dir / "alpha.pgm", rftest::random_raw(48, 48, 101));
    rf::io::write_pgm(dir / "beta.pgm", rftest::random_raw(48, 48, 202));

    const auto build = [&](const std::string& out_dir,
                           const std::vector<std::string>& extra) {
        std::vector<std::string> args{"dataset",    "build",
                                      "--raw",      (dir / "alpha.pgm").string(),
                                      "--raw",      (dir / "beta.pgm").string(),
                                      "--profile",  (dir / "profile.json").string(),
                                      "-o",         (dir / out_dir).string(),
                                      "--variants", "3",
                                      "--seed",     "99",
                                      "--resize",   "16"};
        args.insert(args.end(), extra.begin(), extra.end());
        std::string out;
        const int code = cli(args, &out);
        CHECK(out.find("wrote") != std::string::npos);
        CHECK(out.find("(6 rows)") != std::string::npos);
        return code;
    };

    REQUIRE(build("run_a", {}) == 0);
    REQUIRE(build("run_b", {}) == 0);
    REQUIRE(build("run_c", {"--threads", "2"}) == 0);

    const std::uint64_t ha = rftest::tree_hash(dir / "run_a");
    CHECK(ha == rftest::tree_hash(dir / "run_b"));
    CHECK(ha == rftest::tree_hash(dir / "run_c"));

    const auto rows = rf::dataset::read_manifest(dir / "run_a" / "manifest.jsonl");
    CHECK(rows.size() == 6);

    fs::remove_all(dir);
}

TEST_CASE("variants render re-derives dataset variants from the manifest") {
    const fs::path dir = rftest::scratch_dir("cli-variants");
    const rf::CameraProfile profile = rftest::fixture_profile();
    rf::dng::save_profile(dir / "profile.json", profile);
    rf::io::write_pgm(dir / "alpha.pgm", rftest::random_raw(48, 48, 303));

    REQUIRE(cli({"dataset", "build", "--raw", (dir / "alpha.pgm").string(), "--profile",
                 (dir / "profile.json").string(), "-o", (dir / "set").string(),
                 "--variants", "3", "--seed", "5", "--resize", "16"}) == 0);

    std::string out;
    REQUIRE(cli({"variants", "render", "--raw", (dir / "alpha.pgm").string(), "--profile",
                 (dir / "profile.json").string(), "-o", (dir / "rere").string(),
                 "--manifest", (dir / "set" / "manifest.jsonl").string(), "--scene-id",
                 "alpha", "--resize", "16"},
                &out) == 0);

    for (int k = 0; k < 3; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "variant_%03d.png", k);
        CHECK(same_bytes(dir / "set" / "alpha" / name, dir / "rere" / name));
    }
    // One manifest row echoed per rendered variant.
    CHECK(std::count(out.begin(), out.end(), '\n') == 3);
    CHECK(out.find("\"scene_id\":\"alpha\"") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("metrics subcommands emit the documented formats") {
    const fs::path dir = rftest::scratch_dir("cli-metrics");
    const rf::ImagePlane a = rftest::random_plane(16, 16, 3, rf::ColorState::EncodedSrgb, 9);
    rf::ImagePlane b = a;
    b.at(3, 3, 1) = 0.25f;
    rf::io::write_plane_png(dir / "a.png", a);
    rf::io::write_plane_png(dir / "b.png", b);

    std::string out;
    REQUIRE(cli({"metrics", "psnr", "--a", (dir / "a.png").string(), "--b",
                 (dir / "a.png").string()},
                &out) == 0);
    CHECK(out == "{\"metric\":\"psnr\",\"value\":\"inf\"}\n");

    REQUIRE(cli({"metrics", "ssim", "--a", (dir / "a.png").string(), "--b",
                 (dir / "a.png").string()},
                &out) == 0);
    CHECK(out == "{\"metric\":\"ssim\",\"value\":1.0}\n");

    REQUIRE(cli({"metrics", "psnr", "--a", (dir / "a.png").string(), "--b",
                 (dir / "a.png").string(), "--format", "csv"},
                &out) == 0);
    CHECK(out == "metric,value\npsnr,inf\n");

    REQUIRE(cli({"metrics", "psnr", "--a", (dir / "a.png").string(), "--b",
                 (dir / "b.png").string(), "-o", (dir / "psnr.json").string()},
                &out) == 0);
    const std::vector<std::uint8_t> bytes = rf::io::read_file(dir / "psnr.json");
    const nlohmann::json j = nlohmann::json::parse(std::string(bytes.begin(), bytes.end()));
    CHECK(j.at("metric") == "psnr");
    CHECK(j.at("value").get<double>() > 0.0);

    // Cluster compactness over three almost-identical frames.
    rf::ImagePlane c = a;
    c.at(8, 8, 0) = 0.75f;
    rf::io::write_plane_png(dir / "c.png", c);
    REQUIRE(cli({"metrics", "compactness", (dir / "a.png").string(),
                 (dir / "b.png").string(), (dir / "c.png").string(), "--k", "2", "--side",
                 "8"},
                &out) == 0);
    const nlohmann::json rep = nlohmann::json::parse(out);
    CHECK(rep.at("metric") == "pca_compactness");
    CHECK(rep.at("k") == 2);
    CHECK(rep.at("n_points") == 3);
    CHECK(rep.at("dim") == 8 * 8 * 3);
    CHECK(rep.at("mean_dist").get<double>() >= 0.0);
    CHECK(rep.at("eigenvalues").size() == 2);

    fs::remove_all(dir);
}

TEST_CASE("flow demo reports near-exact oracle recovery and a fitted win") {
    const fs::path dir = rftest::scratch_dir("cli-flow");
    REQUIRE(cli({"flow", "demo", "--dim", "6", "--cond-dim", "2", "--pairs", "16",
                 "--samples", "4", "--steps", "1,4,32", "-o",
                 (dir / "report.csv").string()}) == 0);

    const std::vector<std::uint8_t> bytes = rf::io::read_file(dir / "report.csv");
    const std::string report(bytes.begin(), bytes.end());
    REQUIRE(report.rfind("steps,max_recovery_error\n", 0) == 0);

    double zero_loss = -1.0, fitted_loss = -1.0;
    std::istringstream lines(report);
    std::string line;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        const std::string key = line.substr(0, comma);
        const std::string val = line.substr(comma + 1);
        if (key == "1" || key == "4" || key == "32")
            CHECK(std::stod(val) < 1e-6);
        else if (key == "zero")
            zero_loss = std::stod(val);
        else if (key == "fitted")
            fitted_loss = std::stod(val);
    }
    REQUIRE(zero_loss >= 0.0);
    REQUIRE(fitted_loss >= 0.0);
    CHECK(fitted_loss <= zero_loss);

    fs::remove_all(dir);
}

} // TEST_SUITE
