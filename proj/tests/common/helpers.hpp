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

// Shared test fixtures: a hand-built camera profile, an independent TIFF
// writer (the parser under test never touches this code), synthetic images,
// long-double oracles and a tiny subprocess runner.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "rawforge/color.hpp"
#include "rawforge/dng.hpp"
#include "rawforge/image.hpp"
#include "rawforge/image_io.hpp"
#include "rawforge/mat3.hpp"
#include "rawforge/rng.hpp"

namespace rftest {

// ---------------------------------------------------------------------------
// Fixture camera: values chosen as exact rationals n/10000 so the TIFF
// round trip can be compared bit for bit.

inline const std::array<int, 9> kColorMatrix1Num = {9870,  -2710, -610, -4760, 12160,
                                                    2930,  -580,  1340, 6100};
inline const std::array<int, 9> kColorMatrix2Num = {8120,  -2190, -520, -4410, 11860,
                                                    2860,  -810,  1690, 5260};
inline const std::array<int, 9> kForwardMatrix1Num = {4500, 3500, 1642, 2200, 7000,
                                                      800,  200,  1500, 6549};
inline const std::array<int, 9> kForwardMatrix2Num = {5100, 3000, 1542, 2600, 6600,
                                                      800,  100,  1300, 6849};
inline const std::array<unsigned, 3> kNeutralNum = {4731, 10000, 6476};

inline rawforge::Mat3 mat_from_num(const std::array<int, 9>& num) {
    rawforge::Mat3 m;
    for (int i = 0; i < 9; ++i)
        m.m[static_cast<std::size_t>(i)] =
            static_cast<double>(num[static_cast<std::size_t>(i)]) / 10000.0;
    return m;
}

/// The profile the fixture DNG encodes, built through the same arithmetic the
/// parser uses (num / denom in double), so equality is exact.
inline rawforge::CameraProfile fixture_dng_profile() {
    rawforge::CameraProfile p;
    p.name = "Fixture Mk II";
    p.color_matrix_1 = mat_from_num(kColorMatrix1Num);
    p.color_matrix_2 = mat_from_num(kColorMatrix2Num);
    p.forward_matrix_1 = mat_from_num(kForwardMatrix1Num);
    p.forward_matrix_2 = mat_from_num(kForwardMatrix2Num);
    p.calib_illum_1_kelvin = 2850.0; // EXIF code 17 (standard light A)
    p.calib_illum_2_kelvin = 6504.0; // EXIF code 21 (D65)
    p.as_shot_neutral = rawforge::Vec3{kNeutralNum[0] / 10000.0, kNeutralNum[1] / 10000.0,
                                       kNeutralNum[2] / 10000.0};
    p.black_level = 64.0;
    p.white_level = 1023.0;
    p.cfa = rawforge::CfaPattern::RGGB;
    return p;
}

/// Same camera with noise coefficients, for render tests.
inline rawforge::CameraProfile fixture_profile() {
    rawforge::CameraProfile p = fixture_dng_profile();
    p.noise_alpha = rawforge::Vec3{0.01, 0.009, 0.011};
    p.noise_beta = rawforge::Vec3{1e-4, 9e-5, 1.1e-4};
    p.noise_calibrated = true;
    return p;
}

/// A camera whose render and pipeline matrices agree exactly: both color
/// matrices are the inverse of the shared forward matrix, and AsShotNeutral
/// equals the illuminant gains at `cct`, so the pipeline's white balance
/// undoes apply_illuminant. 16-bit levels keep quantization far below the
/// round-trip tolerance.
inline rawforge::CameraProfile roundtrip_profile(double cct) {
    rawforge::CameraProfile p;
    p.name = "roundtrip";
    p.forward_matrix_1 = mat_from_num(kForwardMatrix1Num);
    p.forward_matrix_2 = p.forward_matrix_1;
    p.color_matrix_1 = rawforge::mat3_invert(p.forward_matrix_1);
    p.color_matrix_2 = p.color_matrix_1;
    p.calib_illum_1_kelvin = 2850.0;
    p.calib_illum_2_kelvin = 6504.0;
    p.black_level = 0.0;
    p.white_level = 65535.0;
    p.cfa = rawforge::CfaPattern::RGGB;

    const rawforge::Vec3 white = rawforge::color::cct_to_xyz(cct);
    const double g = rawforge::color::cct_weight(cct, p.calib_illum_1_kelvin,
                                                 p.calib_illum_2_kelvin);
    const rawforge::Mat3 cm =
        rawforge::interpolate_mat3(g, p.color_matrix_1, p.color_matrix_2);
    const rawforge::Vec3 l = cm * white;
    p.as_shot_neutral = rawforge::Vec3{l.x / l.y, 1.0, l.z / l.y};
    return p;
}

// ---------------------------------------------------------------------------
// Independent TIFF/DNG writer. Deliberately separate from the parser: a bug
// shared between writer and reader would hide itself if one were derived
// from the other.

class TiffFixtureWriter {
public:
    explicit TiffFixtureWriter(bool big_endian) : be_(big_endian) {}

    struct Entry {
        std::uint16_t tag = 0;
        std::uint16_t type = 0;
        std::uint32_t count = 0;
        std::vector<std::uint8_t> payload; // already byte-ordered
    };

    void u16(std::vector<std::uint8_t>& v, std::uint32_t x) const {
        if (be_) {
            v.push_back(static_cast<std::uint8_t>(x >> 8));
            v.push_back(static_cast<std::uint8_t>(x));
        } else {
            v.push_back(static_cast<std::uint8_t>(x));
            v.push_back(static_cast<std::uint8_t>(x >> 8));
        }
    }
    void u32(std::vector<std::uint8_t>& v, std::uint32_t x) const {
        if (be_) {
            v.push_back(static_cast<std::uint8_t>(x >> 24));
            v.push_back(static_cast<std::uint8_t>(x >> 16));
            v.push_back(static_cast<std::uint8_t>(x >> 8));
            v.push_back(static_cast<std::uint8_t>(x));
        } else {
            v.push_back(static_cast<std::uint8_t>(x));
            v.push_back(static_cast<std::uint8_t>(x >> 8));
            v.push_back(static_cast<std::uint8_t>(x >> 16));
            v.push_back(static_cast<std::uint8_t>(x >> 24));
        }
    }
    void patch_u32(std::size_t pos, std::uint32_t x) {
        std::vector<std::uint8_t> tmp;
        u32(tmp, x);
        std::copy(tmp.begin(), tmp.end(), out_.begin() + static_cast<std::ptrdiff_t>(pos));
    }

    Entry shorts(std::uint16_t tag, const std::vector<std::uint32_t>& vals) const {
        Entry e{tag, 3, static_cast<std::uint32_t>(vals.size()), {}};
        for (std::uint32_t v : vals) u16(e.payload, v);
        return e;
    }
    Entry longs(std::uint16_t tag, const std::vector<std::uint32_t>& vals) const {
        Entry e{tag, 4, static_cast<std::uint32_t>(vals.size()), {}};
        for (std::uint32_t v : vals) u32(e.payload, v);
        return e;
    }
    Entry bytes(std::uint16_t tag, const std::vector<std::uint8_t>& vals) const {
        return Entry{tag, 1, static_cast<std::uint32_t>(vals.size()), vals};
    }
    Entry ascii(std::uint16_t tag, const std::string& s) const {
        Entry e{tag, 2, static_cast<std::uint32_t>(s.size() + 1), {}};
        e.payload.assign(s.begin(), s.end());
        e.payload.push_back(0);
        return e;
    }
    Entry rationals(std::uint16_t tag, const std::vector<std::uint32_t>& nums,
                    std::uint32_t denom) const {
        Entry e{tag, 5, static_cast<std::uint32_t>(nums.size()), {}};
        for (std::uint32_t n : nums) {
            u32(e.payload, n);
            u32(e.payload, denom);
        }
        return e;
    }
    Entry srationals(std::uint16_t tag, const std::array<int, 9>& nums,
                     std::int32_t denom) const {
        Entry e{tag, 10, 9, {}};
        for (int n : nums) {
            u32(e.payload, static_cast<std::uint32_t>(n));
            u32(e.payload, static_cast<std::uint32_t>(denom));
        }
        return e;
    }

    void header() {
        out_.clear();
        out_.push_back(be_ ? 'M' : 'I');
        out_.push_back(be_ ? 'M' : 'I');
        u16(out_, 42);
        ifd0_offset_pos_ = out_.size();
        u32(out_, 0); // patched by set_ifd0
    }

    /// Writes one IFD (sorted entries, external payloads appended after the
    /// table) and returns its offset.
    std::uint32_t write_ifd(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.tag < b.tag; });
        if (out_.size() % 2) out_.push_back(0);
        const std::uint32_t ifd_off = static_cast<std::uint32_t>(out_.size());
        u16(out_, static_cast<std::uint32_t>(entries.size()));
        std::vector<std::size_t> patch_pos(entries.size(), 0);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const Entry& e = entries[i];
            u16(out_, e.tag);
            u16(out_, e.type);
            u32(out_, e.count);
            if (e.payload.size() <= 4) {
                out_.insert(out_.end(), e.payload.begin(), e.payload.end());
                for (std::size_t k = e.payload.size(); k < 4; ++k) out_.push_back(0);
            } else {
                patch_pos[i] = out_.size();
                u32(out_, 0);
            }
        }
        u32(out_, 0); // next IFD
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (patch_pos[i] == 0) continue;
            if (out_.size() % 2) out_.push_back(0);
            patch_u32(patch_pos[i], static_cast<std::uint32_t>(out_.size()));
            out_.insert(out_.end(), entries[i].payload.begin(), entries[i].payload.end());
        }
        return ifd_off;
    }

    void set_ifd0(std::uint32_t off) { patch_u32(ifd0_offset_pos_, off); }

    const std::vector<std::uint8_t>& data() const { return out_; }

private:
    bool be_;
    std::vector<std::uint8_t> out_;
    std::size_t ifd0_offset_pos_ = 0;
};

/// The calibration tags of fixture_dng_profile() as one entry list.
inline std::vector<TiffFixtureWriter::Entry> fixture_entries(const TiffFixtureWriter& w) {
    return {
        w.shorts(0x828D, {2, 2}),          // CFARepeatPatternDim
        w.bytes(0x828E, {0, 1, 1, 2}),     // CFAPattern RGGB
        w.ascii(0xC614, "Fixture Mk II"),  // UniqueCameraModel
        w.rationals(0xC61A, {64}, 1),      // BlackLevel
        w.longs(0xC61D, {1023}),           // WhiteLevel
        w.srationals(0xC621, kColorMatrix1Num, 10000),
        w.srationals(0xC622, kColorMatrix2Num, 10000),
        w.rationals(0xC628, {kNeutralNum[0], kNeutralNum[1], kNeutralNum[2]}, 10000),
        w.shorts(0xC65A, {17}), // CalibrationIlluminant1: standard light A
        w.shorts(0xC65B, {21}), // CalibrationIlluminant2: D65
        w.srationals(0xC714, kForwardMatrix1Num, 10000),
        w.srationals(0xC715, kForwardMatrix2Num, 10000),
    };
}

/// Flat layout: every tag in IFD0.
inline std::vector<std::uint8_t> make_fixture_dng(bool big_endian) {
    TiffFixtureWriter w(big_endian);
    w.header();
    w.set_ifd0(w.write_ifd(fixture_entries(w)));
    return w.data();
}

/// SubIFD layout: IFD0 carries only the SubIFDs pointer plus a WhiteLevel of
/// 1023; the SubIFD carries everything including a conflicting WhiteLevel of
/// 2047. First occurrence (IFD0) must win.
inline std::vector<std::uint8_t> make_fixture_dng_subifd(bool big_endian) {
    TiffFixtureWriter w(big_endian);
    w.header();
    std::vector<TiffFixtureWriter::Entry> sub = fixture_entries(w);
    for (auto& e : sub)
        if (e.tag == 0xC61D) e = w.longs(0xC61D, {2047});
    const std::uint32_t sub_off = w.write_ifd(sub);
    const std::uint32_t ifd0_off =
        w.write_ifd({w.longs(0x014A, {sub_off}), w.longs(0xC61D, {1023})});
    w.set_ifd0(ifd0_off);
    return w.data();
}

inline std::string compare_profiles(const rawforge::CameraProfile& a,
                                    const rawforge::CameraProfile& b) {
    std::string diff;
    const auto mat = [&](const char* name, const rawforge::Mat3& x, const rawforge::Mat3& y) {
        for (int i = 0; i < 9; ++i)
            if (x.m[static_cast<std::size_t>(i)] != y.m[static_cast<std::size_t>(i)])
                diff += std::string(name) + "[" + std::to_string(i) + "] ";
    };
    if (a.name != b.name) diff += "name ";
    mat("color_matrix_1", a.color_matrix_1, b.color_matrix_1);
    mat("color_matrix_2", a.color_matrix_2, b.color_matrix_2);
    mat("forward_matrix_1", a.forward_matrix_1, b.forward_matrix_1);
    mat("forward_matrix_2", a.forward_matrix_2, b.forward_matrix_2);
    if (a.calib_illum_1_kelvin != b.calib_illum_1_kelvin) diff += "calib_illum_1 ";
    if (a.calib_illum_2_kelvin != b.calib_illum_2_kelvin) diff += "calib_illum_2 ";
    if (a.as_shot_neutral.x != b.as_shot_neutral.x || a.as_shot_neutral.y != b.as_shot_neutral.y ||
        a.as_shot_neutral.z != b.as_shot_neutral.z)
        diff += "as_shot_neutral ";
    if (a.black_level != b.black_level) diff += "black_level ";
    if (a.white_level != b.white_level) diff += "white_level ";
    if (a.cfa != b.cfa) diff += "cfa ";
    return diff;
}

// ---------------------------------------------------------------------------
// Synthetic images.

inline rawforge::ImagePlane constant_plane(int w, int h, int ch, rawforge::ColorState state,
                                           float value) {
    rawforge::ImagePlane img = rawforge::ImagePlane::make(w, h, ch, state);
    std::fill(img.data.begin(), img.data.end(), value);
    return img;
}

inline rawforge::ImagePlane random_plane(int w, int h, int ch, rawforge::ColorState state,
                                         std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
    rawforge::ImagePlane img = rawforge::ImagePlane::make(w, h, ch, state);
    rawforge::SplitMix64 rng(seed);
    for (float& v : img.data)
        v = static_cast<float>(rng.uniform(static_cast<double>(lo), static_cast<double>(hi)));
    return img;
}

/// Smooth in-gamut camera-RGB test card: slow sinusoids per channel, values
/// inside [lo, hi]. Smoothness keeps demosaic error far below the round-trip
/// tolerances.
inline rawforge::ImagePlane smooth_camera_rgb(int w, int h, float lo = 0.05f,
                                              float hi = 0.60f) {
    rawforge::ImagePlane img =
        rawforge::ImagePlane::make(w, h, 3, rawforge::ColorState::CameraRgbWB);
    const double mid = 0.5 * (static_cast<double>(lo) + static_cast<double>(hi));
    const double amp = 0.5 * (static_cast<double>(hi) - static_cast<double>(lo));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = 2.0 * 3.14159265358979323846 * x / w;
            const double v = 2.0 * 3.14159265358979323846 * y / h;
            img.at(x, y, 0) = static_cast<float>(mid + amp * std::sin(u) * std::cos(v));
            img.at(x, y, 1) = static_cast<float>(mid + amp * std::cos(0.5 * u) * std::sin(v));
            img.at(x, y, 2) = static_cast<float>(mid + amp * std::sin(0.5 * u + 1.0) * 0.8);
        }
    return img;
}

/// Mosaic plane (values in [0, 1]) -> integer raw at the given levels.
inline rawforge::io::RawImage raw_from_mosaic(const rawforge::ImagePlane& mosaic, double black,
                                              double white) {
    rawforge::io::RawImage raw;
    raw.width = mosaic.width;
    raw.height = mosaic.height;
    raw.data.resize(mosaic.data.size());
    for (std::size_t i = 0; i < mosaic.data.size(); ++i) {
        const double v = black + static_cast<double>(mosaic.data[i]) * (white - black);
        raw.data[i] = static_cast<std::uint16_t>(
            std::lround(std::clamp(v, 0.0, 65535.0)));
    }
    return raw;
}

inline rawforge::io::RawImage random_raw(int w, int h, std::uint64_t seed,
                                         std::uint16_t black = 64,
                                         std::uint16_t white = 1023) {
    rawforge::io::RawImage raw;
    raw.width = w;
    raw.height = h;
    raw.data.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    rawforge::SplitMix64 rng(seed);
    for (auto& v : raw.data)
        v = static_cast<std::uint16_t>(
            rng.uniform(static_cast<double>(black), static_cast<double>(white)));
    return raw;
}

// ---------------------------------------------------------------------------
// Long-double oracles: same formulas, wider arithmetic, written without
// reference to the implementation.

inline long double ld_tone_map(long double e, long double beta, long double gamma) {
    const long double eg = powl(e, gamma);
    return (1.0L + beta) * eg / (beta + eg);
}

inline long double ld_cct_weight(long double t, long double t1, long double t2) {
    const long double g = (1.0L / t - 1.0L / t1) / (1.0L / t2 - 1.0L / t1);
    return g < 0.0L ? 0.0L : (g > 1.0L ? 1.0L : g);
}

inline long double ld_srgb_encode(long double v) {
    return v <= 0.0031308L ? 12.92L * v : 1.055L * powl(v, 1.0L / 2.4L) - 0.055L;
}

inline long double ld_srgb_decode(long double v) {
    return v <= 0.04045L ? v / 12.92L : powl((v + 0.055L) / 1.055L, 2.4L);
}

// ---------------------------------------------------------------------------
// Brute-force SSIM oracle: explicit 2D Gaussian window, direct per-window
// sums, no separability, no shared code with the metric.

inline double ssim_oracle(const rawforge::ImagePlane& a, const rawforge::ImagePlane& b) {
    const int win = 11;
    const double sigma = 1.5;
    double w2d[11][11];
    double wsum = 0.0;
    for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) {
            const double di = i - 5.0, dj = j - 5.0;
            w2d[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
            wsum += w2d[i][j];
        }
    for (int i = 0; i < win; ++i)
        for (int j = 0; j < win; ++j) w2d[i][j] /= wsum;

    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
    double channel_sum = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        double acc = 0.0;
        int count = 0;
        for (int y = 0; y + win <= a.height; ++y)
            for (int x = 0; x + win <= a.width; ++x) {
                double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
                for (int i = 0; i < win; ++i)
                    for (int j = 0; j < win; ++j) {
                        const double va = a.at(x + j, y + i, c);
                        const double vb = b.at(x + j, y + i, c);
                        mx += w2d[i][j] * va;
                        my += w2d[i][j] * vb;
                        mxx += w2d[i][j] * va * va;
                        myy += w2d[i][j] * vb * vb;
                        mxy += w2d[i][j] * va * vb;
                    }
                const double vx = mxx - mx * mx, vy = myy - my * my, cov = mxy - mx * my;
                acc += ((2 * mx * my + c1) * (2 * cov + c2)) /
                       ((mx * mx + my * my + c1) * (vx + vy + c2));
                ++count;
            }
        channel_sum += acc / count;
    }
    return channel_sum / a.channels;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver for symmetric matrices; PCA oracle independent
// of the library route.

inline void jacobi_eigen(std::vector<double>& m, int n, std::vector<double>& eigvals,
                         std::vector<double>& eigvecs) {
    eigvecs.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) eigvecs[static_cast<std::size_t>(i) * n + i] = 1.0;
    const auto at = [&](std::vector<double>& v, int r, int c) -> double& {
        return v[static_cast<std::size_t>(r) * n + c];
    };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(m, p, q) * at(m, p, q);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(m, p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(m, q, q) - at(m, p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(m, k, p), akq = at(m, k, q);
                    at(m, k, p) = c * akp - s * akq;
                    at(m, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(m, p, k), aqk = at(m, q, k);
                    at(m, p, k) = c * apk - s * aqk;
                    at(m, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = at(eigvecs, k, p), vkq = at(eigvecs, k, q);
                    at(eigvecs, k, p) = c * vkp - s * vkq;
                    at(eigvecs, k, q) = s * vkp + c * vkq;
                }
            }
    }
    eigvals.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eigvals[static_cast<std::size_t>(i)] = at(m, i, i);
}

// ---------------------------------------------------------------------------
// Subprocess runner and output-tree hashing for CLI determinism checks.

inline std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

/// Runs a command line, captures stdout (stderr folded in), returns the exit
/// code (or -1 when the child did not exit normally).
inline int run_command(const std::vector<std::string>& args, std::string* output = nullptr) {
    std::string cmd;
    for (const std::string& a : args) {
        if (!cmd.empty()) cmd += ' ';
        cmd += shell_quote(a);
    }
    cmd += " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string captured;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) captured.append(buf, got);
    const int status = pclose(pipe);
    if (output) *output = captured;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

/// Order-independent digest of a directory tree: FNV over each relative path
/// and its bytes, paths visited in sorted order.
inline std::uint64_t tree_hash(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const auto eat = [&h](const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 0x100000001B3ULL;
        }
    };
    for (const auto& f : files) {
        const std::string rel = std::filesystem::relative(f, root).string();
        eat(rel.data(), rel.size());
        const std::vector<std::uint8_t> bytes = rawforge::io::read_file(f);
        eat(bytes.data(), bytes.size());
    }
    return h;
}

/// Fresh scratch directory under the system temp dir; removed by the caller.
inline std::filesystem::path scratch_dir(const std::string& label) {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("rawforge-" + label + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace rftest
