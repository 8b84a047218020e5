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

// Metadata-only DNG/TIFF reader. Walks IFD0 and then its SubIFDs (tag 0x014A,
// listed order); the first occurrence of a tag wins. Image strips are never
// touched. Every access is bounds-checked against the buffer, so truncated or
// corrupt files throw Error instead of reading out of range.

#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "rawforge/color.hpp"
#include "rawforge/dng.hpp"
#include "rawforge/error.hpp"
#include "rawforge/image_io.hpp"

namespace rawforge::dng {

namespace {

// Tag numbers (TIFF-EP / DNG).
constexpr std::uint16_t kTagCfaRepeatPatternDim = 0x828D;
constexpr std::uint16_t kTagCfaPattern = 0x828E;
constexpr std::uint16_t kTagSubIfds = 0x014A;
constexpr std::uint16_t kTagUniqueCameraModel = 0xC614;
constexpr std::uint16_t kTagBlackLevel = 0xC61A;
constexpr std::uint16_t kTagWhiteLevel = 0xC61D;
constexpr std::uint16_t kTagColorMatrix1 = 0xC621;
constexpr std::uint16_t kTagColorMatrix2 = 0xC622;
constexpr std::uint16_t kTagAsShotNeutral = 0xC628;
constexpr std::uint16_t kTagCalibrationIlluminant1 = 0xC65A;
constexpr std::uint16_t kTagCalibrationIlluminant2 = 0xC65B;
constexpr std::uint16_t kTagForwardMatrix1 = 0xC714;
constexpr std::uint16_t kTagForwardMatrix2 = 0xC715;

// TIFF value types.
enum : std::uint16_t {
    kTypeByte = 1,
    kTypeAscii = 2,
    kTypeShort = 3,
    kTypeLong = 4,
    kTypeRational = 5,
    kTypeSRational = 10,
    kTypeIfd = 13,
};

std::size_t type_size(std::uint16_t type) {
    switch (type) {
    case kTypeByte:
    case kTypeAscii:
    case 6: // SBYTE
    case 7: // UNDEFINED
        return 1;
    case kTypeShort:
    case 8: // SSHORT
        return 2;
    case kTypeLong:
    case 9:  // SLONG
    case 11: // FLOAT
    case kTypeIfd:
        return 4;
    case kTypeRational:
    case kTypeSRational:
    case 12: // DOUBLE
        return 8;
    default:
        return 0;
    }
}

struct TiffReader {
    const std::uint8_t* p;
    std::size_t size;
    bool little = true;

    void need(std::size_t off, std::size_t n) const {
        if (off > size || n > size - off)
            throw Error("corrupt IFD entry: read beyond end of file");
    }
    std::uint8_t u8(std::size_t off) const {
        need(off, 1);
        return p[off];
    }
    std::uint16_t u16(std::size_t off) const {
        need(off, 2);
        return little ? static_cast<std::uint16_t>(p[off] | (p[off + 1] << 8))
                      : static_cast<std::uint16_t>((p[off] << 8) | p[off + 1]);
    }
    std::uint32_t u32(std::size_t off) const {
        need(off, 4);
        if (little)
            return static_cast<std::uint32_t>(p[off]) |
                   (static_cast<std::uint32_t>(p[off + 1]) << 8) |
                   (static_cast<std::uint32_t>(p[off + 2]) << 16) |
                   (static_cast<std::uint32_t>(p[off + 3]) << 24);
        return (static_cast<std::uint32_t>(p[off]) << 24) |
               (static_cast<std::uint32_t>(p[off + 1]) << 16) |
               (static_cast<std::uint32_t>(p[off + 2]) << 8) |
               static_cast<std::uint32_t>(p[off + 3]);
    }
    std::int32_t i32(std::size_t off) const { return static_cast<std::int32_t>(u32(off)); }
};

struct Entry {
    std::uint16_t tag = 0;
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t data_off = 0; // resolved offset of the value bytes
};

class TagTable {
public:
    explicit TagTable(const TiffReader& r) : r_(r) {}

    void add_ifd(std::size_t ifd_off) {
        if (!visited_.insert(ifd_off).second) return; // cycle guard
        const std::uint16_t n = r_.u16(ifd_off);
        for (std::uint16_t i = 0; i < n; ++i) {
            const std::size_t e = ifd_off + 2 + static_cast<std::size_t>(i) * 12;
            Entry entry;
            entry.tag = r_.u16(e);
            entry.type = r_.u16(e + 2);
            entry.count = r_.u32(e + 4);
            const std::size_t ts = type_size(entry.type);
            if (ts == 0) throw Error("corrupt IFD entry: unknown value type");
            if (entry.count > 0xFFFFFF) throw Error("corrupt IFD entry: absurd count");
            const std::size_t total = ts * entry.count;
            entry.data_off = total <= 4 ? e + 8 : r_.u32(e + 8);
            r_.need(entry.data_off, total); // offsets must land inside the file
            // First occurrence wins: later IFDs never override.
            if (lookup(entry.tag) == nullptr) entries_.push_back(entry);
        }
    }

    const Entry* lookup(std::uint16_t tag) const {
        for (const Entry& e : entries_)
            if (e.tag == tag) return &e;
        return nullptr;
    }

    const Entry& require(std::uint16_t tag, const char* name) const {
        const Entry* e = lookup(tag);
        if (!e) throw Error(std::string("missing tag ") + name);
        return *e;
    }

    std::vector<double> numbers(const Entry& e) const {
        std::vector<double> out;
        out.reserve(e.count);
        for (std::uint32_t i = 0; i < e.count; ++i) {
            const std::size_t off = e.data_off + static_cast<std::size_t>(i) * type_size(e.type);
            switch (e.type) {
            case kTypeByte:
                out.push_back(r_.u8(off));
                break;
            case kTypeShort:
                out.push_back(r_.u16(off));
                break;
            case kTypeLong:
                out.push_back(r_.u32(off));
                break;
            case kTypeRational: {
                const std::uint32_t num = r_.u32(off);
                const std::uint32_t den = r_.u32(off + 4);
                if (den == 0) throw Error("corrupt IFD entry: zero rational denominator");
                out.push_back(static_cast<double>(num) / static_cast<double>(den));
                break;
            }
            case kTypeSRational: {
                const std::int32_t num = r_.i32(off);
                const std::int32_t den = r_.i32(off + 4);
                if (den == 0) throw Error("corrupt IFD entry: zero rational denominator");
                out.push_back(static_cast<double>(num) / static_cast<double>(den));
                break;
            }
            default:
                throw Error("corrupt IFD entry: unexpected value type");
            }
        }
        return out;
    }

    std::vector<double> require_numbers(std::uint16_t tag, const char* name,
                                        std::uint32_t expected_count) const {
        const Entry& e = require(tag, name);
        if (expected_count != 0 && e.count != expected_count)
            throw Error(std::string("corrupt IFD entry: ") + name + " has count " +
                        std::to_string(e.count) + ", expected " + std::to_string(expected_count));
        return numbers(e);
    }

    std::string ascii(const Entry& e) const {
        std::string s;
        for (std::uint32_t i = 0; i < e.count; ++i) {
            const char c = static_cast<char>(r_.u8(e.data_off + i));
            if (c == '\0') break;
            s.push_back(c);
        }
        return s;
    }

    const TiffReader& reader() const { return r_; }

private:
    const TiffReader& r_;
    std::vector<Entry> entries_;
    std::set<std::size_t> visited_;
};

Mat3 to_mat3(const std::vector<double>& v) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.m[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    return m;
}

CfaPattern decode_cfa(const TagTable& t) {
    const std::vector<double> dim =
        t.require_numbers(kTagCfaRepeatPatternDim, "CFARepeatPatternDim", 2);
    if (dim[0] != 2.0 || dim[1] != 2.0)
        throw Error("unsupported CFA pattern: repeat dim must be 2x2");
    const std::vector<double> pat = t.require_numbers(kTagCfaPattern, "CFAPattern", 4);
    const int a = static_cast<int>(pat[0]), b = static_cast<int>(pat[1]);
    const int c = static_cast<int>(pat[2]), d = static_cast<int>(pat[3]);
    // TIFF-EP CFA codes: 0 = R, 1 = G, 2 = B, row-major tile.
    if (a == 0 && b == 1 && c == 1 && d == 2) return CfaPattern::RGGB;
    if (a == 2 && b == 1 && c == 1 && d == 0) return CfaPattern::BGGR;
    if (a == 1 && b == 0 && c == 2 && d == 1) return CfaPattern::GRBG;
    if (a == 1 && b == 2 && c == 0 && d == 1) return CfaPattern::GBRG;
    throw Error("unsupported CFA pattern");
}

} // namespace

double illuminant_code_to_cct(int exif_code) {
    // EXIF LightSource values. Fluorescent band codes use the band midpoint;
    // the CIE D illuminants use their exact CCTs.
    switch (exif_code) {
    case 1: return 5500.0;  // Daylight
    case 2: return 3800.0;  // Fluorescent
    case 3: return 2850.0;  // Tungsten (incandescent)
    case 4: return 5500.0;  // Flash
    case 9: return 5500.0;  // Fine weather
    case 10: return 6500.0; // Cloudy weather
    case 11: return 7500.0; // Shade
    case 12: return 6400.0; // Daylight fluorescent (D 5700-7100K)
    case 13: return 5000.0; // Day white fluorescent (N 4600-5400K)
    case 14: return 4200.0; // Cool white fluorescent (W 3900-4500K)
    case 15: return 3450.0; // White fluorescent (WW 3200-3700K)
    case 17: return 2850.0; // Standard light A
    case 18: return 4874.0; // Standard light B
    case 19: return 6774.0; // Standard light C
    case 20: return 5503.0; // D55
    case 21: return 6504.0; // D65
    case 22: return 7504.0; // D75
    case 23: return 5003.0; // D50
    case 24: return 3200.0; // ISO studio tungsten
    default:
        throw Error("unsupported illuminant code " + std::to_string(exif_code));
    }
}

CameraProfile parse_dng(const std::uint8_t* bytes, std::size_t size) {
    if (size < 8) throw Error("not a TIFF/DNG: file shorter than the header");
    TiffReader r{bytes, size};
    if (bytes[0] == 'I' && bytes[1] == 'I') r.little = true;
    else if (bytes[0] == 'M' && bytes[1] == 'M') r.little = false;
    else throw Error("not a TIFF/DNG: bad byte-order mark");
    if (r.u16(2) != 42) throw Error("not a TIFF/DNG: bad magic number");

    TagTable tags(r);
    const std::uint32_t ifd0 = r.u32(4);
    tags.add_ifd(ifd0);
    if (const Entry* sub = tags.lookup(kTagSubIfds)) {
        if (sub->type != kTypeLong && sub->type != kTypeIfd)
            throw Error("corrupt IFD entry: SubIFDs must hold offsets");
        // Copy before recursing: add_ifd grows the table and invalidates sub.
        const Entry pointers = *sub;
        for (std::uint32_t i = 0; i < pointers.count; ++i)
            tags.add_ifd(r.u32(pointers.data_off + static_cast<std::size_t>(i) * 4));
    }

    CameraProfile p;
    if (const Entry* name = tags.lookup(kTagUniqueCameraModel)) p.name = tags.ascii(*name);

    p.color_matrix_1 = to_mat3(tags.require_numbers(kTagColorMatrix1, "ColorMatrix1", 9));
    p.color_matrix_2 = to_mat3(tags.require_numbers(kTagColorMatrix2, "ColorMatrix2", 9));
    p.forward_matrix_1 = to_mat3(tags.require_numbers(kTagForwardMatrix1, "ForwardMatrix1", 9));
    p.forward_matrix_2 = to_mat3(tags.require_numbers(kTagForwardMatrix2, "ForwardMatrix2", 9));

    const std::vector<double> ill1 =
        tags.require_numbers(kTagCalibrationIlluminant1, "CalibrationIlluminant1", 1);
    const std::vector<double> ill2 =
        tags.require_numbers(kTagCalibrationIlluminant2, "CalibrationIlluminant2", 1);
    p.calib_illum_1_kelvin = illuminant_code_to_cct(static_cast<int>(ill1[0]));
    p.calib_illum_2_kelvin = illuminant_code_to_cct(static_cast<int>(ill2[0]));

    const std::vector<double> neutral =
        tags.require_numbers(kTagAsShotNeutral, "AsShotNeutral", 3);
    if (!(neutral[0] > 0.0 && neutral[1] > 0.0 && neutral[2] > 0.0))
        throw Error("invalid calibration: AsShotNeutral must be strictly positive");
    // Stored green-normalized; DNGs usually have G = 1 already.
    p.as_shot_neutral = {neutral[0] / neutral[1], 1.0, neutral[2] / neutral[1]};

    // BlackLevel may repeat per CFA site; a uniform sensor floor is the mean.
    const std::vector<double> black = tags.numbers(tags.require(kTagBlackLevel, "BlackLevel"));
    if (black.empty()) throw Error("corrupt IFD entry: BlackLevel has no values");
    double sum = 0.0;
    for (double v : black) sum += v;
    p.black_level = sum / static_cast<double>(black.size());

    const std::vector<double> white = tags.numbers(tags.require(kTagWhiteLevel, "WhiteLevel"));
    if (white.empty()) throw Error("corrupt IFD entry: WhiteLevel has no values");
    p.white_level = white[0];

    p.cfa = decode_cfa(tags);

    // Sensor noise is not calibrated by DNG metadata; leave zeros + flag.
    p.noise_alpha = {0.0, 0.0, 0.0};
    p.noise_beta = {0.0, 0.0, 0.0};
    p.noise_calibrated = false;

    validate_profile(p);
    return p;
}

CameraProfile parse_dng(const std::vector<std::uint8_t>& bytes) {
    return parse_dng(bytes.data(), bytes.size());
}

CameraProfile parse_dng_file(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = io::read_file(path);
    return parse_dng(bytes.data(), bytes.size());
}

void validate_profile(const CameraProfile& p) {
    if (!(p.white_level > p.black_level))
        throw Error("invalid calibration: WhiteLevel must exceed BlackLevel");
    if (!(p.as_shot_neutral.x > 0.0 && p.as_shot_neutral.y > 0.0 && p.as_shot_neutral.z > 0.0))
        throw Error("invalid calibration: AsShotNeutral must be strictly positive");
    if (!(p.calib_illum_1_kelvin >= kCctMin && p.calib_illum_1_kelvin <= kCctMax) ||
        !(p.calib_illum_2_kelvin >= kCctMin && p.calib_illum_2_kelvin <= kCctMax))
        throw Error("invalid calibration: illuminant CCT outside the accepted window");
    try {
        mat3_invert(p.color_matrix_1);
        mat3_invert(p.color_matrix_2);
        mat3_invert(p.forward_matrix_1);
        mat3_invert(p.forward_matrix_2);
    } catch (const Error&) {
        throw Error("invalid calibration: non-invertible calibration matrix");
    }
    if (p.lens_gain_map) {
        const GainMap& g = *p.lens_gain_map;
        if (g.rows < 1 || g.cols < 1)
            throw Error("invalid calibration: empty lens gain map");
        for (const auto& plane : g.gain) {
            if (plane.size() != static_cast<std::size_t>(g.rows) * static_cast<std::size_t>(g.cols))
                throw Error("invalid calibration: lens gain map shape mismatch");
            for (double v : plane)
                if (!(v > 0.0)) throw Error("invalid calibration: lens gains must be positive");
        }
    }
}

} // namespace rawforge::dng
