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

// The filter tests build PNG files by hand (zlib only), so the decoder is
// checked against the container spec rather than against our own encoder.

#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <vector>

#include <zlib.h>

#include "rawforge/error.hpp"
#include "rawforge/image_io.hpp"
#include "rawforge/rng.hpp"

namespace io = rawforge::io;

namespace {

void be32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void chunk(std::vector<std::uint8_t>& out, const char type[4],
           const std::vector<std::uint8_t>& data) {
    be32(out, static_cast<std::uint32_t>(data.size()));
    std::vector<std::uint8_t> body(type, type + 4);
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    be32(out, static_cast<std::uint32_t>(
                  crc32(0L, body.data(), static_cast<uInt>(body.size()))));
}

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

/// Builds a complete PNG around the given sample grid, applying the chosen
/// scanline filter (per row via `filter_for_row`) on the encoder side.
std::vector<std::uint8_t> build_png(int w, int h, int channels, int bit_depth,
                                    const std::vector<std::uint16_t>& samples,
                                    int (*filter_for_row)(int)) {
    const int bpp = channels * (bit_depth / 8);
    const std::size_t stride = static_cast<std::size_t>(w) * static_cast<std::size_t>(bpp);

    // Serialize samples row-major, 16-bit big-endian.
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(h) * stride);
    std::size_t si = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (bit_depth == 16) {
            raw[si++] = static_cast<std::uint8_t>(samples[i] >> 8);
            raw[si++] = static_cast<std::uint8_t>(samples[i]);
        } else {
            raw[si++] = static_cast<std::uint8_t>(samples[i]);
        }
    }

    std::vector<std::uint8_t> filtered;
    for (int y = 0; y < h; ++y) {
        const int f = filter_for_row(y);
        filtered.push_back(static_cast<std::uint8_t>(f));
        const std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * stride;
        const std::uint8_t* prior = y > 0 ? row - stride : nullptr;
        for (std::size_t i = 0; i < stride; ++i) {
            const int x = row[i];
            const int left = i >= static_cast<std::size_t>(bpp)
                                 ? row[i - static_cast<std::size_t>(bpp)]
                                 : 0;
            const int up = prior ? prior[i] : 0;
            const int upleft = (prior && i >= static_cast<std::size_t>(bpp))
                                   ? prior[i - static_cast<std::size_t>(bpp)]
                                   : 0;
            int out = x;
            switch (f) {
            case 0: out = x; break;
            case 1: out = x - left; break;
            case 2: out = x - up; break;
            case 3: out = x - (left + up) / 2; break;
            case 4: out = x - paeth(left, up, upleft); break;
            }
            filtered.push_back(static_cast<std::uint8_t>(out & 0xFF));
        }
    }

    uLongf bound = compressBound(static_cast<uLong>(filtered.size()));
    std::vector<std::uint8_t> compressed(bound);
    REQUIRE(compress2(compressed.data(), &bound, filtered.data(),
                      static_cast<uLong>(filtered.size()), 6) == Z_OK);
    compressed.resize(bound);

    std::vector<std::uint8_t> png = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    std::vector<std::uint8_t> ihdr;
    be32(ihdr, static_cast<std::uint32_t>(w));
    be32(ihdr, static_cast<std::uint32_t>(h));
    ihdr.push_back(static_cast<std::uint8_t>(bit_depth));
    ihdr.push_back(channels == 3 ? 2 : 0); // color type
    ihdr.push_back(0);                     // compression
    ihdr.push_back(0);                     // filter method
    ihdr.push_back(0);                     // no interlace
    chunk(png, "IHDR", ihdr);
    chunk(png, "IDAT", compressed);
    chunk(png, "IEND", {});
    return png;
}

std::vector<std::uint16_t> random_samples(int count, std::uint64_t seed, int bit_depth) {
    std::vector<std::uint16_t> s(static_cast<std::size_t>(count));
    rawforge::SplitMix64 rng(seed);
    const double hi = bit_depth == 16 ? 65535.0 : 255.0;
    for (auto& v : s) v = static_cast<std::uint16_t>(rng.uniform(0.0, hi + 0.999));
    return s;
}

} // namespace

TEST_CASE("png encoder output decodes back to the same samples") {
    struct Shape {
        int w, h, ch, depth;
    };
    const Shape shapes[] = {{1, 1, 1, 8},  {3, 2, 3, 8},   {17, 5, 1, 16},
                            {8, 8, 3, 16}, {31, 3, 3, 8}};
    for (const Shape& s : shapes) {
        const std::vector<std::uint16_t> samples =
            random_samples(s.w * s.h * s.ch, 1000u + static_cast<unsigned>(s.w), s.depth);
        const std::vector<std::uint8_t> bytes =
            s.depth == 16 ? io::encode_png16(s.w, s.h, s.ch, samples)
                          : io::encode_png8(s.w, s.h, s.ch,
                                            [&] {
                                                std::vector<std::uint8_t> b(samples.size());
                                                for (std::size_t i = 0; i < samples.size(); ++i)
                                                    b[i] = static_cast<std::uint8_t>(samples[i]);
                                                return b;
                                            }());
        const io::PngImage img = io::decode_png(bytes.data(), bytes.size());
        CHECK(img.width == s.w);
        CHECK(img.height == s.h);
        CHECK(img.channels == s.ch);
        CHECK(img.bit_depth == s.depth);
        REQUIRE(img.samples.size() == samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) CHECK(img.samples[i] == samples[i]);
    }
}

TEST_CASE("png encoding is byte-deterministic") {
    const std::vector<std::uint16_t> samples = random_samples(8 * 8 * 3, 4, 16);
    const std::vector<std::uint8_t> a = io::encode_png16(8, 8, 3, samples);
    const std::vector<std::uint8_t> b = io::encode_png16(8, 8, 3, samples);
    CHECK(a == b);
}

TEST_CASE("decoder inverts all five scanline filters") {
    // One PNG per constant filter, plus one cycling through them, for both
    // 8-bit RGB and 16-bit grayscale (bpp 3 and 2).
    for (int depth : {8, 16}) {
        const int w = 9, h = 7;
        const int ch = depth == 8 ? 3 : 1;
        const std::vector<std::uint16_t> samples =
            random_samples(w * h * ch, 900u + static_cast<unsigned>(depth), depth);
        static int fixed_filter;
        for (int f = 0; f <= 4; ++f) {
            fixed_filter = f;
            const std::vector<std::uint8_t> png = build_png(
                w, h, ch, depth, samples, [](int) { return fixed_filter; });
            const io::PngImage img = io::decode_png(png.data(), png.size());
            REQUIRE(img.samples.size() == samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i)
                CHECK(img.samples[i] == samples[i]);
        }
        const std::vector<std::uint8_t> png =
            build_png(w, h, ch, depth, samples, [](int y) { return y % 5; });
        const io::PngImage img = io::decode_png(png.data(), png.size());
        REQUIRE(img.samples.size() == samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) CHECK(img.samples[i] == samples[i]);
    }
}

TEST_CASE("png decode rejects malformed input with clean errors") {
    const std::vector<std::uint16_t> samples = random_samples(4 * 4, 5, 16);
    std::vector<std::uint8_t> good = build_png(4, 4, 1, 16, samples, [](int) { return 0; });
    REQUIRE_NOTHROW((void)io::decode_png(good.data(), good.size()));

    SUBCASE("bad signature") {
        std::vector<std::uint8_t> bad = good;
        bad[1] = 'Q';
        CHECK_THROWS_AS((void)io::decode_png(bad.data(), bad.size()), rawforge::Error);
    }
    SUBCASE("every truncation point errors, never crashes") {
        for (std::size_t len = 0; len < good.size(); ++len)
            CHECK_THROWS_AS((void)io::decode_png(good.data(), len), rawforge::Error);
    }
    SUBCASE("corrupt IDAT payload fails the CRC check") {
        // Byte 41 sits inside the IDAT data for this layout (8 sig + 25 IHDR
        // chunk + 8 IDAT header). Flipping it must break the CRC.
        std::vector<std::uint8_t> bad = good;
        bad[43] ^= 0xFF;
        CHECK_THROWS_AS((void)io::decode_png(bad.data(), bad.size()), rawforge::Error);
    }
    SUBCASE("palette and interlace are rejected") {
        // Mutate one IHDR byte, then refresh the IHDR CRC so the failure is
        // the header check, not the checksum.
        const auto mutate_ihdr = [&](std::size_t data_index, std::uint8_t value) {
            std::vector<std::uint8_t> bad = good;
            bad[8 + 8 + data_index] = value;
            const std::uint32_t crc = static_cast<std::uint32_t>(
                crc32(0L, bad.data() + 8 + 4, 4 + 13)); // type + data
            for (int i = 0; i < 4; ++i)
                bad[8 + 8 + 13 + static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>(crc >> (24 - 8 * i));
            return bad;
        };
        std::vector<std::uint8_t> bad = mutate_ihdr(9, 3); // palette color type
        CHECK_THROWS_AS((void)io::decode_png(bad.data(), bad.size()), rawforge::Error);
        bad = mutate_ihdr(12, 1); // Adam7 interlace
        CHECK_THROWS_AS((void)io::decode_png(bad.data(), bad.size()), rawforge::Error);
    }
    SUBCASE("unknown scanline filter value") {
        const std::vector<std::uint8_t> weird =
            build_png(4, 4, 1, 16, samples, [](int) { return 7; });
        CHECK_THROWS_AS((void)io::decode_png(weird.data(), weird.size()), rawforge::Error);
    }
}
