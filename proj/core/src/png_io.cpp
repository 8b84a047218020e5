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

// Minimal PNG codec over zlib. Supports exactly what the pipeline emits:
// grayscale or RGB, 8 or 16 bits, no interlace, no palette. The writer uses
// filter None and a fixed deflate level so identical samples always yield
// identical files; the reader understands all five scanline filters and
// checks every chunk CRC.

#include <cstring>
#include <limits>

#include <zlib.h>

#include "rawforge/error.hpp"
#include "rawforge/image_io.hpp"

namespace rawforge::io {

namespace {

constexpr std::uint8_t kSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};
constexpr int kDeflateLevel = 6; // fixed: part of the byte-determinism contract

void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::uint8_t* data, std::size_t size) {
    put_u32be(out, static_cast<std::uint32_t>(size));
    const std::size_t type_pos = out.size();
    out.insert(out.end(), type, type + 4);
    if (size > 0) out.insert(out.end(), data, data + size);
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, out.data() + type_pos, static_cast<uInt>(4 + size));
    put_u32be(out, static_cast<std::uint32_t>(crc));
}

std::vector<std::uint8_t> deflate_buffer(const std::vector<std::uint8_t>& raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> out(bound);
    const int rc = compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                             kDeflateLevel);
    if (rc != Z_OK) throw Error("PNG encode: deflate failed");
    out.resize(bound);
    return out;
}

std::vector<std::uint8_t> encode_common(int width, int height, int channels, int bit_depth,
                                        const std::uint8_t* row_bytes, std::size_t row_stride) {
    if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
        throw Error("PNG encode: bad shape");
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(height) * (1 + row_stride));
    for (int y = 0; y < height; ++y) {
        raw.push_back(0); // filter None
        raw.insert(raw.end(), row_bytes + static_cast<std::size_t>(y) * row_stride,
                   row_bytes + static_cast<std::size_t>(y) * row_stride + row_stride);
    }
    const std::vector<std::uint8_t> idat = deflate_buffer(raw);

    std::vector<std::uint8_t> png;
    png.insert(png.end(), kSignature, kSignature + 8);
    std::uint8_t ihdr[13];
    ihdr[0] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(width) >> 24);
    ihdr[1] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(width) >> 16);
    ihdr[2] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(width) >> 8);
    ihdr[3] = static_cast<std::uint8_t>(width);
    ihdr[4] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(height) >> 24);
    ihdr[5] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(height) >> 16);
    ihdr[6] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(height) >> 8);
    ihdr[7] = static_cast<std::uint8_t>(height);
    ihdr[8] = static_cast<std::uint8_t>(bit_depth);
    ihdr[9] = channels == 1 ? 0 : 2; // color type
    ihdr[10] = 0;                    // compression
    ihdr[11] = 0;                    // filter method
    ihdr[12] = 0;                    // no interlace
    append_chunk(png, "IHDR", ihdr, sizeof(ihdr));
    append_chunk(png, "IDAT", idat.data(), idat.size());
    append_chunk(png, "IEND", nullptr, 0);
    return png;
}

struct ByteReader {
    const std::uint8_t* p;
    std::size_t size;
    std::size_t off = 0;

    void need(std::size_t n) const {
        if (off + n > size) throw Error("corrupt PNG: truncated");
    }
    std::uint8_t u8() {
        need(1);
        return p[off++];
    }
    std::uint32_t u32be() {
        need(4);
        std::uint32_t v = (static_cast<std::uint32_t>(p[off]) << 24) |
                          (static_cast<std::uint32_t>(p[off + 1]) << 16) |
                          (static_cast<std::uint32_t>(p[off + 2]) << 8) |
                          static_cast<std::uint32_t>(p[off + 3]);
        off += 4;
        return v;
    }
    const std::uint8_t* take(std::size_t n) {
        need(n);
        const std::uint8_t* q = p + off;
        off += n;
        return q;
    }
};

int paeth(int a, int b, int c) {
    const int pp = a + b - c;
    const int pa = std::abs(pp - a), pb = std::abs(pp - b), pc = std::abs(pp - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

std::vector<std::uint8_t> inflate_buffer(const std::vector<std::uint8_t>& in,
                                         std::size_t expected) {
    std::vector<std::uint8_t> out(expected);
    uLongf out_size = static_cast<uLongf>(expected);
    const int rc = uncompress(out.data(), &out_size, in.data(), static_cast<uLong>(in.size()));
    if (rc != Z_OK || out_size != expected) throw Error("corrupt PNG: bad image data");
    return out;
}

} // namespace

PngImage decode_png(const std::uint8_t* bytes, std::size_t size) {
    ByteReader r{bytes, size};
    const std::uint8_t* sig = r.take(8);
    if (std::memcmp(sig, kSignature, 8) != 0) throw Error("not a PNG file");

    PngImage img;
    bool saw_ihdr = false, saw_iend = false;
    std::vector<std::uint8_t> idat;
    while (!saw_iend) {
        const std::uint32_t len = r.u32be();
        if (len > (1u << 30)) throw Error("corrupt PNG: oversized chunk");
        const std::uint8_t* type = r.take(4);
        const std::uint8_t* data = r.take(len);
        const std::uint32_t crc_stored = r.u32be();
        uLong crc = crc32(0L, Z_NULL, 0);
        crc = crc32(crc, type, 4);
        if (len > 0) crc = crc32(crc, data, static_cast<uInt>(len));
        if (static_cast<std::uint32_t>(crc) != crc_stored)
            throw Error("corrupt PNG: chunk CRC mismatch");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (saw_ihdr || len != 13) throw Error("corrupt PNG: bad IHDR");
            saw_ihdr = true;
            img.width = static_cast<int>((data[0] << 24) | (data[1] << 16) | (data[2] << 8) | data[3]);
            img.height = static_cast<int>((data[4] << 24) | (data[5] << 16) | (data[6] << 8) | data[7]);
            img.bit_depth = data[8];
            const int color_type = data[9];
            if (img.width <= 0 || img.height <= 0 ||
                img.width > (1 << 24) || img.height > (1 << 24))
                throw Error("corrupt PNG: bad dimensions");
            if (img.bit_depth != 8 && img.bit_depth != 16)
                throw Error("unsupported PNG: bit depth must be 8 or 16");
            if (color_type == 0) img.channels = 1;
            else if (color_type == 2) img.channels = 3;
            else throw Error("unsupported PNG: color type must be grayscale or RGB");
            if (data[10] != 0 || data[11] != 0) throw Error("corrupt PNG: bad methods");
            if (data[12] != 0) throw Error("unsupported PNG: interlaced");
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            if (!saw_ihdr) throw Error("corrupt PNG: IDAT before IHDR");
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        } else if (!(type[0] & 0x20)) {
            // Unknown critical chunk (e.g. PLTE for our color types).
            throw Error("unsupported PNG: unknown critical chunk");
        } // ancillary chunks are skipped
    }
    if (!saw_ihdr) throw Error("corrupt PNG: missing IHDR");

    const std::size_t bytes_per_sample = img.bit_depth == 16 ? 2 : 1;
    const std::size_t bpp = bytes_per_sample * static_cast<std::size_t>(img.channels);
    const std::size_t row_bytes = bpp * static_cast<std::size_t>(img.width);
    const std::size_t raw_size = (row_bytes + 1) * static_cast<std::size_t>(img.height);
    std::vector<std::uint8_t> raw = inflate_buffer(idat, raw_size);

    // Defilter in place, then widen to uint16.
    std::vector<std::uint8_t> prev(row_bytes, 0);
    img.samples.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) *
                       static_cast<std::size_t>(img.channels));
    std::size_t s = 0;
    for (int y = 0; y < img.height; ++y) {
        std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (row_bytes + 1);
        const std::uint8_t filter = row[0];
        std::uint8_t* cur = row + 1;
        switch (filter) {
        case 0:
            break;
        case 1:
            for (std::size_t i = bpp; i < row_bytes; ++i) cur[i] = static_cast<std::uint8_t>(cur[i] + cur[i - bpp]);
            break;
        case 2:
            for (std::size_t i = 0; i < row_bytes; ++i) cur[i] = static_cast<std::uint8_t>(cur[i] + prev[i]);
            break;
        case 3:
            for (std::size_t i = 0; i < row_bytes; ++i) {
                const int left = i >= bpp ? cur[i - bpp] : 0;
                cur[i] = static_cast<std::uint8_t>(cur[i] + ((left + prev[i]) >> 1));
            }
            break;
        case 4:
            for (std::size_t i = 0; i < row_bytes; ++i) {
                const int left = i >= bpp ? cur[i - bpp] : 0;
                const int upleft = i >= bpp ? prev[i - bpp] : 0;
                cur[i] = static_cast<std::uint8_t>(cur[i] + paeth(left, prev[i], upleft));
            }
            break;
        default:
            throw Error("corrupt PNG: unknown scanline filter");
        }
        std::memcpy(prev.data(), cur, row_bytes);
        if (img.bit_depth == 16) {
            for (std::size_t i = 0; i < row_bytes; i += 2)
                img.samples[s++] = static_cast<std::uint16_t>((cur[i] << 8) | cur[i + 1]);
        } else {
            for (std::size_t i = 0; i < row_bytes; ++i)
                img.samples[s++] = cur[i];
        }
    }
    return img;
}

PngImage read_png(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    return decode_png(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> encode_png16(int width, int height, int channels,
                                       const std::vector<std::uint16_t>& samples) {
    const std::size_t expected = static_cast<std::size_t>(width) *
                                 static_cast<std::size_t>(height) *
                                 static_cast<std::size_t>(channels);
    if (samples.size() != expected) throw Error("PNG encode: sample count mismatch");
    // Big-endian per the PNG spec.
    std::vector<std::uint8_t> bytes(expected * 2);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        bytes[2 * i] = static_cast<std::uint8_t>(samples[i] >> 8);
        bytes[2 * i + 1] = static_cast<std::uint8_t>(samples[i] & 0xFF);
    }
    const std::size_t row_stride = static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(channels) * 2;
    return encode_common(width, height, channels, 16, bytes.data(), row_stride);
}

std::vector<std::uint8_t> encode_png8(int width, int height, int channels,
                                      const std::vector<std::uint8_t>& samples) {
    const std::size_t expected = static_cast<std::size_t>(width) *
                                 static_cast<std::size_t>(height) *
                                 static_cast<std::size_t>(channels);
    if (samples.size() != expected) throw Error("PNG encode: sample count mismatch");
    const std::size_t row_stride = static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(channels);
    return encode_common(width, height, channels, 8, samples.data(), row_stride);
}

void write_png16(const std::filesystem::path& path, int width, int height, int channels,
                 const std::vector<std::uint16_t>& samples) {
    const std::vector<std::uint8_t> png = encode_png16(width, height, channels, samples);
    atomic_write(path, png.data(), png.size());
}

void write_png8(const std::filesystem::path& path, int width, int height, int channels,
                const std::vector<std::uint8_t>& samples) {
    const std::vector<std::uint8_t> png = encode_png8(width, height, channels, samples);
    atomic_write(path, png.data(), png.size());
}

} // namespace rawforge::io
