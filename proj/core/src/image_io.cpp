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

#include "rawforge/image_io.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "rawforge/error.hpp"

namespace rawforge::io {

namespace {

// P5 header token reader: skips whitespace and '#' comments.
long pgm_token(std::istringstream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    long v = -1;
    in >> v;
    if (!in || v < 0) throw Error("corrupt PGM header");
    return v;
}

} // namespace

RawImage read_pgm(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw Error("not a PGM file: " + path.string());

    // Parse the header out of the first kilobyte; the pixel data offset is
    // where the maxval token ends plus one whitespace byte.
    const std::size_t header_span = std::min<std::size_t>(bytes.size(), 1024);
    std::istringstream header(std::string(reinterpret_cast<const char*>(bytes.data()), header_span));
    header.get();
    header.get(); // "P5"
    const long width = pgm_token(header);
    const long height = pgm_token(header);
    const long maxval = pgm_token(header);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        throw Error("corrupt PGM header");
    const std::size_t data_off = static_cast<std::size_t>(header.tellg()) + 1;

    RawImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.data.resize(count);
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    if (data_off + count * bytes_per_sample > bytes.size())
        throw Error("corrupt PGM: truncated pixel data");
    const std::uint8_t* p = bytes.data() + data_off;
    if (bytes_per_sample == 2) {
        for (std::size_t i = 0; i < count; ++i)
            img.data[i] = static_cast<std::uint16_t>((p[2 * i] << 8) | p[2 * i + 1]);
    } else {
        for (std::size_t i = 0; i < count; ++i) img.data[i] = p[i];
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const RawImage& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.data.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height))
        throw Error("PGM encode: bad shape");
    std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n65535\n";
    out.reserve(out.size() + img.data.size() * 2);
    for (std::uint16_t v : img.data) {
        out.push_back(static_cast<char>(v >> 8));
        out.push_back(static_cast<char>(v & 0xFF));
    }
    atomic_write(path, out);
}

RawImage read_raw_image(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return read_pgm(path);
    const PngImage png = decode_png(bytes.data(), bytes.size());
    if (png.channels != 1)
        throw Error("raw input must be single-channel: " + path.string());
    RawImage img;
    img.width = png.width;
    img.height = png.height;
    img.data = png.samples;
    return img;
}

std::vector<std::uint16_t> quantize16(const ImagePlane& img) {
    std::vector<std::uint16_t> out(img.sample_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const float v = std::clamp(img.data[i], 0.0f, 1.0f);
        out[i] = static_cast<std::uint16_t>(std::lround(static_cast<double>(v) * 65535.0));
    }
    return out;
}

std::vector<std::uint8_t> quantize8(const ImagePlane& img) {
    std::vector<std::uint8_t> out(img.sample_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const float v = std::clamp(img.data[i], 0.0f, 1.0f);
        out[i] = static_cast<std::uint8_t>(std::lround(static_cast<double>(v) * 255.0));
    }
    return out;
}

ImagePlane plane_from_png(const PngImage& png, ColorState state) {
    ImagePlane img = ImagePlane::make(png.width, png.height, png.channels, state);
    const double scale = png.bit_depth == 16 ? 65535.0 : 255.0;
    for (std::size_t i = 0; i < png.samples.size(); ++i)
        img.data[i] = static_cast<float>(static_cast<double>(png.samples[i]) / scale);
    return img;
}

ImagePlane read_plane_png(const std::filesystem::path& path, ColorState state) {
    return plane_from_png(read_png(path), state);
}

void write_plane_png(const std::filesystem::path& path, const ImagePlane& img) {
    if (img.state == ColorState::EncodedSrgb)
        write_png8(path, img.width, img.height, img.channels, quantize8(img));
    else
        write_png16(path, img.width, img.height, img.channels, quantize16(img));
}

void atomic_write(const std::filesystem::path& path, const std::uint8_t* bytes, std::size_t size) {
    static std::atomic<unsigned> counter{0};
    std::filesystem::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    const std::filesystem::path tmp =
        dir / (path.filename().string() + ".tmp" + std::to_string(counter.fetch_add(1)) + "-" +
               std::to_string(static_cast<unsigned long>(::getpid())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes), static_cast<std::streamsize>(size));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("rename failed for " + path.string() + ": " + ec.message());
    }
}

void atomic_write(const std::filesystem::path& path, const std::string& text) {
    atomic_write(path, reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

} // namespace rawforge::io
