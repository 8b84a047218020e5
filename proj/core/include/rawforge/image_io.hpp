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
#include <filesystem>
#include <string>
#include <vector>

#include "rawforge/image.hpp"

namespace rawforge::io {

/// Unnormalized sensor data as it comes out of a container: 16-bit samples,
/// black/white levels still baked in.
struct RawImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> data;

    std::uint16_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                    static_cast<std::size_t>(x)];
    }
};

/// Decoded PNG. Samples are widened to uint16 regardless of bit depth;
/// `bit_depth` (8 or 16) tells the caller the real scale.
struct PngImage {
    int width = 0;
    int height = 0;
    int channels = 1; // 1 = grayscale, 3 = RGB
    int bit_depth = 8;
    std::vector<std::uint16_t> samples;
};

// PNG container: grayscale/RGB at 8 or 16 bits, no interlace, no palette.
// 16-bit samples are big-endian per the PNG spec. The writer emits fixed
// zlib settings and filter None on every scanline, so identical pixels
// always produce identical bytes. The reader handles all five scanline
// filters and verifies chunk CRCs. Anything else errors cleanly.
PngImage decode_png(const std::uint8_t* bytes, std::size_t size);
PngImage read_png(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_png16(int width, int height, int channels,
                                       const std::vector<std::uint16_t>& samples);
std::vector<std::uint8_t> encode_png8(int width, int height, int channels,
                                      const std::vector<std::uint8_t>& samples);
void write_png16(const std::filesystem::path& path, int width, int height, int channels,
                 const std::vector<std::uint16_t>& samples);
void write_png8(const std::filesystem::path& path, int width, int height, int channels,
                const std::vector<std::uint8_t>& samples);

// Binary PGM (P5), maxval 255 or 65535, 16-bit samples big-endian.
RawImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const RawImage& img);

/// Loads a single-channel 16-bit raw mosaic from PNG or PGM (sniffed by
/// magic). 8-bit grayscale PNG is widened by value (not rescaled).
RawImage read_raw_image(const std::filesystem::path& path);

/// clip to [0,1] then round to the full code range.
std::vector<std::uint16_t> quantize16(const ImagePlane& img);
std::vector<std::uint8_t> quantize8(const ImagePlane& img);

/// PNG -> plane with values scaled to [0, 1] by the full code range of the
/// file's bit depth. The caller assigns the color state.
ImagePlane plane_from_png(const PngImage& png, ColorState state);
ImagePlane read_plane_png(const std::filesystem::path& path, ColorState state);

/// Encoded-sRGB planes go to 8-bit PNG, every other state to 16-bit.
void write_plane_png(const std::filesystem::path& path, const ImagePlane& img);

/// Whole-file write via a temp file in the same directory plus rename, so a
/// crash never leaves a half-written output at `path`.
void atomic_write(const std::filesystem::path& path, const std::uint8_t* bytes, std::size_t size);
void atomic_write(const std::filesystem::path& path, const std::string& text);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

} // namespace rawforge::io
