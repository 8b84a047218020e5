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
#include <optional>
#include <string>
#include <vector>

#include "rawforge/dng.hpp"
#include "rawforge/image.hpp"
#include "rawforge/image_io.hpp"
#include "rawforge/photofinish.hpp"

namespace rawforge::dataset {

/// One manifest line: everything needed to re-render a variant byte-
/// identically. Serialized as JSONL with full-precision numbers.
struct ManifestRow {
    std::string scene_id;
    int variant_index = 0;
    photofinish::PhotoFinishParams params;
};

std::string manifest_row_to_json(const ManifestRow& row);
ManifestRow manifest_row_from_json(const std::string& line);
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);

/// Shared XYZ target of a scene: ISP with edge-aware demosaic, white balance
/// from AsShotNeutral, terminated at the XYZ stage. Unclipped.
ImagePlane build_anchor(const io::RawImage& raw, const CameraProfile& profile,
                        std::optional<Cct> cct = std::nullopt);

/// Center square crop (upper-left bias on odd margins) followed by a
/// separable Lanczos-3 resample to size x size, clipped to [0, 1]. A square
/// input already at `size` passes through unchanged. Upscaling is allowed.
ImagePlane crop_resize(const ImagePlane& img, int size);

struct SceneRecord {
    std::string scene_id;
    std::filesystem::path anchor_path;
    std::vector<std::filesystem::path> variant_paths;
    std::vector<ManifestRow> rows;
    double anchor_clipped_fraction = 0.0; // XYZ samples clipped at 16-bit quantization
};

struct BuildOptions {
    int resize = 0; // 0 keeps native resolution
    std::optional<Cct> cct;
    isp::DemosaicMethod demosaic = isp::DemosaicMethod::EdgeAware;
};

/// Renders one scene under <root>/<scene_id>/: anchor.png (16-bit XYZ) plus
/// variant_000.png ... (8-bit encoded sRGB), variant seeds
/// split_seed(base_seed, scene_id, index). Rows parallelize inside each
/// render; variant order stays fixed. Returns the manifest rows instead of
/// appending them: the dataset driver writes <root>/manifest.jsonl once,
/// scenes in input order, so the tree is byte-identical for every thread
/// count. The anchor never depends on variant parameters.
SceneRecord build_scene(const io::RawImage& raw, const CameraProfile& profile,
                        const std::string& scene_id, int n_variants, std::uint64_t base_seed,
                        const std::filesystem::path& out_root, const BuildOptions& opts = {});

struct SceneInput {
    std::string scene_id;
    io::RawImage raw;
    CameraProfile profile;
};

/// Builds every scene and writes the root manifest. Scene order in the
/// manifest equals input order.
std::vector<SceneRecord> build_dataset(const std::vector<SceneInput>& scenes, int n_variants,
                                       std::uint64_t base_seed,
                                       const std::filesystem::path& out_root,
                                       const BuildOptions& opts = {});

} // namespace rawforge::dataset
