// Copyright 2026 The skyrtex authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Batch orchestration: texture generation, feature extraction, similarity
 * and clustering analysis, manifest/CSV persistence, and the CLI.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skyrtex/imgfeat.hpp"
#include "skyrtex/parallel.hpp"
#include "skyrtex/simil.hpp"
#include "skyrtex/texgen.hpp"

namespace skyrtex::pipeline {

inline constexpr int kManifestSchemaVersion = 1;

struct BatchConfig {
    std::uint64_t base_seed = 42;
    int n_qubits = 6;
    int depth = 6;
    std::vector<texgen::TextureMode> modes{texgen::kAllModes.begin(), texgen::kAllModes.end()};
    int per_mode_count = 50;
    int width = 256;
    int height = 256;
    std::filesystem::path output_dir;
    std::string prng_name; // defaults to rng::kPrngName when empty
    int cluster_k = 4;
    int ssim_subset = 8; // images per mode entering the similarity matrix

    /// Throws std::invalid_argument on empty modes, per_mode_count < 1, or
    /// an image smaller than 16x16.
    void validate() const;
};

/// Per-image seed: mix_seed chained over the batch seed, the mode's index
/// in texgen::kAllModes, and the image index. Collision-freedom over the
/// batch is verified at runtime.
std::uint64_t derive_image_seed(std::uint64_t base_seed, texgen::TextureMode mode,
                                int image_index);

struct ImageRecord {
    std::string mode;
    int index = 0;
    std::uint64_t seed = 0;
    std::string rgb_path;  // relative to the output dir
    std::string gray_path;
    int csv_row = -1; // data row index in features.csv, -1 for failed images
    double topological_charge = 0.0;
    std::string flags; // imgfeat::FeatureFlags::to_string()
    std::string error; // empty on success
};

struct BatchManifest {
    BatchConfig config;
    std::vector<ImageRecord> records; // sorted by (mode, index)
    std::vector<std::string> analysis_outputs; // relative paths beyond the per-image ones
    std::string tool_version;
    std::string determinism_hash; // over PNG bytes + CSV bytes + SSIM values
    std::string timestamp;        // excluded from the determinism hash
    int failed_count = 0;

    std::string to_json() const; // stable field order, byte-identical across equal runs
};

/// Runs the full batch: generates |modes| x per_mode_count textures (worker
/// pool bounded by SKYRTEX_THREADS), writes RGB+gray PNGs, extracts
/// features into features.csv, computes the SSIM matrix over the first
/// ssim_subset images per mode, standardizes + PCA + k-means over all
/// feature rows, and writes heatmap/scatter/manifest. A failed image is
/// recorded in its manifest entry and does not abort the batch.
BatchManifest run_batch(const BatchConfig &config);

struct FeatureRow {
    std::string mode;
    int index = 0;
    std::uint64_t seed = 0;
    imgfeat::FeatureVector features;
};

/// Fixed column order: mode,index,seed,<feature_column_names...>,flags.
/// Values are printed with enough digits to round-trip exactly.
void write_feature_csv(const std::vector<FeatureRow> &rows, const std::filesystem::path &path);

/// Throws IoError with the offending row number on malformed input.
std::vector<FeatureRow> read_feature_csv(const std::filesystem::path &path);

/// FNV-1a over the given files' names and bytes plus the similarity values.
std::string determinism_hash(const std::filesystem::path &root,
                             const std::vector<std::string> &relative_files,
                             const std::vector<double> &similarity_values);

/// Entry point behind the skyrtex binary. Returns the process exit code:
/// 0 success, 1 processing failure, 2 usage error.
int run_cli(int argc, const char *const *argv);

} // namespace skyrtex::pipeline
