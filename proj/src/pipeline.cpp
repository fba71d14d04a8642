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

#include "skyrtex/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "skyrtex/errors.hpp"
#include "skyrtex/qstate.hpp"
#include "skyrtex/rng.hpp"

namespace skyrtex::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kModeSeedSalt = 0x736b79726d6f6465ULL;

int mode_position(texgen::TextureMode mode) {
    for (std::size_t i = 0; i < texgen::kAllModes.size(); ++i)
        if (texgen::kAllModes[i] == mode)
            return static_cast<int>(i);
    return -1;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string image_stem(const std::string &mode, int index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03d", mode.c_str(), index);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Fnv1a {
  public:
    void update(const void *data, std::size_t size) {
        const auto *bytes = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < size; ++i) {
            hash_ ^= bytes[i];
            hash_ *= 1099511628211ULL;
        }
    }
    void update(const std::string &text) { update(text.data(), text.size()); }
    std::string hex() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                      static_cast<unsigned long long>(hash_));
        return buf;
    }

  private:
    std::uint64_t hash_ = 1469598103934665603ULL;
};

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

} // namespace

void BatchConfig::validate() const {
    if (modes.empty())
        throw std::invalid_argument("BatchConfig: modes must be nonempty");
    if (per_mode_count < 1)
        throw std::invalid_argument("BatchConfig: per_mode_count must be >= 1");
    if (width < 16 || height < 16)
        throw std::invalid_argument("BatchConfig: image size must be at least 16x16");
    if (n_qubits < 1)
        throw std::invalid_argument("BatchConfig: n_qubits must be positive");
    if (depth < 0)
        throw std::invalid_argument("BatchConfig: depth must be non-negative");
    if (cluster_k < 1)
        throw std::invalid_argument("BatchConfig: cluster_k must be >= 1");
    if (ssim_subset < 1)
        throw std::invalid_argument("BatchConfig: ssim_subset must be >= 1");
    if (output_dir.empty())
        throw std::invalid_argument("BatchConfig: output_dir must be set");
}

std::uint64_t derive_image_seed(std::uint64_t base_seed, texgen::TextureMode mode,
                                int image_index) {
    const std::uint64_t mode_key = kModeSeedSalt + static_cast<std::uint64_t>(mode_position(mode));
    return rng::mix_seed(rng::mix_seed(base_seed, mode_key),
                         static_cast<std::uint64_t>(image_index));
}

void write_feature_csv(const std::vector<FeatureRow> &rows, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << "mode,index,seed";
    for (const std::string &name : imgfeat::feature_column_names())
        out << ',' << name;
    out << ",flags\n";
    for (const FeatureRow &row : rows) {
        out << row.mode << ',' << row.index << ',' << row.seed;
        for (double v : imgfeat::feature_values(row.features))
            out << ',' << format_double(v);
        out << ',' << row.features.flags.to_string() << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

std::vector<FeatureRow> read_feature_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());

    const std::size_t value_count = imgfeat::feature_column_names().size();
    const std::size_t expected_fields = 3 + value_count + 1;

    std::string line;
    if (!std::getline(in, line))
        throw IoError(path.string() + ": missing header");

    std::vector<FeatureRow> rows;
    int line_number = 1;
    while (std::getline(in, line)) {
        line_number++;
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        const std::string where = path.string() + ": row " + std::to_string(line_number);
        if (fields.size() != expected_fields)
            throw IoError(where + ": expected " + std::to_string(expected_fields) + " fields, got " +
                          std::to_string(fields.size()));
        FeatureRow row;
        row.mode = fields[0];
        try {
            row.index = std::stoi(fields[1]);
            row.seed = std::stoull(fields[2]);
        } catch (const std::exception &) {
            throw IoError(where + ": bad index/seed");
        }
        std::vector<double> values;
        values.reserve(value_count);
        for (std::size_t i = 0; i < value_count; ++i) {
            const std::string &field = fields[3 + i];
            double v = 0.0;
            const auto result = std::from_chars(field.data(), field.data() + field.size(), v);
            if (result.ec != std::errc{} || result.ptr != field.data() + field.size())
                throw IoError(where + ": bad numeric field '" + field + "'");
            values.push_back(v);
        }
        row.features = imgfeat::feature_vector_from_values(values);
        row.features.flags = imgfeat::FeatureFlags::parse(fields.back());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string determinism_hash(const std::filesystem::path &root,
                             const std::vector<std::string> &relative_files,
                             const std::vector<double> &similarity_values) {
    std::vector<std::string> sorted = relative_files;
    std::sort(sorted.begin(), sorted.end());
    Fnv1a hash;
    for (const std::string &rel : sorted) {
        hash.update(rel);
        std::ifstream in(root / rel, std::ios::binary);
        if (!in)
            throw IoError("determinism_hash: cannot read " + (root / rel).string());
        char buf[1 << 16];
        while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
            hash.update(buf, static_cast<std::size_t>(in.gcount()));
    }
    for (double v : similarity_values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        hash.update(&bits, sizeof(bits));
    }
    return hash.hex();
}

namespace {

nlohmann::json config_to_json(const BatchConfig &config) {
    nlohmann::json j;
    j["base_seed"] = config.base_seed;
    j["n_qubits"] = config.n_qubits;
    j["depth"] = config.depth;
    auto &modes = j["modes"] = nlohmann::json::array();
    for (texgen::TextureMode mode : config.modes)
        modes.push_back(texgen::to_string(mode));
    j["per_mode_count"] = config.per_mode_count;
    j["image_size"] = {config.width, config.height};
    j["prng"] = config.prng_name;
    j["cluster_k"] = config.cluster_k;
    j["ssim_subset"] = config.ssim_subset;
    return j;
}

nlohmann::json feature_params_json() {
    nlohmann::json j;
    j["radial_bins"] = imgfeat::kRadialBins;
    j["hist_bins"] = imgfeat::kHistBins;
    j["glcm_levels"] = imgfeat::kGlcmLevels;
    auto &offsets = j["glcm_offsets"] = nlohmann::json::array();
    for (const auto &[dx, dy] : imgfeat::kGlcmOffsets)
        offsets.push_back({dx, dy});
    j["canny_sigma"] = imgfeat::kCannySigma;
    j["canny_low"] = imgfeat::kCannyLow;
    j["canny_high"] = imgfeat::kCannyHigh;
    j["haar_levels"] = imgfeat::kHaarLevels;
    j["lbp"] = "8-neighbor radius-1, bit set iff neighbor >= center, clockwise from top-left";
    j["binarization"] = "otsu";
    j["box_sizes"] = "2,4,...,min(side)/4";
    j["ssim_window"] = simil::kSsimWindow;
    j["ssim_k1"] = 0.01;
    j["ssim_k2"] = 0.03;
    j["texture_bands"] = {{"chaotic", {texgen::kChaoticFreqMin, texgen::kChaoticFreqMax}},
                          {"wave", {texgen::kWaveFreqMin, texgen::kWaveFreqMax}},
                          {"ring", {texgen::kRingFreqMin, texgen::kRingFreqMax}},
                          {"blob_sigma", {texgen::kBlobSigmaMin, texgen::kBlobSigmaMax}}};
    return j;
}

} // namespace

std::string BatchManifest::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kManifestSchemaVersion;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp; // excluded from the determinism hash
    j["config"] = config_to_json(config);
    j["feature_params"] = feature_params_json();
    j["determinism_hash"] = determinism_hash;
    j["failed_count"] = failed_count;
    auto &images = j["images"] = nlohmann::json::array();
    for (const ImageRecord &r : records) {
        nlohmann::json e;
        e["mode"] = r.mode;
        e["index"] = r.index;
        e["seed"] = r.seed;
        if (r.error.empty()) {
            e["rgb"] = r.rgb_path;
            e["gray"] = r.gray_path;
            e["csv_row"] = r.csv_row;
            e["topological_charge"] = r.topological_charge;
            e["flags"] = r.flags;
        } else {
            e["error"] = r.error;
        }
        images.push_back(std::move(e));
    }
    j["analysis_outputs"] = analysis_outputs;
    return j.dump(2) + "\n";
}

BatchManifest run_batch(const BatchConfig &config_in) {
    BatchConfig config = config_in;
    if (config.prng_name.empty())
        config.prng_name = rng::kPrngName;
    config.validate();

    fs::create_directories(config.output_dir / "images");
    fs::create_directories(config.output_dir / "panels");

    struct WorkItem {
        texgen::TextureMode mode;
        int index = 0;
        std::uint64_t seed = 0;
    };
    std::vector<WorkItem> items;
    items.reserve(config.modes.size() * static_cast<std::size_t>(config.per_mode_count));
    std::unordered_set<std::uint64_t> seen_seeds;
    for (texgen::TextureMode mode : config.modes) {
        for (int j = 0; j < config.per_mode_count; ++j) {
            const std::uint64_t seed = derive_image_seed(config.base_seed, mode, j);
            if (!seen_seeds.insert(seed).second)
                throw std::runtime_error("run_batch: derived seed collision");
            items.push_back({mode, j, seed});
        }
    }

    struct WorkResult {
        ImageRecord record;
        imgfeat::FeatureVector features;
        GrayImage gray;          // kept only for the SSIM subset
        std::vector<std::string> panel_files;
        bool ok = false;
    };
    std::vector<WorkResult> results(items.size());

    parallel_for_index(items.size(), [&](std::size_t i) {
        const WorkItem &item = items[i];
        WorkResult &res = results[i];
        res.record.mode = texgen::to_string(item.mode);
        res.record.index = item.index;
        res.record.seed = item.seed;
        const std::string stem = image_stem(res.record.mode, item.index);
        try {
            const auto generated = texgen::generate_texture(item.seed, item.mode, config.width,
                                                            config.height, config.n_qubits,
                                                            config.depth);
            res.record.rgb_path = "images/" + stem + "_rgb.png";
            res.record.gray_path = "images/" + stem + "_gray.png";
            write_png(generated.image.rgb, config.output_dir / res.record.rgb_path);
            write_png(generated.image.gray, config.output_dir / res.record.gray_path);
            res.record.topological_charge = texgen::topological_charge(generated.spins);
            res.features = imgfeat::extract_all(generated.image.gray);
            res.record.flags = res.features.flags.to_string();
            if (item.index == 0)
                res.panel_files = imgfeat::write_feature_panels(
                    generated.image.gray, res.features, config.output_dir / "panels", stem);
            if (item.index < config.ssim_subset)
                res.gray = generated.image.gray;
            res.ok = true;
        } catch (const std::exception &e) {
            res.record.error = e.what();
            res.record.rgb_path.clear();
            res.record.gray_path.clear();
        }
    });

    BatchManifest manifest;
    manifest.config = config;
    manifest.tool_version = kToolVersion;
    manifest.timestamp = utc_timestamp();

    std::vector<std::string> hashed_files;

    // One amplitude plot per mode, from the first image's circuit.
    for (texgen::TextureMode mode : config.modes) {
        const std::uint64_t seed = derive_image_seed(config.base_seed, mode, 0);
        const auto state = qstate::simulate(
            qstate::build_random_circuit(seed, config.n_qubits, config.depth));
        const std::string rel = std::string("amplitudes_") + texgen::to_string(mode) + ".png";
        qstate::plot_amplitudes(state, config.output_dir / rel);
        manifest.analysis_outputs.push_back(rel);
        hashed_files.push_back(rel);
    }

    // Feature CSV over successful images, ordered by (mode, index).
    std::vector<FeatureRow> feature_rows;
    for (WorkResult &res : results) {
        if (!res.ok) {
            manifest.failed_count++;
            continue;
        }
        res.record.csv_row = static_cast<int>(feature_rows.size());
        feature_rows.push_back(
            {res.record.mode, res.record.index, res.record.seed, res.features});
    }
    write_feature_csv(feature_rows, config.output_dir / "features.csv");
    manifest.analysis_outputs.push_back("features.csv");
    hashed_files.push_back("features.csv");

    for (const WorkResult &res : results) {
        if (res.ok) {
            hashed_files.push_back(res.record.rgb_path);
            hashed_files.push_back(res.record.gray_path);
            for (const std::string &panel : res.panel_files)
                hashed_files.push_back("panels/" + panel);
        }
        manifest.records.push_back(res.record);
    }

    // Similarity matrix over the first ssim_subset images per mode.
    std::vector<GrayImage> subset_images;
    std::vector<simil::ImageLabel> subset_labels;
    for (const WorkResult &res : results)
        if (res.ok && res.record.index < config.ssim_subset && res.gray.size() > 0) {
            subset_images.push_back(res.gray);
            subset_labels.push_back({res.record.mode, res.record.index});
        }
    std::vector<double> similarity_values;
    if (subset_images.size() >= 2) {
        const auto matrix = simil::pairwise_ssim(subset_images, subset_labels);
        similarity_values = matrix.values;
        simil::write_heatmap(matrix, config.output_dir / "ssim_heatmap.png");
        manifest.analysis_outputs.push_back("ssim_heatmap.png");
        manifest.analysis_outputs.push_back("ssim_heatmap.png.json");
        hashed_files.push_back("ssim_heatmap.png");
    } else if (subset_images.size() == 1) {
        simil::SimilarityMatrix matrix;
        matrix.n = 1;
        matrix.values = {1.0};
        matrix.labels = subset_labels;
        similarity_values = matrix.values;
        simil::write_heatmap(matrix, config.output_dir / "ssim_heatmap.png");
        manifest.analysis_outputs.push_back("ssim_heatmap.png");
        manifest.analysis_outputs.push_back("ssim_heatmap.png.json");
        hashed_files.push_back("ssim_heatmap.png");
    }

    // Embedding + clustering over all successful feature rows.
    if (feature_rows.size() >= 3) {
        std::vector<std::vector<double>> rows;
        rows.reserve(feature_rows.size());
        std::vector<simil::ImageLabel> labels;
        std::vector<std::string> mode_tags;
        for (const FeatureRow &row : feature_rows) {
            rows.push_back(imgfeat::feature_values(row.features));
            labels.push_back({row.mode, row.index});
            mode_tags.push_back(row.mode);
        }
        auto embedding = simil::pca2(simil::standardize(rows).rows);
        const int k = std::min<int>(config.cluster_k, static_cast<int>(rows.size()));
        embedding.cluster_labels =
            simil::kmeans(embedding.points, k, config.base_seed).labels;
        simil::write_embedding_csv(embedding, labels, config.output_dir / "embedding.csv");
        simil::write_scatter(embedding, mode_tags, config.output_dir / "embedding_scatter.png");
        manifest.analysis_outputs.push_back("embedding.csv");
        manifest.analysis_outputs.push_back("embedding_scatter.png");
        manifest.analysis_outputs.push_back("embedding_scatter.png.json");
        hashed_files.push_back("embedding.csv");
        hashed_files.push_back("embedding_scatter.png");
    }

    manifest.determinism_hash =
        determinism_hash(config.output_dir, hashed_files, similarity_values);

    // Manifest invariants before writing: record count and referenced files.
    const std::size_t expected_records = config.modes.size() * config.per_mode_count;
    if (manifest.records.size() != expected_records)
        throw std::runtime_error("run_batch: record count mismatch");
    for (const ImageRecord &r : manifest.records)
        if (r.error.empty()) {
            if (!fs::exists(config.output_dir / r.rgb_path) ||
                !fs::exists(config.output_dir / r.gray_path))
                throw std::runtime_error("run_batch: referenced image missing on disk");
        }

    // Panel files are per-image outputs; record them after the per-image list
    // so the manifest references every file exactly once.
    for (const WorkResult &res : results)
        for (const std::string &panel : res.panel_files)
            manifest.analysis_outputs.push_back("panels/" + panel);

    std::ofstream out(config.output_dir / "manifest.json");
    if (!out)
        throw IoError("cannot write manifest.json");
    out << manifest.to_json();
    out.close();

    return manifest;
}

} // namespace skyrtex::pipeline
