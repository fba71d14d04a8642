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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skyrtex/errors.hpp"
#include "skyrtex/pipeline.hpp"
#include "skyrtex/rng.hpp"

namespace skyrtex::pipeline {

namespace {

struct SizeOption {
    int width = 256;
    int height = 256;
};

// "256" or "256x256".
SizeOption parse_size(const std::string &text) {
    SizeOption size;
    const std::size_t x = text.find('x');
    try {
        if (x == std::string::npos) {
            size.width = size.height = std::stoi(text);
        } else {
            size.width = std::stoi(text.substr(0, x));
            size.height = std::stoi(text.substr(x + 1));
        }
    } catch (const std::exception &) {
        throw CLI::ValidationError("--size", "expected WIDTHxHEIGHT or a single integer");
    }
    if (size.width < 1 || size.height < 1)
        throw CLI::ValidationError("--size", "dimensions must be positive");
    return size;
}

std::vector<texgen::TextureMode> parse_modes(const std::vector<std::string> &names) {
    if (names.empty())
        return {texgen::kAllModes.begin(), texgen::kAllModes.end()};
    std::vector<texgen::TextureMode> modes;
    for (const std::string &name : names) {
        const auto mode = texgen::mode_from_string(name);
        if (!mode)
            throw CLI::ValidationError("--mode",
                                       "unknown mode '" + name +
                                           "' (chaotic, layered, ring, wave)");
        modes.push_back(*mode);
    }
    return modes;
}

int cmd_generate(std::uint64_t seed, const std::vector<std::string> &mode_names, int count,
                 const std::string &size_text, const std::string &out_dir, int qubits, int depth,
                 bool dump_spins) {
    const SizeOption size = parse_size(size_text);
    const auto modes = parse_modes(mode_names);
    std::filesystem::create_directories(out_dir);
    for (texgen::TextureMode mode : modes) {
        for (int j = 0; j < count; ++j) {
            const std::uint64_t image_seed = derive_image_seed(seed, mode, j);
            const auto generated =
                texgen::generate_texture(image_seed, mode, size.width, size.height, qubits, depth);
            char stem[64];
            std::snprintf(stem, sizeof(stem), "%s_%03d", texgen::to_string(mode), j);
            const std::filesystem::path base = std::filesystem::path(out_dir) / stem;
            write_png(generated.image.rgb, base.string() + "_rgb.png");
            write_png(generated.image.gray, base.string() + "_gray.png");
            if (dump_spins)
                texgen::dump_spin_field(generated.spins, base.string() + "_spins.bin");
            std::cout << base.string() << "_rgb.png  Q="
                      << texgen::topological_charge(generated.spins) << "\n";
        }
    }
    return 0;
}

int cmd_features(const std::string &image_path, const std::string &out_dir) {
    const GrayImage gray = read_png_gray(image_path);
    const auto features = imgfeat::extract_all(gray);

    FeatureRow row;
    row.mode = "file";
    row.index = 0;
    row.seed = 0;
    row.features = features;

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_feature_csv({row}, std::filesystem::path(out_dir) / "features.csv");
        const std::string stem = std::filesystem::path(image_path).stem().string();
        imgfeat::write_feature_panels(gray, features, out_dir, stem);
        std::cout << "wrote features.csv and panels to " << out_dir << "\n";
    } else {
        // CSV to stdout: header line, then the row.
        std::cout << "mode,index,seed";
        for (const std::string &name : imgfeat::feature_column_names())
            std::cout << ',' << name;
        std::cout << ",flags\n" << row.mode << ",0,0";
        char buf[64];
        for (double v : imgfeat::feature_values(features)) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            std::cout << ',' << buf;
        }
        std::cout << ',' << features.flags.to_string() << "\n";
    }
    return 0;
}

int cmd_compare(const std::string &path_a, const std::string &path_b) {
    const GrayImage a = read_png_gray(path_a);
    const GrayImage b = read_png_gray(path_b);
    std::printf("%.6f\n", simil::ssim(a, b));
    return 0;
}

int cmd_embed(const std::string &csv_path, const std::string &out_dir, int k,
              std::uint64_t seed) {
    const auto rows = read_feature_csv(csv_path);
    if (rows.size() < 3)
        throw std::invalid_argument("embed: need at least 3 feature rows");

    std::vector<std::vector<double>> values;
    std::vector<simil::ImageLabel> labels;
    std::vector<std::string> mode_tags;
    for (const FeatureRow &row : rows) {
        values.push_back(imgfeat::feature_values(row.features));
        labels.push_back({row.mode, row.index});
        mode_tags.push_back(row.mode);
    }
    auto embedding = simil::pca2(simil::standardize(values).rows);
    const int effective_k = std::min<int>(k, static_cast<int>(rows.size()));
    embedding.cluster_labels = simil::kmeans(embedding.points, effective_k, seed).labels;

    std::filesystem::create_directories(out_dir);
    simil::write_embedding_csv(embedding, labels, std::filesystem::path(out_dir) / "embedding.csv");
    simil::write_scatter(embedding, mode_tags,
                         std::filesystem::path(out_dir) / "embedding_scatter.png");
    std::cout << "explained variance: " << embedding.explained_variance[0] << ", "
              << embedding.explained_variance[1] << "\n";
    return 0;
}

int cmd_reproduce(std::uint64_t seed, const std::vector<std::string> &mode_names, int count,
                  const std::string &size_text, const std::string &out_dir, int qubits, int depth,
                  int k, int ssim_subset) {
    BatchConfig config;
    config.base_seed = seed;
    config.n_qubits = qubits;
    config.depth = depth;
    config.modes = parse_modes(mode_names);
    config.per_mode_count = count;
    const SizeOption size = parse_size(size_text);
    config.width = size.width;
    config.height = size.height;
    config.output_dir = out_dir;
    config.cluster_k = k;
    config.ssim_subset = ssim_subset;

    const BatchManifest manifest = run_batch(config);
    std::cout << manifest.records.size() - manifest.failed_count << " images written to "
              << out_dir << "\n"
              << "determinism hash: " << manifest.determinism_hash << "\n";
    if (manifest.failed_count > 0) {
        std::cerr << manifest.failed_count << " image(s) failed; see manifest.json\n";
        return 1;
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Seeded quantum-circuit textures and their feature/similarity analysis"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::vector<std::string> mode_names;
    int count = 1;
    std::string size_text = "256x256";
    std::string out_dir;
    int qubits = 6;
    int depth = 6;
    int cluster_k = 4;
    int ssim_subset = 8;
    bool dump_spins = false;
    std::string image_a, image_b, csv_path;

    auto *generate = app.add_subcommand("generate", "Generate texture PNGs");
    generate->add_option("--seed", seed, "Base seed")->capture_default_str();
    generate->add_option("--mode", mode_names, "Texture mode(s); default all four")
        ->expected(-1);
    generate->add_option("--count", count, "Images per mode")->capture_default_str();
    generate->add_option("--size", size_text, "Image size, WxH or a single integer")
        ->capture_default_str();
    generate->add_option("--out", out_dir, "Output directory")->default_val(".");
    generate->add_option("--qubits", qubits, "Circuit qubit count")->capture_default_str();
    generate->add_option("--depth", depth, "Circuit depth")->capture_default_str();
    generate->add_flag("--dump-spins", dump_spins, "Also dump raw spin fields (f32 binary)");

    auto *features = app.add_subcommand("features", "Extract the feature panel of one image");
    features->add_option("image", image_a, "Input PNG")->required();
    features->add_option("--out", out_dir, "Write features.csv and panel PNGs here");

    auto *compare = app.add_subcommand("compare", "Print the SSIM of two images");
    compare->add_option("image_a", image_a, "First PNG")->required();
    compare->add_option("image_b", image_b, "Second PNG")->required();

    auto *embed = app.add_subcommand("embed", "PCA embedding + k-means over a feature CSV");
    embed->add_option("features_csv", csv_path, "features.csv from a batch run")->required();
    embed->add_option("--out", out_dir, "Output directory")->default_val(".");
    embed->add_option("--k", cluster_k, "Cluster count")->capture_default_str();
    embed->add_option("--seed", seed, "k-means seed")->capture_default_str();

    auto *reproduce = app.add_subcommand(
        "reproduce", "Full batch: 4 modes x 50 images, features, SSIM, embedding");
    reproduce->add_option("--seed", seed, "Base seed")->capture_default_str();
    reproduce->add_option("--mode", mode_names, "Texture mode(s); default all four")
        ->expected(-1);
    reproduce->add_option("--count", count, "Images per mode")->default_val(50);
    reproduce->add_option("--size", size_text, "Image size, WxH or a single integer")
        ->capture_default_str();
    reproduce->add_option("--out", out_dir, "Output directory")->required();
    reproduce->add_option("--qubits", qubits, "Circuit qubit count")->capture_default_str();
    reproduce->add_option("--depth", depth, "Circuit depth")->capture_default_str();
    reproduce->add_option("--k", cluster_k, "Cluster count")->capture_default_str();
    reproduce->add_option("--ssim-subset", ssim_subset, "Images per mode in the SSIM matrix")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (generate->parsed())
            return cmd_generate(seed, mode_names, count, size_text, out_dir, qubits, depth,
                                dump_spins);
        if (features->parsed())
            return cmd_features(image_a, out_dir);
        if (compare->parsed())
            return cmd_compare(image_a, image_b);
        if (embed->parsed())
            return cmd_embed(csv_path, out_dir, cluster_k, seed);
        if (reproduce->parsed())
            return cmd_reproduce(seed, mode_names, count, size_text, out_dir, qubits, depth,
                                 cluster_k, ssim_subset);
    } catch (const CLI::ValidationError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace skyrtex::pipeline
