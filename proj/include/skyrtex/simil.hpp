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
 * Pairwise SSIM, PCA to two components, and k-means clustering.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skyrtex/image.hpp"

namespace skyrtex::simil {

// SSIM constants for unit dynamic range (K1 = 0.01, K2 = 0.03, L = 1),
// uniform 8x8 windows at stride 1.
inline constexpr int kSsimWindow = 8;
inline constexpr double kSsimC1 = 0.01 * 0.01;
inline constexpr double kSsimC2 = 0.03 * 0.03;

/// Mean local SSIM over sliding windows; 1.0 exactly for identical images,
/// symmetric in its arguments to the bit. Throws std::invalid_argument on
/// dimension mismatch.
double ssim(const GrayImage &a, const GrayImage &b);

struct ImageLabel {
    std::string mode;
    int index = 0;
};

struct SimilarityMatrix {
    int n = 0;
    std::vector<double> values; // row-major n*n, unit diagonal, symmetric
    std::vector<ImageLabel> labels;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

SimilarityMatrix pairwise_ssim(const std::vector<GrayImage> &images,
                               const std::vector<ImageLabel> &labels);

/// Linear-colormap heatmap of the matrix; the mapped value range and labels
/// go to `<path>.json` so the plot stays self-describing without text
/// rendering.
void write_heatmap(const SimilarityMatrix &matrix, const std::filesystem::path &path);

struct StandardizeResult {
    std::vector<std::vector<double>> rows;
    std::vector<bool> zero_variance; // flagged dimensions, left at 0
};

/// Per-dimension zero mean / unit variance (population variance).
StandardizeResult standardize(const std::vector<std::vector<double>> &rows);

struct Embedding2D {
    std::vector<std::array<double, 2>> points;       // centered data projected on components
    std::array<std::vector<double>, 2> components;   // orthonormal rows, length D
    std::array<double, 2> explained_variance{};      // descending, sample covariance eigenvalues
    std::vector<int> cluster_labels;                 // filled by kmeans, empty until then
};

/// Top-2 eigenpairs of the sample covariance via cyclic Jacobi; component
/// signs fixed so each row's largest-magnitude entry is positive.
/// Throws std::invalid_argument when rows.size() < 3 or dimension < 2.
Embedding2D pca2(const std::vector<std::vector<double>> &rows);

struct KmeansResult {
    std::vector<int> labels;
    std::vector<std::array<double, 2>> centroids;
    std::vector<double> objective_trace; // within-cluster sum of squares per iteration
    int iterations = 0;
};

/// k-means++ initialization from `seed`, then Lloyd iterations to an
/// assignment fixpoint (or max_iter). Deterministic in seed.
/// Throws std::invalid_argument when k < 1 or k > points.size().
KmeansResult kmeans(const std::vector<std::array<double, 2>> &points, int k, std::uint64_t seed,
                    int max_iter = 100);

/// Scatter of the embedding, colored by cluster label and glyphed by mode
/// tag; axis ranges go to `<path>.json`.
void write_scatter(const Embedding2D &embedding, const std::vector<std::string> &mode_tags,
                   const std::filesystem::path &path);

/// embedding/cluster rows as CSV: mode,index,pc1,pc2,cluster.
void write_embedding_csv(const Embedding2D &embedding, const std::vector<ImageLabel> &labels,
                         const std::filesystem::path &path);

} // namespace skyrtex::simil
