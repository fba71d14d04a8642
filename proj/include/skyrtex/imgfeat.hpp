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
 * Grayscale texture descriptors, panel A (radial profile, FFT spectrum, Hu
 * moments, GLCM, fractal dimension) and panel B (histogram, Canny edges, 2D
 * autocorrelation, Haar approximation, LBP).
 *
 * All extractors are pure and deterministic. Parameter defaults below are
 * fixed project-wide and echoed into batch manifests.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "skyrtex/image.hpp"

namespace skyrtex::imgfeat {

inline constexpr int kRadialBins = 32;
inline constexpr int kHistBins = 64;
inline constexpr int kGlcmLevels = 8;
inline constexpr std::array<std::pair<int, int>, 4> kGlcmOffsets = {
    {{1, 0}, {0, 1}, {1, 1}, {1, -1}}}; // (dx, dy)
inline constexpr double kCannySigma = 1.4;
inline constexpr double kCannyLow = 0.1;  // relative to max gradient magnitude
inline constexpr double kCannyHigh = 0.3;
inline constexpr int kHaarLevels = 1;
inline constexpr int kLbpBins = 256;
/// Box-counting anisotropy cap: reported when the power spectrum is
/// effectively one-dimensional (smallest eigenvalue ~ 0).
inline constexpr double kAnisotropyCap = 1e12;

/// Marks sub-features that degenerated on this image (and were recorded as
/// 0/fallback rather than silently mixed into valid values).
struct FeatureFlags {
    bool hu = false;
    bool acf = false;
    bool glcm_correlation = false;
    bool fractal_dim = false;
    bool anisotropy = false;

    bool any() const { return hu || acf || glcm_correlation || fractal_dim || anisotropy; }
    std::string to_string() const;           // "hu|acf", "-" when empty
    static FeatureFlags parse(std::string_view text);

    friend bool operator==(const FeatureFlags &, const FeatureFlags &) = default;
};

struct FftStats {
    double spectral_centroid = 0.0; // cycles/image, power-weighted mean |k| over non-DC bins
    double anisotropy = 1.0;        // lambda_max / lambda_min of the spectral second moment
};

struct Spectrum {
    GrayImage log_power; // log1p(|F|^2), DC shifted to center, normalized to [0,1] for display
    FftStats stats;
};

struct GlcmFeatures {
    double contrast = 0.0;
    double energy = 0.0;
    double homogeneity = 0.0;
    double correlation = 0.0;
};

struct GlcmResult {
    std::vector<GlcmFeatures> per_offset;
    bool correlation_degenerate = false; // zero gray-level variance, correlation forced to 0
};

struct EdgeResult {
    std::vector<std::uint8_t> edges; // row-major 0/1 map
    int width = 0;
    int height = 0;
    double density = 0.0; // edge pixels / all pixels
};

struct AcfResult {
    GrayImage acf;        // circular autocorrelation, acf(0,0) = 1, lags wrap
    double decay_x = 0.0; // first lag with acf < 1/e along +x, capped at width/2
    double decay_y = 0.0;
};

struct HaarBands {
    GrayImage ll, lh, hl, hh;
};

struct HaarResult {
    GrayImage ll_display; // LL band upsampled back to the input size
    double energy_ll = 0.0; // energy(LL) / energy(all bands)
};

/// Mean gray per radial bin from the image center; empty bins inherit the
/// previous bin's value so profiles stay plottable.
std::vector<double> radial_profile(const GrayImage &gray, int n_bins);

/// 2D power spectrum statistics. Constant images give centroid 0.
Spectrum fft_spectrum(const GrayImage &gray);

/// The seven Hu invariants of the unit-mass intensity distribution,
/// reported as sign(h)*log10(|h| + 1e-30). Normalizing total mass to 1
/// before the central-moment powers makes the values invariant to uniform
/// intensity scaling as well as to translation and rotation.
/// Throws DegenerateInputError when the image has zero total mass.
std::array<double, 7> hu_moments(const GrayImage &gray);

/// Symmetric normalized co-occurrence features per offset after uniform
/// quantization to `levels` gray levels.
GlcmResult glcm_features(const GrayImage &gray, int levels = kGlcmLevels,
                         const std::vector<std::pair<int, int>> &offsets = {kGlcmOffsets.begin(),
                                                                            kGlcmOffsets.end()});

/// Box-counting dimension of the Otsu-binarized foreground, box sizes
/// 2, 4, ..., min(width,height)/4. Throws DegenerateInputError when the
/// foreground is empty or covers every pixel.
double fractal_dimension(const GrayImage &gray);

/// Uniform-width histogram on [0,1]; the last bin is right-closed.
std::vector<std::int64_t> pixel_histogram(const GrayImage &gray, int bins = kHistBins);

/// Gaussian blur, Sobel gradients, non-maximum suppression, hysteresis with
/// thresholds relative to the max gradient magnitude.
EdgeResult canny_edges(const GrayImage &gray, double sigma = kCannySigma,
                       double low = kCannyLow, double high = kCannyHigh);

/// Mean-subtracted circular autocorrelation via the Wiener-Khinchin
/// identity. Throws DegenerateInputError for a constant image.
AcfResult autocorrelation2d(const GrayImage &gray);

/// One orthonormal 2D Haar analysis step (dimensions must be even).
HaarBands haar_decompose(const GrayImage &gray);

/// Exact inverse of haar_decompose.
GrayImage haar_reconstruct(const HaarBands &bands);

/// LL-band energy fraction after `levels` analysis steps. Throws
/// std::invalid_argument when the dimensions are not divisible by 2^levels.
HaarResult haar_approx(const GrayImage &gray, int levels = kHaarLevels);

/// 8-neighbor radius-1 LBP histogram over interior pixels, normalized to
/// sum 1. Bit b of a code is set iff neighbor b >= center, neighbors
/// ordered clockwise from the top-left (bit 0 = top-left, bit 1 = top, ...).
std::vector<double> lbp_histogram(const GrayImage &gray);

struct FeatureVector {
    std::vector<double> radial_profile; // kRadialBins
    FftStats fft;
    std::array<double, 7> hu{};
    std::vector<GlcmFeatures> glcm; // one per kGlcmOffsets entry
    double fractal_dim = 0.0;
    std::vector<std::int64_t> hist; // kHistBins, sums to pixel count
    double edge_density = 0.0;
    double acf_decay_x = 0.0;
    double acf_decay_y = 0.0;
    double wavelet_energy_ll = 0.0;
    std::vector<double> lbp_hist; // kLbpBins, sums to 1
    FeatureFlags flags;
};

/// Runs every extractor with the project defaults. Degenerate sub-features
/// are flagged and recorded as 0 instead of aborting the whole vector.
/// Throws std::invalid_argument for images smaller than 16x16.
FeatureVector extract_all(const GrayImage &gray);

/// Flat numeric view of a FeatureVector in the fixed CSV column order
/// (everything except the flags). Constant dimension for fixed image size.
std::vector<double> feature_values(const FeatureVector &features);

/// Column names matching feature_values.
std::vector<std::string> feature_column_names();

/// Inverse of feature_values (flags excluded). Throws std::invalid_argument
/// on a length mismatch.
FeatureVector feature_vector_from_values(const std::vector<double> &values);

/// Writes the per-image panel figures (radial profile, spectrum, ACF, LL
/// band, edge map, pixel histogram, LBP histogram) as
/// <stem>_radial.png, <stem>_spectrum.png, ... under `directory`.
/// Returns the filenames written.
std::vector<std::string> write_feature_panels(const GrayImage &gray, const FeatureVector &features,
                                              const std::filesystem::path &directory,
                                              const std::string &stem);

} // namespace skyrtex::imgfeat
