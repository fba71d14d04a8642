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

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace skyrtex {

/// Row-major raster of doubles. Used both for grayscale images (values in
/// [0,1]) and for intermediate scalar fields (values in [-1,1]); the valid
/// range is part of each function's contract, not of the type.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pix; // size width*height, index y*width + x

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), pix(static_cast<std::size_t>(w) * h, fill) {}

    double &at(int x, int y) { return pix[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pix[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return pix.size(); }
};

/// A scalar field is the same raster, conventionally in [-1, 1].
using ScalarField = GrayImage;

/// Row-major 8-bit RGB raster.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pix; // size 3*width*height, RGB interleaved

    RgbImage() = default;
    RgbImage(int w, int h, std::uint8_t r = 0, std::uint8_t g = 0, std::uint8_t b = 0)
        : width(w), height(h), pix(static_cast<std::size_t>(3) * w * h) {
        for (std::size_t i = 0; i < pix.size(); i += 3) {
            pix[i] = r;
            pix[i + 1] = g;
            pix[i + 2] = b;
        }
    }

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        pix[i] = r;
        pix[i + 1] = g;
        pix[i + 2] = b;
    }
};

/// Writes an 8-bit RGB PNG. Deterministic: equal pixels give equal bytes.
void write_png(const RgbImage &image, const std::filesystem::path &path);

/// Writes an 8-bit grayscale PNG; values are clamped to [0,1] and quantized.
void write_png(const GrayImage &image, const std::filesystem::path &path);

/// Reads a PNG as grayscale in [0,1]. RGB inputs are converted with the
/// Rec.601 luma weights; 16-bit channels are reduced to 8.
GrayImage read_png_gray(const std::filesystem::path &path);

/// Reads a PNG as 8-bit RGB (grayscale inputs are replicated per channel).
RgbImage read_png_rgb(const std::filesystem::path &path);

} // namespace skyrtex
