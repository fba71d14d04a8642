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

/// Minimal deterministic raster plotting (bars, polylines, markers,
/// colormaps). No text: value ranges live in sidecar JSON files.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skyrtex/image.hpp"

namespace skyrtex::plot {

struct Color {
    std::uint8_t r = 0, g = 0, b = 0;
};

inline constexpr Color kWhite{255, 255, 255};
inline constexpr Color kBlack{0, 0, 0};
inline constexpr Color kAxisGray{160, 160, 160};
inline constexpr Color kBarBlue{70, 120, 180};
inline constexpr Color kBarOrange{230, 140, 40};

/// Categorical palette for cluster coloring (8 entries, cycled).
const std::array<Color, 8> &palette();

/// Perceptual dark-to-light colormap for heatmaps, t in [0,1].
Color colormap(double t);

struct Canvas {
    explicit Canvas(int width, int height, Color background = kWhite);

    void set(int x, int y, Color c);               // clipped
    void fill_rect(int x0, int y0, int x1, int y1, Color c); // inclusive corners, clipped
    void line(int x0, int y0, int x1, int y1, Color c);      // Bresenham

    enum class Marker { Circle, Square, Triangle, Diamond };
    void marker(int x, int y, Marker shape, int radius, Color c);

    RgbImage image;
};

/// Vertical bars over [0, max(values)] (or a forced max), bottom-aligned.
void draw_bars(Canvas &canvas, int x0, int y0, int x1, int y1,
               const std::vector<double> &values, double value_max, Color c);

/// Polyline of values over their min/max range.
void draw_series(Canvas &canvas, int x0, int y0, int x1, int y1,
                 const std::vector<double> &values, Color c);

/// Grayscale raster of arbitrary-range data, min-max normalized.
RgbImage render_raster(const GrayImage &data, bool use_colormap);

} // namespace skyrtex::plot
