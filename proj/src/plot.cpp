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

#include "skyrtex/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace skyrtex::plot {

const std::array<Color, 8> &palette() {
    static const std::array<Color, 8> kPalette = {{{31, 119, 180},
                                                   {255, 127, 14},
                                                   {44, 160, 44},
                                                   {214, 39, 40},
                                                   {148, 103, 189},
                                                   {140, 86, 75},
                                                   {227, 119, 194},
                                                   {127, 127, 127}}};
    return kPalette;
}

Color colormap(double t) {
    // Piecewise-linear magma-like ramp.
    static const std::array<std::array<double, 3>, 6> stops = {{{0.0, 0.0, 0.015},
                                                                {0.28, 0.06, 0.47},
                                                                {0.71, 0.21, 0.47},
                                                                {0.97, 0.46, 0.36},
                                                                {1.0, 0.77, 0.44},
                                                                {0.99, 0.99, 0.75}}};
    t = std::clamp(t, 0.0, 1.0);
    double scaled = t * (stops.size() - 1);
    std::size_t lo = static_cast<std::size_t>(scaled);
    if (lo >= stops.size() - 1)
        lo = stops.size() - 2;
    double frac = scaled - static_cast<double>(lo);
    auto lerp = [&](int c) {
        double v = stops[lo][c] * (1.0 - frac) + stops[lo + 1][c] * frac;
        return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    return {lerp(0), lerp(1), lerp(2)};
}

Canvas::Canvas(int width, int height, Color background)
    : image(width, height, background.r, background.g, background.b) {}

void Canvas::set(int x, int y, Color c) {
    if (x < 0 || y < 0 || x >= image.width || y >= image.height)
        return;
    image.set(x, y, c.r, c.g, c.b);
}

void Canvas::fill_rect(int x0, int y0, int x1, int y1, Color c) {
    if (x0 > x1)
        std::swap(x0, x1);
    if (y0 > y1)
        std::swap(y0, y1);
    for (int y = std::max(y0, 0); y <= std::min(y1, image.height - 1); ++y)
        for (int x = std::max(x0, 0); x <= std::min(x1, image.width - 1); ++x)
            image.set(x, y, c.r, c.g, c.b);
}

void Canvas::line(int x0, int y0, int x1, int y1, Color c) {
    int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        set(x0, y0, c);
        if (x0 == x1 && y0 == y1)
            break;
        int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void Canvas::marker(int x, int y, Marker shape, int radius, Color c) {
    switch (shape) {
    case Marker::Circle:
        for (int dy = -radius; dy <= radius; ++dy)
            for (int dx = -radius; dx <= radius; ++dx)
                if (dx * dx + dy * dy <= radius * radius)
                    set(x + dx, y + dy, c);
        break;
    case Marker::Square:
        fill_rect(x - radius, y - radius, x + radius, y + radius, c);
        break;
    case Marker::Triangle:
        // Upward triangle: apex at y-radius, base at y+radius.
        for (int dy = -radius; dy <= radius; ++dy) {
            int span = ((dy + radius) * radius) / (2 * radius);
            fill_rect(x - span, y + dy, x + span, y + dy, c);
        }
        break;
    case Marker::Diamond:
        for (int dy = -radius; dy <= radius; ++dy) {
            int span = radius - std::abs(dy);
            fill_rect(x - span, y + dy, x + span, y + dy, c);
        }
        break;
    }
}

void draw_bars(Canvas &canvas, int x0, int y0, int x1, int y1, const std::vector<double> &values,
               double value_max, Color c) {
    if (values.empty() || value_max <= 0.0)
        return;
    int span_x = x1 - x0 + 1;
    int span_y = y1 - y0;
    double bar_w = static_cast<double>(span_x) / values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = std::clamp(values[i] / value_max, 0.0, 1.0);
        int bx0 = x0 + static_cast<int>(i * bar_w);
        int bx1 = x0 + static_cast<int>((i + 1) * bar_w) - 1;
        if (bx1 < bx0)
            bx1 = bx0;
        int h = static_cast<int>(std::lround(v * span_y));
        if (h > 0)
            canvas.fill_rect(bx0, y1 - h + 1, bx1, y1, c);
    }
}

void draw_series(Canvas &canvas, int x0, int y0, int x1, int y1, const std::vector<double> &values,
                 Color c) {
    if (values.size() < 2)
        return;
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    double range = hi - lo;
    if (range <= 0.0)
        range = 1.0;
    int prev_x = 0, prev_y = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        int px = x0 + static_cast<int>(std::lround(static_cast<double>(i) * (x1 - x0) /
                                                   (values.size() - 1)));
        int py = y1 - static_cast<int>(std::lround((values[i] - lo) / range * (y1 - y0)));
        if (i > 0)
            canvas.line(prev_x, prev_y, px, py, c);
        prev_x = px;
        prev_y = py;
    }
}

RgbImage render_raster(const GrayImage &data, bool use_colormap) {
    double lo = data.pix.empty() ? 0.0 : *std::min_element(data.pix.begin(), data.pix.end());
    double hi = data.pix.empty() ? 1.0 : *std::max_element(data.pix.begin(), data.pix.end());
    double range = hi - lo;
    if (range <= 0.0)
        range = 1.0;
    RgbImage out(data.width, data.height);
    for (int y = 0; y < data.height; ++y) {
        for (int x = 0; x < data.width; ++x) {
            double t = (data.at(x, y) - lo) / range;
            if (use_colormap) {
                Color c = colormap(t);
                out.set(x, y, c.r, c.g, c.b);
            } else {
                auto g = static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
                out.set(x, y, g, g, g);
            }
        }
    }
    return out;
}

} // namespace skyrtex::plot
