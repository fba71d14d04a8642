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

#include "skyrtex/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <png.h>

#include "skyrtex/errors.hpp"

namespace skyrtex {

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::uint8_t quantize(double v) {
    double c = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

// No tIME/text chunks and fixed compression settings keep the byte stream a
// pure function of the pixels.
void write_png_impl(const std::filesystem::path &path, int width, int height, int color_type,
                    int channels, const std::uint8_t *data) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file)
        throw IoError("cannot open for writing: " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng write error: " + path.string());
    }

    png_init_io(png, file.get());
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(data + static_cast<std::size_t>(y) * width * channels);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

struct DecodedPng {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb; // 3 channels, 8-bit
};

DecodedPng read_png_impl(const std::filesystem::path &path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file)
        throw IoError("cannot open for reading: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png)
        throw IoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng read error: " + path.string());
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    // Normalize everything to 8-bit RGB.
    png_set_strip_16(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    DecodedPng out;
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.rgb.resize(static_cast<std::size_t>(3) * out.width * out.height);

    std::vector<png_bytep> rows(out.height);
    for (int y = 0; y < out.height; ++y)
        rows[y] = out.rgb.data() + static_cast<std::size_t>(y) * out.width * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

} // namespace

void write_png(const RgbImage &image, const std::filesystem::path &path) {
    write_png_impl(path, image.width, image.height, PNG_COLOR_TYPE_RGB, 3, image.pix.data());
}

void write_png(const GrayImage &image, const std::filesystem::path &path) {
    std::vector<std::uint8_t> bytes(image.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = quantize(image.pix[i]);
    write_png_impl(path, image.width, image.height, PNG_COLOR_TYPE_GRAY, 1, bytes.data());
}

GrayImage read_png_gray(const std::filesystem::path &path) {
    DecodedPng decoded = read_png_impl(path);
    GrayImage out(decoded.width, decoded.height);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::uint8_t *p = decoded.rgb.data() + 3 * i;
        if (p[0] == p[1] && p[1] == p[2]) {
            out.pix[i] = p[0] / 255.0;
        } else {
            out.pix[i] = (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]) / 255.0;
        }
    }
    return out;
}

RgbImage read_png_rgb(const std::filesystem::path &path) {
    DecodedPng decoded = read_png_impl(path);
    RgbImage out;
    out.width = decoded.width;
    out.height = decoded.height;
    out.pix = std::move(decoded.rgb);
    return out;
}

} // namespace skyrtex
