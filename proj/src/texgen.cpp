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

#include "skyrtex/texgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "skyrtex/errors.hpp"
#include "skyrtex/rng.hpp"

namespace skyrtex::texgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Substream keys separating the two scalar fields of one texture.
constexpr std::uint64_t kFieldUKey = 0x746578752d666c64ULL;
constexpr std::uint64_t kFieldVKey = 0x746578762d666c64ULL;

struct TermDraws {
    double dir_x = 0.0, dir_y = 0.0; // plane-wave direction (chaotic/wave)
    double freq = 0.0;               // cycles/image
    double center_x = 0.0, center_y = 0.0; // normalized [0,1]^2 (layered/ring)
    double sigma_px = 0.0;                 // blob width in pixels (layered)
};

// Per-term auxiliary draws from the substream keyed by (seed, i). The draw
// order is fixed per mode and must not change: it is part of the
// reproducibility contract.
TermDraws draw_term(TextureMode mode, std::uint64_t seed, std::size_t term, int width,
                    int height) {
    rng::Xoshiro256 gen(rng::mix_seed(seed, term));
    TermDraws d;
    switch (mode) {
    case TextureMode::Chaotic:
    case TextureMode::Wave: {
        const double direction = kTwoPi * gen.uniform();
        d.dir_x = std::cos(direction);
        d.dir_y = std::sin(direction);
        const bool high_band = mode == TextureMode::Chaotic;
        d.freq = high_band ? gen.uniform(kChaoticFreqMin, kChaoticFreqMax)
                           : gen.uniform(kWaveFreqMin, kWaveFreqMax);
        break;
    }
    case TextureMode::Layered:
        d.center_x = gen.uniform();
        d.center_y = gen.uniform();
        d.sigma_px = gen.uniform(kBlobSigmaMin, kBlobSigmaMax) * std::min(width, height);
        break;
    case TextureMode::Ring:
        d.center_x = gen.uniform();
        d.center_y = gen.uniform();
        d.freq = gen.uniform(kRingFreqMin, kRingFreqMax);
        break;
    }
    return d;
}

void rescale_to_unit_range(std::vector<double> &values) {
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    const double range = hi - lo;
    if (range < 1e-300) {
        std::fill(values.begin(), values.end(), 0.0);
        return;
    }
    for (double &v : values)
        v = 2.0 * (v - lo) / range - 1.0;
}

// HSL with saturation 1 -> RGB bytes.
void hsl_to_rgb(double hue_deg, double lightness, std::uint8_t out[3]) {
    const double c = 1.0 - std::abs(2.0 * lightness - 1.0);
    const double hp = hue_deg / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) {
        r = c; g = x;
    } else if (hp < 2) {
        r = x; g = c;
    } else if (hp < 3) {
        g = c; b = x;
    } else if (hp < 4) {
        g = x; b = c;
    } else if (hp < 5) {
        r = x; b = c;
    } else {
        r = c; b = x;
    }
    const double m = lightness - c / 2.0;
    out[0] = static_cast<std::uint8_t>(std::lround(std::clamp(r + m, 0.0, 1.0) * 255.0));
    out[1] = static_cast<std::uint8_t>(std::lround(std::clamp(g + m, 0.0, 1.0) * 255.0));
    out[2] = static_cast<std::uint8_t>(std::lround(std::clamp(b + m, 0.0, 1.0) * 255.0));
}

void append_u32_le(std::string &out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

} // namespace

const char *to_string(TextureMode mode) {
    switch (mode) {
    case TextureMode::Chaotic:
        return "chaotic";
    case TextureMode::Layered:
        return "layered";
    case TextureMode::Ring:
        return "ring";
    case TextureMode::Wave:
        return "wave";
    }
    return "?";
}

std::optional<TextureMode> mode_from_string(std::string_view name) {
    for (TextureMode mode : kAllModes)
        if (name == to_string(mode))
            return mode;
    return std::nullopt;
}

TextureParams params_from_state(const qstate::Statevector &state, TextureMode mode, int width,
                                int height, std::uint64_t seed) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("params_from_state: zero-size image");
    TextureParams params;
    params.mode = mode;
    params.seed = seed;
    params.width = width;
    params.height = height;
    const auto points = qstate::export_amplitudes(state);
    params.weights.reserve(points.size());
    params.phases.reserve(points.size());
    for (const auto &p : points) {
        params.weights.push_back(p.probability);
        params.phases.push_back(p.phase);
    }
    return params;
}

ScalarField render_scalar_field(const TextureParams &params) {
    if (params.width < 1 || params.height < 1)
        throw std::invalid_argument("render_scalar_field: zero-size image");
    if (params.weights.size() != params.phases.size())
        throw std::invalid_argument("render_scalar_field: weights/phases length mismatch");
    const bool all_zero =
        std::all_of(params.weights.begin(), params.weights.end(), [](double w) { return w == 0.0; });
    if (params.weights.empty() || all_zero)
        throw DegenerateInputError("render_scalar_field: all weights are zero");

    const int w = params.width, h = params.height;
    ScalarField field(w, h);

    for (std::size_t i = 0; i < params.weights.size(); ++i) {
        const double weight = params.weights[i];
        if (weight == 0.0)
            continue; // the term's substream is keyed by i, skipping is free
        const double phi = params.phases[i];
        const TermDraws d = draw_term(params.mode, params.seed, i, w, h);

        switch (params.mode) {
        case TextureMode::Chaotic:
        case TextureMode::Wave: {
            const double kx = kTwoPi * d.freq * d.dir_x;
            const double ky = kTwoPi * d.freq * d.dir_y;
            for (int y = 0; y < h; ++y) {
                const double ry = (y + 0.5) / h;
                double *row = field.pix.data() + static_cast<std::size_t>(y) * w;
                for (int x = 0; x < w; ++x) {
                    const double rx = (x + 0.5) / w;
                    row[x] += weight * std::cos(kx * rx + ky * ry + phi);
                }
            }
            break;
        }
        case TextureMode::Layered: {
            const double cx = d.center_x * w;
            const double cy = d.center_y * h;
            const double inv_two_sigma2 = 1.0 / (2.0 * d.sigma_px * d.sigma_px);
            for (int y = 0; y < h; ++y) {
                const double dy = (y + 0.5) - cy;
                double *row = field.pix.data() + static_cast<std::size_t>(y) * w;
                for (int x = 0; x < w; ++x) {
                    const double dx = (x + 0.5) - cx;
                    row[x] += weight * std::exp(-(dx * dx + dy * dy) * inv_two_sigma2);
                }
            }
            break;
        }
        case TextureMode::Ring: {
            const double omega = kTwoPi * d.freq;
            for (int y = 0; y < h; ++y) {
                const double ry = (y + 0.5) / h - d.center_y;
                double *row = field.pix.data() + static_cast<std::size_t>(y) * w;
                for (int x = 0; x < w; ++x) {
                    const double rx = (x + 0.5) / w - d.center_x;
                    row[x] += weight * std::cos(omega * std::sqrt(rx * rx + ry * ry) + phi);
                }
            }
            break;
        }
        }
    }

    rescale_to_unit_range(field.pix);
    return field;
}

SpinField field_to_spins(const ScalarField &u, const ScalarField &v) {
    if (u.width != v.width || u.height != v.height)
        throw std::invalid_argument("field_to_spins: dimension mismatch");
    SpinField field(u.width, u.height);
    for (std::size_t i = 0; i < u.pix.size(); ++i) {
        const double theta = kPi * (u.pix[i] + 1.0) / 2.0;
        const double phi = kPi * (v.pix[i] + 1.0);
        const double st = std::sin(theta);
        field.m[i] = Vec3{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    }
    return field;
}

SpinField skyrmion_ansatz(int width, int height, double center_x, double center_y, double radius,
                          int vorticity, double helicity, int polarity) {
    if (radius <= 0.0)
        throw std::invalid_argument("skyrmion_ansatz: radius must be positive");
    if (center_x < 0 || center_x >= width || center_y < 0 || center_y >= height)
        throw std::invalid_argument("skyrmion_ansatz: center outside the image");
    if (vorticity != 1 && vorticity != -1)
        throw std::invalid_argument("skyrmion_ansatz: vorticity must be +-1");
    if (polarity != 1 && polarity != -1)
        throw std::invalid_argument("skyrmion_ansatz: polarity must be +-1");

    SpinField field(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - center_x;
            const double dy = y - center_y;
            const double rho = std::sqrt(dx * dx + dy * dy);
            // Polar angle ramps over the core region of size 2*radius; the
            // core points opposite the far field.
            const double ramp = std::clamp(1.0 - rho / (2.0 * radius), 0.0, 1.0);
            const double theta = polarity > 0 ? kPi * ramp : kPi * (1.0 - ramp);
            const double psi = vorticity * std::atan2(dy, dx) + helicity;
            const double st = std::sin(theta);
            field.at(x, y) = Vec3{st * std::cos(psi), st * std::sin(psi), std::cos(theta)};
        }
    }
    return field;
}

double topological_charge(const SpinField &field) {
    for (const Vec3 &m : field.m) {
        const double norm = std::sqrt(dot(m, m));
        if (std::abs(norm - 1.0) > 1e-6)
            throw std::invalid_argument("topological_charge: non-unit spin");
    }
    // Berg-Luscher: signed spherical-triangle areas, counterclockwise
    // plaquette orientation in (x, y) index space.
    auto solid_angle = [](const Vec3 &a, const Vec3 &b, const Vec3 &c) {
        const double numer = dot(a, cross(b, c));
        const double denom = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
        return 2.0 * std::atan2(numer, denom);
    };
    double total = 0.0;
    for (int y = 0; y + 1 < field.height; ++y) {
        for (int x = 0; x + 1 < field.width; ++x) {
            const Vec3 &m00 = field.at(x, y);
            const Vec3 &m10 = field.at(x + 1, y);
            const Vec3 &m11 = field.at(x + 1, y + 1);
            const Vec3 &m01 = field.at(x, y + 1);
            total += solid_angle(m00, m10, m11);
            total += solid_angle(m00, m11, m01);
        }
    }
    return total / (4.0 * kPi);
}

TextureImage colorize(const SpinField &field) {
    TextureImage out;
    out.gray = GrayImage(field.width, field.height);
    out.rgb = RgbImage(field.width, field.height);
    for (int y = 0; y < field.height; ++y) {
        for (int x = 0; x < field.width; ++x) {
            const Vec3 &m = field.at(x, y);
            double hue = std::atan2(m.y, m.x) * (180.0 / kPi);
            if (hue < 0.0)
                hue += 360.0;
            if (hue >= 360.0)
                hue = 0.0;
            const double lightness = (m.z + 1.0) / 2.0;
            std::uint8_t rgb[3];
            hsl_to_rgb(hue, lightness, rgb);
            out.rgb.set(x, y, rgb[0], rgb[1], rgb[2]);
            out.gray.at(x, y) = lightness;
        }
    }
    return out;
}

GeneratedTexture generate_texture(std::uint64_t seed, TextureMode mode, int width, int height,
                                  int n_qubits, int depth) {
    const auto circuit = qstate::build_random_circuit(seed, n_qubits, depth);
    const auto state = qstate::simulate(circuit);
    const auto params_u =
        params_from_state(state, mode, width, height, rng::mix_seed(seed, kFieldUKey));
    const auto params_v =
        params_from_state(state, mode, width, height, rng::mix_seed(seed, kFieldVKey));
    const ScalarField u = render_scalar_field(params_u);
    const ScalarField v = render_scalar_field(params_v);
    GeneratedTexture result;
    result.spins = field_to_spins(u, v);
    result.image = colorize(result.spins);
    return result;
}

void dump_spin_field(const SpinField &field, const std::filesystem::path &path) {
    std::string bytes;
    bytes.reserve(12 + field.m.size() * 12);
    append_u32_le(bytes, static_cast<std::uint32_t>(field.width));
    append_u32_le(bytes, static_cast<std::uint32_t>(field.height));
    append_u32_le(bytes, 3);
    auto append_f32 = [&bytes](double v) {
        const float f = static_cast<float>(v);
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        append_u32_le(bytes, u);
    };
    for (const Vec3 &m : field.m) {
        append_f32(m.x);
        append_f32(m.y);
        append_f32(m.z);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("short write: " + path.string());
}

} // namespace skyrtex::texgen
