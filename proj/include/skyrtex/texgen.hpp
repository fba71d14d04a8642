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
 * Amplitude-parameterized spin-texture synthesis.
 *
 * A simulated statevector supplies one weight |c_i|^2 and one phase arg(c_i)
 * per basis state. Each texture mode sums 2^n basis terms over the image
 * plane, two decorrelated scalar fields are folded into a unit-spin field,
 * and the spin field is colorized for export.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skyrtex/image.hpp"
#include "skyrtex/qstate.hpp"

namespace skyrtex::texgen {

enum class TextureMode { Chaotic, Layered, Ring, Wave };

inline constexpr std::array<TextureMode, 4> kAllModes = {
    TextureMode::Chaotic, TextureMode::Layered, TextureMode::Ring, TextureMode::Wave};

const char *to_string(TextureMode mode);
std::optional<TextureMode> mode_from_string(std::string_view name);

// Synthesis constants, fixed for reproducibility and echoed into batch
// manifests. Frequencies are in cycles per image on coordinates normalized
// to [0,1]^2; blob widths are fractions of min(width, height) in pixels.
inline constexpr double kChaoticFreqMin = 8.0;
inline constexpr double kChaoticFreqMax = 32.0;
inline constexpr double kWaveFreqMin = 1.0;
inline constexpr double kWaveFreqMax = 4.0;
inline constexpr double kRingFreqMin = 4.0;
inline constexpr double kRingFreqMax = 16.0;
inline constexpr double kBlobSigmaMin = 0.08;
inline constexpr double kBlobSigmaMax = 0.25;

struct TextureParams {
    TextureMode mode = TextureMode::Chaotic;
    std::vector<double> weights; // |c_i|^2, non-negative, sums to 1
    std::vector<double> phases;  // arg(c_i) in [0, 2*pi)
    std::uint64_t seed = 0;      // keys the per-term auxiliary draws
    int width = 0;
    int height = 0;
};

/// Unit 3-vector, |v| = 1 within 1e-9 wherever a SpinField invariant holds.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct SpinField {
    int width = 0;
    int height = 0;
    std::vector<Vec3> m; // row-major, index y*width + x

    SpinField() = default;
    SpinField(int w, int h, Vec3 fill = {0.0, 0.0, 1.0})
        : width(w), height(h), m(static_cast<std::size_t>(w) * h, fill) {}

    Vec3 &at(int x, int y) { return m[static_cast<std::size_t>(y) * width + x]; }
    const Vec3 &at(int x, int y) const { return m[static_cast<std::size_t>(y) * width + x]; }
};

struct TextureImage {
    GrayImage gray; // (m_z + 1)/2, in [0,1]
    RgbImage rgb;
};

/// weights_i = |c_i|^2, phases_i = arg(c_i) in [0, 2*pi).
/// Throws std::invalid_argument for a zero-size image.
TextureParams params_from_state(const qstate::Statevector &state, TextureMode mode, int width,
                                int height, std::uint64_t seed);

/**
 * Renders the weighted basis-term sum for the params' mode and min-max
 * rescales it to [-1, 1]:
 *   chaotic  sum_i w_i cos(2*pi f_i d_i.r + phi_i),   f_i in [8, 32]
 *   layered  sum_i w_i exp(-|p - c_i|^2 / 2 sigma_i^2), sigma_i in [0.08, 0.25]*min(W,H) px
 *   ring     sum_i w_i cos(2*pi f_i |r - c_i| + phi_i), f_i in [4, 16]
 *   wave     sum_i w_i cos(2*pi f_i d_i.r + phi_i),   f_i in [1, 4]
 * with r = ((x+.5)/W, (y+.5)/H) and every per-term draw (direction d_i,
 * frequency f_i, center c_i, width sigma_i) taken from a substream keyed by
 * (params.seed, i). Throws DegenerateInputError if all weights are zero.
 */
ScalarField render_scalar_field(const TextureParams &params);

/// theta = pi*(u+1)/2, phi = pi*(v+1); m = (sin t cos p, sin t sin p, cos t).
/// Throws std::invalid_argument on dimension mismatch.
SpinField field_to_spins(const ScalarField &u, const ScalarField &v);

/**
 * Axially symmetric single-skyrmion texture: the polar angle ramps linearly
 * from the core to the uniform far field over 2*radius pixels, the in-plane
 * angle is vorticity*atan2(y-cy, x-cx) + helicity. m_z at the core is
 * -polarity, the far field is (0, 0, polarity).
 *
 * Sign convention: with x along columns and y along rows, the topological
 * charge of this texture is -vorticity*polarity.
 */
SpinField skyrmion_ansatz(int width, int height, double center_x, double center_y, double radius,
                          int vorticity, double helicity, int polarity);

/**
 * Lattice topological charge by the signed-solid-angle method: each
 * plaquette is split into triangles (m00,m10,m11) and (m00,m11,m01) and the
 * spherical excess is summed over the grid, divided by 4*pi. Approaches an
 * integer for smooth localized textures; 0 exactly for a uniform field.
 * Throws std::invalid_argument if any spin norm deviates from 1 by > 1e-6.
 */
double topological_charge(const SpinField &field);

/// HSL coloring: hue = atan2(m_y, m_x), lightness = (m_z+1)/2, saturation 1.
/// The gray channel is (m_z+1)/2.
TextureImage colorize(const SpinField &field);

struct GeneratedTexture {
    SpinField spins;
    TextureImage image;
};

/// Full generation chain: build_random_circuit -> simulate ->
/// params_from_state -> two renders (decorrelated substreams) ->
/// field_to_spins -> colorize. Pure in all arguments.
GeneratedTexture generate_texture(std::uint64_t seed, TextureMode mode, int width, int height,
                                  int n_qubits = 6, int depth = 6);

/// Raw dump: header {width, height, 3} as little-endian u32, then
/// row-major (m_x, m_y, m_z) triples as little-endian f32.
void dump_spin_field(const SpinField &field, const std::filesystem::path &path);

} // namespace skyrtex::texgen
