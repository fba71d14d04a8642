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
 * Seeded random quantum circuits and exact dense statevector simulation.
 *
 * Qubit ordering: basis index i carries qubit 0 in its least significant
 * bit, so |q_{n-1} ... q_1 q_0> has index sum(q_k << k).
 */

#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace skyrtex::qstate {

using c64 = std::complex<double>;

/// Simulation refuses statevectors larger than this (2^24 amplitudes).
inline constexpr std::size_t kDefaultAmplitudeCap = std::size_t{1} << 24;

enum class GateKind { H, RX, RY, RZ, CNOT };

const char *to_string(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::H;
    int q0 = 0;         // target qubit; control qubit for CNOT
    int q1 = -1;        // CNOT target, -1 for single-qubit gates
    double angle = 0.0; // rotation angle in [0, 2*pi), 0 for H/CNOT

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

GateOp make_h(int qubit);
GateOp make_rotation(GateKind kind, int qubit, double angle);
GateOp make_cnot(int control, int target);

struct CircuitDescription {
    int n_qubits = 0;
    int depth = 0; // number of brickwork layers, excluding the Hadamard wall
    std::uint64_t seed = 0;
    bool initial_hadamards = false; // H on every qubit before layer 0
    std::vector<std::vector<GateOp>> layers; // layers.size() == depth

    friend bool operator==(const CircuitDescription &, const CircuitDescription &) = default;
};

/// Throws std::invalid_argument if any gate references a qubit outside
/// [0, n_qubits), a CNOT has control == target, an angle lies outside
/// [0, 2*pi), or layers.size() != depth.
void validate_circuit(const CircuitDescription &circuit);

/**
 * Builds the seeded brickwork circuit: a Hadamard wall, then `depth` layers
 * each holding one random rotation per qubit (RX/RY/RZ chosen uniformly,
 * angle uniform in [0, 2*pi)) followed by CNOTs on (q, q+1) for even q in
 * even layers and odd q in odd layers.
 *
 * Identical (seed, n_qubits, depth) always yields an identical circuit.
 */
CircuitDescription build_random_circuit(std::uint64_t seed, int n_qubits, int depth);

/**
 * Dense n-qubit state. Gates are applied in place via strided
 * amplitude-pair updates; no gate matrix is ever materialized.
 */
class Statevector {
  public:
    /// Initializes |0...0>.
    explicit Statevector(int n_qubits, std::size_t max_amplitudes = kDefaultAmplitudeCap);

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<c64> &amplitudes() const { return amps_; }
    c64 amplitude(std::size_t basis_index) const { return amps_[basis_index]; }

    void apply_h(int qubit);
    void apply_rx(int qubit, double theta);
    void apply_ry(int qubit, double theta);
    void apply_rz(int qubit, double theta);
    void apply_cnot(int control, int target);
    void apply(const GateOp &op);

    double norm_squared() const;

  private:
    void apply_1q(int qubit, c64 u00, c64 u01, c64 u10, c64 u11);
    void check_qubit(int qubit) const;

    int n_qubits_;
    std::vector<c64> amps_;
};

/// Runs the circuit on |0...0> and returns the exact final state.
/// Throws CapacityError if 2^n_qubits exceeds `max_amplitudes`.
Statevector simulate(const CircuitDescription &circuit,
                     std::size_t max_amplitudes = kDefaultAmplitudeCap);

struct AmplitudePoint {
    double probability = 0.0; // |c_i|^2
    double phase = 0.0;       // arg(c_i) mapped to [0, 2*pi)
};

/// Probability/phase pairs ordered by basis index.
std::vector<AmplitudePoint> export_amplitudes(const Statevector &state);

/// Writes a bar chart of |c_i| (top panel) and arg(c_i) (bottom panel) as a
/// PNG. Pixel output is a pure function of the state.
void plot_amplitudes(const Statevector &state, const std::filesystem::path &path);

} // namespace skyrtex::qstate
