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

#include "skyrtex/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "skyrtex/errors.hpp"
#include "skyrtex/plot.hpp"
#include "skyrtex/rng.hpp"

namespace skyrtex::qstate {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;
} // namespace

const char *to_string(GateKind kind) {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CNOT:
        return "CNOT";
    }
    return "?";
}

GateOp make_h(int qubit) { return GateOp{GateKind::H, qubit, -1, 0.0}; }

GateOp make_rotation(GateKind kind, int qubit, double angle) {
    if (kind != GateKind::RX && kind != GateKind::RY && kind != GateKind::RZ)
        throw std::invalid_argument("make_rotation: kind must be RX/RY/RZ");
    return GateOp{kind, qubit, -1, angle};
}

GateOp make_cnot(int control, int target) {
    return GateOp{GateKind::CNOT, control, target, 0.0};
}

void validate_circuit(const CircuitDescription &circuit) {
    if (circuit.n_qubits < 1)
        throw std::invalid_argument("circuit: n_qubits must be positive");
    if (circuit.depth < 0)
        throw std::invalid_argument("circuit: depth must be non-negative");
    if (circuit.layers.size() != static_cast<std::size_t>(circuit.depth))
        throw std::invalid_argument("circuit: layers.size() != depth");
    for (const auto &layer : circuit.layers) {
        for (const auto &op : layer) {
            if (op.q0 < 0 || op.q0 >= circuit.n_qubits)
                throw std::invalid_argument("circuit: qubit index out of range");
            bool rotation = op.kind == GateKind::RX || op.kind == GateKind::RY ||
                            op.kind == GateKind::RZ;
            if (op.kind == GateKind::CNOT) {
                if (op.q1 < 0 || op.q1 >= circuit.n_qubits)
                    throw std::invalid_argument("circuit: CNOT target out of range");
                if (op.q0 == op.q1)
                    throw std::invalid_argument("circuit: CNOT control == target");
            } else if (op.q1 != -1) {
                throw std::invalid_argument("circuit: single-qubit gate with two qubits");
            }
            if (rotation) {
                if (!(op.angle >= 0.0 && op.angle < kTwoPi))
                    throw std::invalid_argument("circuit: rotation angle outside [0, 2*pi)");
            } else if (op.angle != 0.0) {
                throw std::invalid_argument("circuit: non-rotation gate with an angle");
            }
        }
    }
}

CircuitDescription build_random_circuit(std::uint64_t seed, int n_qubits, int depth) {
    if (n_qubits < 1)
        throw std::invalid_argument("build_random_circuit: n_qubits must be positive");
    if (depth < 0)
        throw std::invalid_argument("build_random_circuit: depth must be non-negative");

    CircuitDescription circuit;
    circuit.n_qubits = n_qubits;
    circuit.depth = depth;
    circuit.seed = seed;
    circuit.initial_hadamards = true;
    circuit.layers.reserve(depth);

    rng::Xoshiro256 gen(seed);
    constexpr GateKind kRotations[3] = {GateKind::RX, GateKind::RY, GateKind::RZ};
    for (int layer = 0; layer < depth; ++layer) {
        std::vector<GateOp> ops;
        ops.reserve(n_qubits + n_qubits / 2);
        for (int q = 0; q < n_qubits; ++q) {
            GateKind kind = kRotations[gen.uniform_below(3)];
            double angle = kTwoPi * gen.uniform();
            ops.push_back(make_rotation(kind, q, angle));
        }
        // Linear-entangler brickwork: (q, q+1) for even q in even layers,
        // odd q in odd layers.
        for (int q = layer % 2; q + 1 < n_qubits; q += 2)
            ops.push_back(make_cnot(q, q + 1));
        circuit.layers.push_back(std::move(ops));
    }
    return circuit;
}

Statevector::Statevector(int n_qubits, std::size_t max_amplitudes) : n_qubits_(n_qubits) {
    if (n_qubits < 1)
        throw std::invalid_argument("Statevector: n_qubits must be positive");
    if (n_qubits >= 63 || (std::size_t{1} << n_qubits) > max_amplitudes)
        throw CapacityError("Statevector: 2^" + std::to_string(n_qubits) +
                            " amplitudes exceed the configured cap");
    amps_.assign(std::size_t{1} << n_qubits, c64{0.0, 0.0});
    amps_[0] = c64{1.0, 0.0};
}

void Statevector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_)
        throw std::invalid_argument("Statevector: qubit index out of range");
}

// Applies a 2x2 unitary to every |...0_q...> / |...1_q...> amplitude pair.
// Enumerating i over 2^(n-1) values and splicing the target bit back in
// touches each pair exactly once.
void Statevector::apply_1q(int qubit, c64 u00, c64 u01, c64 u10, c64 u11) {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const std::size_t pairs = amps_.size() >> 1;
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        const std::size_t i1 = i0 | mask;
        const c64 a0 = amps_[i0];
        const c64 a1 = amps_[i1];
        amps_[i0] = u00 * a0 + u01 * a1;
        amps_[i1] = u10 * a0 + u11 * a1;
    }
}

void Statevector::apply_h(int qubit) {
    apply_1q(qubit, {kInvSqrt2, 0}, {kInvSqrt2, 0}, {kInvSqrt2, 0}, {-kInvSqrt2, 0});
}

void Statevector::apply_rx(int qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    apply_1q(qubit, {c, 0}, {0, -s}, {0, -s}, {c, 0});
}

void Statevector::apply_ry(int qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    apply_1q(qubit, {c, 0}, {-s, 0}, {s, 0}, {c, 0});
}

void Statevector::apply_rz(int qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    apply_1q(qubit, {c, -s}, {0, 0}, {0, 0}, {c, s});
}

void Statevector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target)
        throw std::invalid_argument("Statevector: CNOT control == target");
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    // Swap the |c=1,t=0> and |c=1,t=1> amplitudes; iterate over the two free
    // bit groups around min/max of the involved qubits.
    const std::size_t min_mask = std::size_t{1} << std::min(control, target);
    const std::size_t max_mask = std::size_t{1} << (std::max(control, target) - 1);
    const std::size_t lo_mask = min_mask - 1;
    const std::size_t mid_mask = (max_mask - 1) ^ lo_mask;
    const std::size_t hi_mask = ~(max_mask - 1);
    const std::size_t quads = amps_.size() >> 2;
    for (std::size_t i = 0; i < quads; ++i) {
        const std::size_t base = ((i & hi_mask) << 2) | ((i & mid_mask) << 1) | (i & lo_mask);
        std::swap(amps_[base | cmask], amps_[base | cmask | tmask]);
    }
}

void Statevector::apply(const GateOp &op) {
    switch (op.kind) {
    case GateKind::H:
        apply_h(op.q0);
        break;
    case GateKind::RX:
        apply_rx(op.q0, op.angle);
        break;
    case GateKind::RY:
        apply_ry(op.q0, op.angle);
        break;
    case GateKind::RZ:
        apply_rz(op.q0, op.angle);
        break;
    case GateKind::CNOT:
        apply_cnot(op.q0, op.q1);
        break;
    }
}

double Statevector::norm_squared() const {
    double total = 0.0;
    for (const c64 &a : amps_)
        total += std::norm(a);
    return total;
}

Statevector simulate(const CircuitDescription &circuit, std::size_t max_amplitudes) {
    validate_circuit(circuit);
    Statevector state(circuit.n_qubits, max_amplitudes);
    if (circuit.initial_hadamards)
        for (int q = 0; q < circuit.n_qubits; ++q)
            state.apply_h(q);
    for (const auto &layer : circuit.layers)
        for (const auto &op : layer)
            state.apply(op);
    return state;
}

std::vector<AmplitudePoint> export_amplitudes(const Statevector &state) {
    std::vector<AmplitudePoint> points;
    points.reserve(state.dimension());
    for (const c64 &a : state.amplitudes()) {
        double phase = std::atan2(a.imag(), a.real());
        if (phase < 0.0)
            phase += kTwoPi;
        if (phase >= kTwoPi)
            phase = 0.0;
        points.push_back({std::norm(a), phase});
    }
    return points;
}

void plot_amplitudes(const Statevector &state, const std::filesystem::path &path) {
    const auto points = export_amplitudes(state);
    const int n = static_cast<int>(points.size());
    const int bar_w = n <= 64 ? 8 : 4;
    const int margin = 12;
    const int panel_h = 120;
    const int gap = 16;
    const int width = std::max(160, 2 * margin + n * bar_w);
    const int height = 2 * margin + 2 * panel_h + gap;

    plot::Canvas canvas(width, height);
    std::vector<double> magnitudes(points.size()), phases(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        magnitudes[i] = std::sqrt(points[i].probability);
        phases[i] = points[i].phase;
    }

    const int top0 = margin, top1 = margin + panel_h - 1;
    const int bot0 = top1 + gap + 1, bot1 = bot0 + panel_h - 1;
    // Axes lines, then |c_i| against [0,1] and phases against [0,2*pi).
    canvas.line(margin - 2, top1 + 1, width - margin, top1 + 1, plot::kAxisGray);
    canvas.line(margin - 2, bot1 + 1, width - margin, bot1 + 1, plot::kAxisGray);
    plot::draw_bars(canvas, margin, top0, margin + n * bar_w - 1, top1, magnitudes, 1.0,
                    plot::kBarBlue);
    plot::draw_bars(canvas, margin, bot0, margin + n * bar_w - 1, bot1, phases, kTwoPi,
                    plot::kBarOrange);
    write_png(canvas.image, path);
}

} // namespace skyrtex::qstate
