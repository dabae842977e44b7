// Copyright 2026 The qsurf Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exact statevector simulation of small qubit registers.
 *
 * Basis index convention: qubit 0 is the most significant bit. For an
 * n-qubit register, qubit q maps to bit (n - 1 - q) of the basis index, so
 * |q0 q1 ... q(n-1)> reads left to right as a binary number.
 *
 * Gates are applied in place with stride-pair updates; no 2^n x 2^n matrix
 * is ever formed.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsurf {

using complex_t = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 20;

class QuantumState {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit QuantumState(std::size_t num_qubits)
        : num_qubits_(checked_qubits(num_qubits)),
          amplitudes_(std::size_t{1} << num_qubits_) {
        amplitudes_[0] = complex_t{1.0, 0.0};
    }

    /// Takes ownership of raw amplitudes. The length must be 2^num_qubits;
    /// normalization is the caller's responsibility (see norm()).
    QuantumState(std::size_t num_qubits, std::vector<complex_t> amplitudes)
        : num_qubits_(checked_qubits(num_qubits)),
          amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
            throw std::invalid_argument(
                "amplitude vector length must be 2^num_qubits");
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amplitudes_; }

    [[nodiscard]] const complex_t &operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    /// Euclidean norm of the amplitude vector.
    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Stride between the paired amplitudes of qubit `q`.
    [[nodiscard]] std::size_t stride(std::size_t q) const {
        check_qubit(q);
        return std::size_t{1} << (num_qubits_ - 1 - q);
    }

    void check_qubit(std::size_t q) const {
        if (q >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) +
                                    " out of range for " +
                                    std::to_string(num_qubits_) + "-qubit state");
        }
    }

  private:
    static std::size_t checked_qubits(std::size_t n) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("num_qubits must lie in [1, " +
                                        std::to_string(kMaxQubits) + "], got " +
                                        std::to_string(n));
        }
        return n;
    }

    std::size_t num_qubits_;
    std::vector<complex_t> amplitudes_;
};

[[nodiscard]] inline QuantumState zero_state(std::size_t num_qubits) {
    return QuantumState(num_qubits);
}

enum class GateKind { RX, RY, RZ, H, X, CNOT };

[[nodiscard]] inline const char *to_string(GateKind k) noexcept {
    switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

[[nodiscard]] constexpr bool is_rotation(GateKind k) noexcept {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

struct Gate {
    GateKind kind;
    std::size_t target = 0;
    std::size_t control = 0; // CNOT only
    double angle = 0.0;      // radians; rotations only

    static Gate rx(std::size_t q, double theta) { return {GateKind::RX, q, 0, theta}; }
    static Gate ry(std::size_t q, double theta) { return {GateKind::RY, q, 0, theta}; }
    static Gate rz(std::size_t q, double theta) { return {GateKind::RZ, q, 0, theta}; }
    static Gate h(std::size_t q) { return {GateKind::H, q, 0, 0.0}; }
    static Gate x(std::size_t q) { return {GateKind::X, q, 0, 0.0}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, target, control, 0.0};
    }
};

using Mat2 = std::array<std::array<complex_t, 2>, 2>;
using Mat4 = std::array<std::array<complex_t, 4>, 4>;

/// 2x2 matrix of a single-qubit gate kind in the {|0>, |1>} basis.
[[nodiscard]] inline Mat2 single_qubit_matrix(const Gate &g) {
    using namespace std::complex_literals;
    const double c = std::cos(g.angle / 2.0);
    const double s = std::sin(g.angle / 2.0);
    switch (g.kind) {
    case GateKind::RX:
        return {{{c, -1i * s}, {-1i * s, c}}};
    case GateKind::RY:
        return {{{c, -s}, {s, c}}};
    case GateKind::RZ:
        return {{{std::polar(1.0, -g.angle / 2.0), 0.0},
                 {0.0, std::polar(1.0, g.angle / 2.0)}}};
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        return {{{r, r}, {r, -r}}};
    }
    case GateKind::X:
        return {{{0.0, 1.0}, {1.0, 0.0}}};
    case GateKind::CNOT:
        break;
    }
    throw std::invalid_argument("single_qubit_matrix: CNOT is a two-qubit gate");
}

/// 4x4 matrix of CNOT in the {|c t>} basis with the control as the high bit.
[[nodiscard]] inline Mat4 cnot_matrix() {
    Mat4 m{};
    m[0][0] = 1.0;
    m[1][1] = 1.0;
    m[2][3] = 1.0;
    m[3][2] = 1.0;
    return m;
}

namespace detail {

inline void validate(const QuantumState &s, const Gate &g) {
    s.check_qubit(g.target);
    if (g.kind == GateKind::CNOT) {
        s.check_qubit(g.control);
        if (g.control == g.target) {
            throw std::invalid_argument("CNOT control and target must differ");
        }
    }
}

inline void apply_single(std::span<complex_t> amps, std::size_t stride,
                         const Mat2 &m) {
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const complex_t a0 = amps[k];
            const complex_t a1 = amps[k + stride];
            amps[k] = m[0][0] * a0 + m[0][1] * a1;
            amps[k + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

} // namespace detail

/// In-place U|psi>.
inline void apply_gate_inplace(QuantumState &state, const Gate &gate) {
    detail::validate(state, gate);
    auto amps = state.amplitudes();
    const std::size_t t = state.stride(gate.target);

    switch (gate.kind) {
    case GateKind::X:
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & t) == 0) {
                std::swap(amps[i], amps[i | t]);
            }
        }
        return;
    case GateKind::CNOT: {
        const std::size_t c = state.stride(gate.control);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & c) != 0 && (i & t) == 0) {
                std::swap(amps[i], amps[i | t]);
            }
        }
        return;
    }
    case GateKind::RZ: {
        const complex_t p0 = std::polar(1.0, -gate.angle / 2.0);
        const complex_t p1 = std::polar(1.0, gate.angle / 2.0);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] *= (i & t) == 0 ? p0 : p1;
        }
        return;
    }
    default:
        detail::apply_single(amps, t, single_qubit_matrix(gate));
    }
}

[[nodiscard]] inline QuantumState apply_gate(QuantumState state, const Gate &gate) {
    apply_gate_inplace(state, gate);
    return state;
}

inline void apply_circuit_inplace(QuantumState &state, std::span<const Gate> gates) {
    for (const auto &g : gates) {
        apply_gate_inplace(state, g);
    }
}

/// Pauli-Z on one qubit; the only observable the models read out.
struct PauliZ {
    std::size_t qubit = 0;
};

/// <Z_q> = sum_i s_i |a_i|^2, s_i = +1 when bit q of i is 0, else -1.
[[nodiscard]] inline double expectation_z(const QuantumState &state, std::size_t qubit) {
    const std::size_t t = state.stride(qubit);
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & t) == 0 ? p : -p;
    }
    return acc;
}

[[nodiscard]] inline double expectation(const QuantumState &state, PauliZ obs) {
    return expectation_z(state, obs.qubit);
}

[[nodiscard]] inline std::vector<double> probabilities(const QuantumState &state) {
    std::vector<double> out;
    out.reserve(state.dim());
    for (const auto &a : state.amplitudes()) {
        out.push_back(std::norm(a));
    }
    return out;
}

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Prepares a Bell pair from |00> with X corrections, then H(0), CNOT(0, 1).
/// X on qubit 0 sets the relative sign, X on qubit 1 selects the Psi pair.
[[nodiscard]] inline QuantumState bell_state(BellState which) {
    QuantumState s(2);
    const bool flip_sign = which == BellState::PhiMinus || which == BellState::PsiMinus;
    const bool flip_parity = which == BellState::PsiPlus || which == BellState::PsiMinus;
    if (flip_sign) {
        apply_gate_inplace(s, Gate::x(0));
    }
    if (flip_parity) {
        apply_gate_inplace(s, Gate::x(1));
    }
    apply_gate_inplace(s, Gate::h(0));
    apply_gate_inplace(s, Gate::cnot(0, 1));
    return s;
}

} // namespace qsurf
