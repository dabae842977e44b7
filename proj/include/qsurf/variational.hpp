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
 * Parametrized-circuit regressors.
 *
 * Both models put one feature on each qubit and read <Z> on qubit 0. The
 * entangler is the open chain CNOT(0,1), CNOT(1,2), ..., CNOT(n-2,n-1).
 *
 *  QNN: RX(x_j) RZ(x_j) on every qubit, then per layer RX(t[l][j][0])
 *       RZ(t[l][j][1]) on every qubit followed by the chain.
 *  VQC: feature map H, RZ(x_j) on every qubit and one chain; then per
 *       layer RY(t[l][j][0]) RZ(t[l][j][1]) on every qubit and the chain.
 *
 * The expectation e in [-1, 1] is mapped to a target value by the affine
 * OutputMap y = y_min + (e + 1) / 2 * (y_max - y_min). Gradients use the
 * two-term parameter-shift rule, which is exact here because every
 * parameter drives exactly one Pauli rotation.
 */
#pragma once

#include "qsurf/dataset.hpp"
#include "qsurf/errors.hpp"
#include "qsurf/metrics.hpp"
#include "qsurf/statevector.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsurf {

enum class ModelKind { QNN, VQC };

[[nodiscard]] inline std::string_view to_string(ModelKind k) noexcept {
    return k == ModelKind::QNN ? "qnn" : "vqc";
}

[[nodiscard]] inline std::optional<ModelKind> parse_model_kind(std::string_view s) {
    if (s == "qnn") {
        return ModelKind::QNN;
    }
    if (s == "vqc") {
        return ModelKind::VQC;
    }
    return std::nullopt;
}

struct CircuitSpec {
    ModelKind kind = ModelKind::QNN;
    std::size_t num_qubits = 1;
    std::size_t layers = 1;
    std::size_t readout = 0;

    void validate() const {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("CircuitSpec: num_qubits out of range");
        }
        if (layers < 1) {
            throw std::invalid_argument("CircuitSpec: layers must be >= 1");
        }
        if (readout >= num_qubits) {
            throw std::invalid_argument("CircuitSpec: readout qubit out of range");
        }
    }

    friend bool operator==(const CircuitSpec &, const CircuitSpec &) = default;
};

/// Layer-major angles: values[(l * qubits + j) * 2 + r], r = 0 for the
/// first rotation of the layer (RX or RY), r = 1 for RZ.
class ParameterVector {
  public:
    static constexpr std::size_t kRotationsPerQubit = 2;

    ParameterVector() = default;
    ParameterVector(std::size_t layers, std::size_t qubits)
        : layers_(layers), qubits_(qubits), values_(layers * qubits * kRotationsPerQubit, 0.0) {}
    ParameterVector(std::size_t layers, std::size_t qubits, std::vector<double> values)
        : layers_(layers), qubits_(qubits), values_(std::move(values)) {
        if (values_.size() != layers * qubits * kRotationsPerQubit) {
            throw std::invalid_argument("ParameterVector: expected " +
                                        std::to_string(layers * qubits * kRotationsPerQubit) +
                                        " values, got " + std::to_string(values_.size()));
        }
    }

    [[nodiscard]] std::size_t layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] double &at(std::size_t layer, std::size_t qubit, std::size_t rot) {
        return values_.at(index(layer, qubit, rot));
    }
    [[nodiscard]] double at(std::size_t layer, std::size_t qubit, std::size_t rot) const {
        return values_.at(index(layer, qubit, rot));
    }
    [[nodiscard]] double &operator[](std::size_t k) { return values_[k]; }
    [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }

    [[nodiscard]] bool all_finite() const {
        for (double v : values_) {
            if (!std::isfinite(v)) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const ParameterVector &, const ParameterVector &) = default;

  private:
    [[nodiscard]] std::size_t index(std::size_t l, std::size_t j, std::size_t r) const {
        return (l * qubits_ + j) * kRotationsPerQubit + r;
    }

    std::size_t layers_ = 0;
    std::size_t qubits_ = 0;
    std::vector<double> values_;
};

namespace detail {

inline void check_shapes(const ParameterVector &params, std::span<const double> x,
                         const CircuitSpec &spec) {
    spec.validate();
    if (params.layers() != spec.layers || params.qubits() != spec.num_qubits) {
        throw std::invalid_argument("parameter shape (" + std::to_string(params.layers()) + "x" +
                                    std::to_string(params.qubits()) +
                                    ") does not match circuit (" + std::to_string(spec.layers) +
                                    "x" + std::to_string(spec.num_qubits) + ")");
    }
    if (x.size() != spec.num_qubits) {
        throw std::invalid_argument("feature vector has " + std::to_string(x.size()) +
                                    " entries, circuit has " + std::to_string(spec.num_qubits) +
                                    " qubits");
    }
}

inline void apply_entangler(QuantumState &s) {
    for (std::size_t j = 0; j + 1 < s.num_qubits(); ++j) {
        apply_gate_inplace(s, Gate::cnot(j, j + 1));
    }
}

} // namespace detail

/// RX(x_j) then RZ(x_j) on qubit j, for every j.
[[nodiscard]] inline QuantumState embed_features(QuantumState state, std::span<const double> x) {
    if (x.size() != state.num_qubits()) {
        throw std::invalid_argument("embed_features: " + std::to_string(x.size()) +
                                    " features for " + std::to_string(state.num_qubits()) +
                                    " qubits");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        apply_gate_inplace(state, Gate::rx(j, x[j]));
        apply_gate_inplace(state, Gate::rz(j, x[j]));
    }
    return state;
}

/// Full gate sequence of a model for one input; used by forward passes and
/// by tests that replay circuits through an independent simulator.
[[nodiscard]] inline std::vector<Gate> build_circuit(const ParameterVector &params,
                                                     std::span<const double> x,
                                                     const CircuitSpec &spec) {
    detail::check_shapes(params, x, spec);
    const std::size_t n = spec.num_qubits;
    std::vector<Gate> gates;
    gates.reserve(n * (3 + 3 * spec.layers));
    auto chain = [&] {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            gates.push_back(Gate::cnot(j, j + 1));
        }
    };

    if (spec.kind == ModelKind::QNN) {
        for (std::size_t j = 0; j < n; ++j) {
            gates.push_back(Gate::rx(j, x[j]));
            gates.push_back(Gate::rz(j, x[j]));
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            gates.push_back(Gate::h(j));
            gates.push_back(Gate::rz(j, x[j]));
        }
        chain();
    }
    for (std::size_t l = 0; l < spec.layers; ++l) {
        for (std::size_t j = 0; j < n; ++j) {
            gates.push_back(spec.kind == ModelKind::QNN ? Gate::rx(j, params.at(l, j, 0))
                                                        : Gate::ry(j, params.at(l, j, 0)));
            gates.push_back(Gate::rz(j, params.at(l, j, 1)));
        }
        chain();
    }
    return gates;
}

/// Readout <Z_readout> of the model circuit, in [-1, 1].
[[nodiscard]] inline double forward(const ParameterVector &params, std::span<const double> x,
                                    const CircuitSpec &spec) {
    const auto gates = build_circuit(params, x, spec);
    QuantumState s(spec.num_qubits);
    apply_circuit_inplace(s, gates);
    return expectation_z(s, spec.readout);
}

[[nodiscard]] inline double qnn_forward(const ParameterVector &params, std::span<const double> x,
                                        CircuitSpec spec) {
    spec.kind = ModelKind::QNN;
    return forward(params, x, spec);
}

[[nodiscard]] inline double vqc_forward(const ParameterVector &params, std::span<const double> x,
                                        CircuitSpec spec) {
    spec.kind = ModelKind::VQC;
    return forward(params, x, spec);
}

/// Affine map between the readout interval [-1, 1] and target units.
struct OutputMap {
    double y_min = 0.0;
    double y_max = 1.0;

    static OutputMap fit(std::span<const double> targets) {
        if (targets.empty()) {
            throw DatasetError("OutputMap: empty target set");
        }
        double lo = targets[0], hi = targets[0];
        for (double v : targets) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (!(lo < hi)) {
            throw DatasetError("OutputMap: training targets are constant");
        }
        return {lo, hi};
    }

    [[nodiscard]] double to_target(double e) const {
        return y_min + (e + 1.0) / 2.0 * (y_max - y_min);
    }
    [[nodiscard]] double to_expectation(double y) const {
        return 2.0 * (y - y_min) / (y_max - y_min) - 1.0;
    }
    /// d(to_target)/de.
    [[nodiscard]] double slope() const { return (y_max - y_min) / 2.0; }

    friend bool operator==(const OutputMap &, const OutputMap &) = default;
};

/// Mean squared error in target units over pre-scaled features.
[[nodiscard]] inline double cost(const ParameterVector &params, const Matrix &x_scaled,
                                 std::span<const double> y, const CircuitSpec &spec,
                                 const OutputMap &out) {
    if (x_scaled.empty()) {
        throw std::invalid_argument("cost: empty training set");
    }
    if (x_scaled.size() != y.size()) {
        throw std::invalid_argument("cost: feature/target length mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = out.to_target(forward(params, x_scaled[i], spec)) - y[i];
        s += r * r;
    }
    return s / static_cast<double>(y.size());
}

/// Parameter-shift derivative of the raw readout for one input.
[[nodiscard]] inline std::vector<double> readout_gradient(ParameterVector params,
                                                          std::span<const double> x,
                                                          const CircuitSpec &spec) {
    constexpr double shift = std::numbers::pi / 2.0;
    std::vector<double> g(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double theta = params[k];
        params[k] = theta + shift;
        const double plus = forward(params, x, spec);
        params[k] = theta - shift;
        const double minus = forward(params, x, spec);
        params[k] = theta;
        g[k] = (plus - minus) / 2.0;
    }
    return g;
}

/// d cost / d theta, chained through the output map and the MSE.
[[nodiscard]] inline ParameterVector gradient(const ParameterVector &params,
                                              const Matrix &x_scaled,
                                              std::span<const double> y,
                                              const CircuitSpec &spec, const OutputMap &out) {
    if (x_scaled.empty()) {
        throw std::invalid_argument("gradient: empty training set");
    }
    if (x_scaled.size() != y.size()) {
        throw std::invalid_argument("gradient: feature/target length mismatch");
    }
    ParameterVector grad(params.layers(), params.qubits());
    const double inv_n = 1.0 / static_cast<double>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double residual = out.to_target(forward(params, x_scaled[i], spec)) - y[i];
        const double w = 2.0 * residual * out.slope() * inv_n;
        const auto dg = readout_gradient(params, x_scaled[i], spec);
        for (std::size_t k = 0; k < dg.size(); ++k) {
            grad[k] += w * dg[k];
        }
    }
    return grad;
}

struct TrainConfig {
    std::size_t layers = 2;
    std::size_t iterations = 100;
    double learning_rate = 0.1;
    std::uint64_t seed = 42;
    double init_range = 0.1;

    void validate() const {
        if (layers < 1) {
            throw std::invalid_argument("layers must be >= 1");
        }
        if (iterations < 1) {
            throw std::invalid_argument("iterations must be >= 1");
        }
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
            throw std::invalid_argument("learning_rate must be a positive finite number");
        }
        if (!(init_range >= 0.0) || !std::isfinite(init_range)) {
            throw std::invalid_argument("init_range must be non-negative");
        }
    }
};

struct HistoryRecord {
    std::size_t iteration = 0;
    double cost = 0.0;
    double train_evs = 0.0;
};

using TrainingHistory = std::vector<HistoryRecord>;

struct VariationalModel {
    CircuitSpec spec;
    ParameterVector params;
    FeatureScaler scaler;
    OutputMap output;
    TrainConfig config;

    [[nodiscard]] bool trained() const noexcept {
        return scaler.fitted() && params.size() > 0;
    }
};

/// Surface roughness for one raw (unscaled) feature vector.
[[nodiscard]] inline double predict(const VariationalModel &model, std::span<const double> x_raw) {
    if (!model.trained()) {
        throw std::logic_error("predict: model has not been trained");
    }
    return model.output.to_target(forward(model.params, model.scaler.transform(x_raw), model.spec));
}

[[nodiscard]] inline std::vector<double> predict(const VariationalModel &model, const Matrix &x_raw) {
    std::vector<double> out;
    out.reserve(x_raw.size());
    for (const auto &row : x_raw) {
        out.push_back(predict(model, row));
    }
    return out;
}

/// Uniform draw in [-range, range] for every angle.
[[nodiscard]] inline ParameterVector initial_parameters(std::size_t layers, std::size_t qubits,
                                                        std::uint64_t seed, double range) {
    ParameterVector p(layers, qubits);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-range, range);
    for (auto &v : p.values()) {
        v = dist(rng);
    }
    return p;
}

struct TrainResult {
    VariationalModel model;
    TrainingHistory history;
};

/// Vanilla gradient descent on the training MSE. History entry t holds the
/// cost and training-set EVS of the parameters before update t.
[[nodiscard]] inline TrainResult train(ModelKind kind, const Matrix &x_raw,
                                       std::span<const double> y, const TrainConfig &config) {
    config.validate();
    if (x_raw.empty() || x_raw.size() != y.size()) {
        throw std::invalid_argument("train: need a non-empty training set with one target per row");
    }
    VariationalModel m;
    m.config = config;
    m.scaler = FeatureScaler::fit(x_raw);
    m.output = OutputMap::fit(y);
    m.spec = CircuitSpec{kind, m.scaler.dim(), config.layers, 0};
    m.spec.validate();
    m.params = initial_parameters(config.layers, m.spec.num_qubits, config.seed, config.init_range);

    const Matrix xs = m.scaler.transform(x_raw);
    TrainingHistory history;
    history.reserve(config.iterations);
    std::vector<double> pred(y.size());

    for (std::size_t it = 0; it < config.iterations; ++it) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            pred[i] = m.output.to_target(forward(m.params, xs[i], m.spec));
        }
        const double c = metrics::mse(y, pred);
        if (!std::isfinite(c)) {
            throw TrainingDivergence("non-finite training cost at iteration " + std::to_string(it));
        }
        history.push_back({it, c, metrics::explained_variance(y, pred)});

        const auto g = gradient(m.params, xs, y, m.spec, m.output);
        for (std::size_t k = 0; k < m.params.size(); ++k) {
            m.params[k] -= config.learning_rate * g[k];
        }
        if (!m.params.all_finite()) {
            throw TrainingDivergence("non-finite parameters after iteration " + std::to_string(it));
        }
    }
    return {std::move(m), std::move(history)};
}

} // namespace qsurf
