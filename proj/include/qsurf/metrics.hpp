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
 * Regression metrics. All variances use the population (1/N) form.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace qsurf::metrics {

namespace detail {

inline void check_pair(std::span<const double> y_true, std::span<const double> y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("metrics: length mismatch between y_true and y_pred");
    }
    if (y_true.empty()) {
        throw std::invalid_argument("metrics: empty input");
    }
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

/// Two-pass population variance of (a - b), or of a alone when b is empty.
inline double variance_of_difference(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    auto at = [&](std::size_t i) { return b.empty() ? a[i] : a[i] - b[i]; };
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m += at(i);
    }
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = at(i) - m;
        ss += d * d;
    }
    return ss / static_cast<double>(n);
}

} // namespace detail

[[nodiscard]] inline double mse(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::check_pair(y_true, y_pred);
    double s = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double r = y_pred[i] - y_true[i];
        s += r * r;
    }
    return s / static_cast<double>(y_true.size());
}

[[nodiscard]] inline double mae(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::check_pair(y_true, y_pred);
    double s = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        s += std::abs(y_pred[i] - y_true[i]);
    }
    return s / static_cast<double>(y_true.size());
}

[[nodiscard]] inline double variance(std::span<const double> v) {
    if (v.empty()) {
        throw std::invalid_argument("variance: empty input");
    }
    return detail::variance_of_difference(v, {});
}

/// 1 - Var(y_true - y_pred) / Var(y_true). Undefined (throws) for a
/// constant y_true; may be negative.
[[nodiscard]] inline double explained_variance(std::span<const double> y_true,
                                               std::span<const double> y_pred) {
    detail::check_pair(y_true, y_pred);
    if (y_true.size() < 2) {
        throw std::invalid_argument("explained_variance: needs at least 2 samples");
    }
    const double var_y = detail::variance_of_difference(y_true, {});
    if (!(var_y > 0.0)) {
        throw std::domain_error("explained_variance: target variance is zero");
    }
    return 1.0 - detail::variance_of_difference(y_true, y_pred) / var_y;
}

struct MetricsReport {
    double mse = 0.0;
    double mae = 0.0;
    double evs = 0.0;
    std::size_t n = 0;
};

[[nodiscard]] inline MetricsReport evaluate(std::span<const double> y_true,
                                            std::span<const double> y_pred) {
    return {mse(y_true, y_pred), mae(y_true, y_pred), explained_variance(y_true, y_pred),
            y_true.size()};
}

} // namespace qsurf::metrics
