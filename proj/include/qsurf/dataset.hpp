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
 * FDM print-parameter samples: CSV I/O, categorical encoding, seeded
 * train/test split and the [0, pi] feature scaler used for angle embedding.
 *
 * CSV schema (header row, case-insensitive, comma-delimited, '.' decimals):
 *
 *   layer_height,wall_thickness,infill_density,infill_pattern,
 *   nozzle_temperature,bed_temperature,print_speed,fan_speed,surface_roughness
 *
 * Lines whose first non-blank character is '#' are comments.
 */
#pragma once

#include "qsurf/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qsurf {

using Matrix = std::vector<std::vector<double>>;

enum class InfillPattern { Grid = 0, Honeycomb = 1, Triangles = 2, Cubic = 3 };

inline constexpr std::array<std::string_view, 4> kPatternTokens{"grid", "honeycomb",
                                                                "triangles", "cubic"};

inline constexpr std::array<std::string_view, 9> kCsvColumns{
    "layer_height",     "wall_thickness",  "infill_density",
    "infill_pattern",   "nozzle_temperature", "bed_temperature",
    "print_speed",      "fan_speed",       "surface_roughness"};

inline constexpr std::size_t kNumFeatures = 8;

struct Sample {
    double layer_height = 0.0;       // mm
    double wall_thickness = 0.0;     // mm
    double infill_density = 0.0;     // %
    InfillPattern infill_pattern = InfillPattern::Grid;
    double nozzle_temperature = 0.0; // degC
    double bed_temperature = 0.0;    // degC
    double print_speed = 0.0;        // mm/s
    double fan_speed = 0.0;          // %
    double surface_roughness = 0.0;  // um, target

    friend bool operator==(const Sample &, const Sample &) = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_commas(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace detail

/// Lowercases and strips all whitespace, then matches a canonical token.
/// "honey comb" and "Honeycomb" both map to Honeycomb.
[[nodiscard]] inline std::optional<InfillPattern> parse_pattern(std::string_view raw) {
    std::string norm;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    for (std::size_t i = 0; i < kPatternTokens.size(); ++i) {
        if (norm == kPatternTokens[i]) {
            return static_cast<InfillPattern>(i);
        }
    }
    return std::nullopt;
}

[[nodiscard]] inline std::string_view to_string(InfillPattern p) {
    return kPatternTokens.at(static_cast<std::size_t>(p));
}

/// Ordinal code: grid 0, honeycomb 1, triangles 2, cubic 3.
[[nodiscard]] inline double encode_pattern(InfillPattern p) {
    return static_cast<double>(static_cast<int>(p));
}

[[nodiscard]] inline double encode_pattern(std::string_view token) {
    auto p = parse_pattern(token);
    if (!p) {
        throw DatasetError("unknown infill pattern '" + std::string(token) + "'");
    }
    return encode_pattern(*p);
}

/// Feature vector in CSV column order with the pattern ordinal-encoded.
[[nodiscard]] inline std::vector<double> features_of(const Sample &s) {
    return {s.layer_height,       s.wall_thickness,
            s.infill_density,     encode_pattern(s.infill_pattern),
            s.nozzle_temperature, s.bed_temperature,
            s.print_speed,        s.fan_speed};
}

[[nodiscard]] inline Matrix feature_matrix(std::span<const Sample> samples) {
    Matrix m;
    m.reserve(samples.size());
    for (const auto &s : samples) {
        m.push_back(features_of(s));
    }
    return m;
}

[[nodiscard]] inline std::vector<double> targets_of(std::span<const Sample> samples) {
    std::vector<double> y;
    y.reserve(samples.size());
    for (const auto &s : samples) {
        y.push_back(s.surface_roughness);
    }
    return y;
}

[[nodiscard]] inline std::vector<Sample> parse_csv(std::istream &in,
                                                   const std::string &source = "<stream>") {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t data_row = 0;
    std::vector<Sample> out;

    auto fail = [&](const std::string &msg) {
        throw DatasetError(source + ":" + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        auto cells = detail::split_commas(t);
        if (!have_header) {
            if (cells.size() != kCsvColumns.size()) {
                fail("header has " + std::to_string(cells.size()) + " columns, expected " +
                     std::to_string(kCsvColumns.size()));
            }
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string lower;
                for (char c : cells[i]) {
                    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
                }
                if (lower != kCsvColumns[i]) {
                    fail("header column " + std::to_string(i + 1) + " is '" + cells[i] +
                         "', expected '" + std::string(kCsvColumns[i]) + "'");
                }
            }
            have_header = true;
            continue;
        }

        ++data_row;
        const std::string where = "row " + std::to_string(data_row);
        if (cells.size() != kCsvColumns.size()) {
            fail(where + ": expected " + std::to_string(kCsvColumns.size()) + " fields, got " +
                 std::to_string(cells.size()));
        }
        std::array<double, 9> num{};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == 3) {
                continue;
            }
            auto v = detail::parse_double(cells[i]);
            if (!v) {
                fail(where + ": column '" + std::string(kCsvColumns[i]) +
                     "' is not a finite number: '" + cells[i] + "'");
            }
            num[i] = *v;
        }
        auto pattern = parse_pattern(cells[3]);
        if (!pattern) {
            fail(where + ": unknown infill pattern '" + cells[3] + "'");
        }
        Sample s{num[0], num[1], num[2], *pattern, num[4], num[5], num[6], num[7], num[8]};
        if (!(s.layer_height > 0.0)) {
            fail(where + ": layer_height must be positive");
        }
        if (s.infill_density < 0.0 || s.infill_density > 100.0) {
            fail(where + ": infill_density outside [0, 100]");
        }
        if (s.fan_speed < 0.0 || s.fan_speed > 100.0) {
            fail(where + ": fan_speed outside [0, 100]");
        }
        out.push_back(s);
    }
    if (!have_header) {
        throw DatasetError(source + ": missing header row");
    }
    return out;
}

[[nodiscard]] inline std::vector<Sample> load_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DatasetError("cannot open dataset file '" + path + "'");
    }
    return parse_csv(in, path);
}

inline void write_csv(std::ostream &out, std::span<const Sample> samples) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        out << (i ? "," : "") << kCsvColumns[i];
    }
    out << '\n';
    using detail::format_double;
    for (const auto &s : samples) {
        out << format_double(s.layer_height) << ',' << format_double(s.wall_thickness) << ','
            << format_double(s.infill_density) << ',' << to_string(s.infill_pattern) << ','
            << format_double(s.nozzle_temperature) << ','
            << format_double(s.bed_temperature) << ',' << format_double(s.print_speed)
            << ',' << format_double(s.fan_speed) << ','
            << format_double(s.surface_roughness) << '\n';
    }
}

/// Index-level split: the first round(n * test_fraction) entries of a
/// seeded shuffle form the test part.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

[[nodiscard]] inline SplitIndices split_indices(std::size_t n, double test_fraction,
                                                std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("split: need at least 2 samples");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("split: test_fraction must lie in (0, 1)");
    }
    const auto n_test =
        static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
    if (n_test == 0 || n_test == n) {
        throw std::invalid_argument("split: test_fraction leaves an empty partition");
    }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = i;
    }
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    SplitIndices out;
    out.test.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
    return out;
}

template <typename T> struct TrainTest {
    std::vector<T> train;
    std::vector<T> test;
};

template <typename T>
[[nodiscard]] TrainTest<T> split(std::span<const T> items, double test_fraction,
                                 std::uint64_t seed) {
    const auto ix = split_indices(items.size(), test_fraction, seed);
    TrainTest<T> out;
    for (auto i : ix.train) {
        out.train.push_back(items[i]);
    }
    for (auto i : ix.test) {
        out.test.push_back(items[i]);
    }
    return out;
}

template <typename T>
[[nodiscard]] TrainTest<T> split(const std::vector<T> &items, double test_fraction,
                                 std::uint64_t seed) {
    return split(std::span<const T>(items), test_fraction, seed);
}

/// Per-column min/max scaler onto [0, pi]. Constant columns map to pi/2;
/// values outside the fitted range are clamped.
class FeatureScaler {
  public:
    FeatureScaler() = default;
    FeatureScaler(std::vector<double> mins, std::vector<double> maxs)
        : mins_(std::move(mins)), maxs_(std::move(maxs)) {
        if (mins_.size() != maxs_.size()) {
            throw std::invalid_argument("FeatureScaler: min/max length mismatch");
        }
    }

    static FeatureScaler fit(const Matrix &train) {
        if (train.empty()) {
            throw std::invalid_argument("FeatureScaler::fit: empty training set");
        }
        const std::size_t d = train.front().size();
        std::vector<double> lo(train.front()), hi(train.front());
        for (const auto &row : train) {
            if (row.size() != d) {
                throw std::invalid_argument("FeatureScaler::fit: ragged feature matrix");
            }
            for (std::size_t j = 0; j < d; ++j) {
                lo[j] = std::min(lo[j], row[j]);
                hi[j] = std::max(hi[j], row[j]);
            }
        }
        return {std::move(lo), std::move(hi)};
    }

    [[nodiscard]] bool fitted() const noexcept { return !mins_.empty(); }
    [[nodiscard]] std::size_t dim() const noexcept { return mins_.size(); }
    [[nodiscard]] const std::vector<double> &mins() const noexcept { return mins_; }
    [[nodiscard]] const std::vector<double> &maxs() const noexcept { return maxs_; }

    [[nodiscard]] std::vector<double> transform(std::span<const double> x) const {
        if (x.size() != mins_.size()) {
            throw std::invalid_argument("FeatureScaler::transform: expected " +
                                        std::to_string(mins_.size()) + " features, got " +
                                        std::to_string(x.size()));
        }
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double span = maxs_[j] - mins_[j];
            if (!(span > 0.0)) {
                out[j] = std::numbers::pi / 2.0;
                continue;
            }
            const double v = std::numbers::pi * (x[j] - mins_[j]) / span;
            out[j] = std::clamp(v, 0.0, std::numbers::pi);
        }
        return out;
    }

    [[nodiscard]] Matrix transform(const Matrix &m) const {
        Matrix out;
        out.reserve(m.size());
        for (const auto &row : m) {
            out.push_back(transform(row));
        }
        return out;
    }

    friend bool operator==(const FeatureScaler &, const FeatureScaler &) = default;

  private:
    std::vector<double> mins_;
    std::vector<double> maxs_;
};

} // namespace qsurf
