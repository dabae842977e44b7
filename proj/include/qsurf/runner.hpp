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
 * End-to-end experiment runs: load -> split -> scale -> train -> evaluate,
 * plus the multi-algorithm comparison. Everything written to disk goes
 * through write_file_atomic, so a reader never sees a partial file.
 *
 * Files produced by run():
 *   metrics.json  algorithm, config echo, seed, split sizes, train/test metrics
 *   history.csv   iteration,cost,train_evs (qnn and vqc only)
 *   model.json    serialized model
 * and by compare():
 *   comparison.json, comparison.txt (rows ranked by ascending test MSE)
 */
#pragma once

#include "qsurf/dataset.hpp"
#include "qsurf/errors.hpp"
#include "qsurf/metrics.hpp"
#include "qsurf/qforest.hpp"
#include "qsurf/serialization.hpp"
#include "qsurf/variational.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qsurf {

enum class Algorithm { QNN, VQC, QForest };

[[nodiscard]] inline std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::QNN: return "qnn";
    case Algorithm::VQC: return "vqc";
    case Algorithm::QForest: return "qforest";
    }
    return "?";
}

[[nodiscard]] inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    if (s == "qnn") return Algorithm::QNN;
    if (s == "vqc") return Algorithm::VQC;
    if (s == "qforest") return Algorithm::QForest;
    return std::nullopt;
}

struct RunConfig {
    Algorithm algorithm = Algorithm::QForest;
    std::string data;
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
    // variational models
    std::size_t layers = 2;
    std::size_t iterations = 100;
    double learning_rate = 0.1;
    // qforest
    std::size_t num_trees = 25;
    std::size_t max_depth = 4;
    std::size_t min_leaf = 2;
    bool bootstrap = true;
    std::string out = "./out";

    void validate() const {
        if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
            throw ConfigError("--test-fraction must lie in (0, 1)");
        }
        if (layers < 1) throw ConfigError("--layers must be >= 1");
        if (iterations < 1) throw ConfigError("--iterations must be >= 1");
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
            throw ConfigError("--learning-rate must be a positive finite number");
        }
        if (num_trees < 1) throw ConfigError("--num-trees must be >= 1");
        if (min_leaf < 1) throw ConfigError("--min-leaf must be >= 1");
    }

    [[nodiscard]] TrainConfig train_config() const {
        TrainConfig c;
        c.layers = layers;
        c.iterations = iterations;
        c.learning_rate = learning_rate;
        c.seed = seed;
        return c;
    }

    [[nodiscard]] ForestConfig forest_config() const {
        return ForestConfig{num_trees, max_depth, min_leaf, bootstrap, seed};
    }
};

/// Every flag with its effective value.
[[nodiscard]] inline json config_echo(const RunConfig &c) {
    return json{{"algorithm", std::string(to_string(c.algorithm))},
                {"data", c.data},
                {"test_fraction", c.test_fraction},
                {"seed", c.seed},
                {"layers", c.layers},
                {"iterations", c.iterations},
                {"learning_rate", c.learning_rate},
                {"num_trees", c.num_trees},
                {"max_depth", c.max_depth},
                {"min_leaf", c.min_leaf},
                {"bootstrap", c.bootstrap},
                {"out", c.out}};
}

struct RunResult {
    RunConfig config;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    metrics::MetricsReport train;
    metrics::MetricsReport test;
    TrainingHistory history; // empty for qforest
    json model;
};

namespace detail {

inline metrics::MetricsReport evaluate_split(std::span<const double> y, std::span<const double> pred,
                                             std::string_view which) {
    try {
        return metrics::evaluate(y, pred);
    } catch (const std::domain_error &) {
        throw DatasetError(std::string(which) + " split has constant targets; EVS is undefined");
    } catch (const std::invalid_argument &e) {
        throw DatasetError(std::string(which) + " split: " + e.what());
    }
}

} // namespace detail

/// Runs one experiment in memory on already-loaded samples.
[[nodiscard]] inline RunResult execute(const RunConfig &cfg, const std::vector<Sample> &samples) {
    cfg.validate();
    TrainTest<Sample> parts;
    try {
        parts = split(samples, cfg.test_fraction, cfg.seed);
    } catch (const std::invalid_argument &e) {
        throw DatasetError(std::string("cannot split dataset: ") + e.what());
    }
    const Matrix x_train = feature_matrix(parts.train);
    const Matrix x_test = feature_matrix(parts.test);
    const auto y_train = targets_of(parts.train);
    const auto y_test = targets_of(parts.test);

    RunResult r;
    r.config = cfg;
    r.n_train = parts.train.size();
    r.n_test = parts.test.size();

    std::vector<double> pred_train, pred_test;
    if (cfg.algorithm == Algorithm::QForest) {
        const Forest f = fit_forest(x_train, y_train, cfg.forest_config());
        pred_train = f.predict(x_train);
        pred_test = f.predict(x_test);
        r.model = to_json(f);
    } else {
        const auto kind = cfg.algorithm == Algorithm::QNN ? ModelKind::QNN : ModelKind::VQC;
        auto trained = train(kind, x_train, y_train, cfg.train_config());
        pred_train = predict(trained.model, x_train);
        pred_test = predict(trained.model, x_test);
        r.model = to_json(trained.model);
        r.history = std::move(trained.history);
    }
    r.train = detail::evaluate_split(y_train, pred_train, "training");
    r.test = detail::evaluate_split(y_test, pred_test, "test");
    return r;
}

[[nodiscard]] inline RunResult execute(const RunConfig &cfg) {
    cfg.validate();
    return execute(cfg, load_csv(cfg.data));
}

[[nodiscard]] inline json metrics_json(const RunResult &r) {
    return json{{"algorithm", std::string(to_string(r.config.algorithm))},
                {"config", config_echo(r.config)},
                {"seed", r.config.seed},
                {"n_train", r.n_train},
                {"n_test", r.n_test},
                {"train", to_json(r.train)},
                {"test", to_json(r.test)}};
}

[[nodiscard]] inline std::string history_csv(const TrainingHistory &h) {
    std::string s = "iteration,cost,train_evs\n";
    for (const auto &rec : h) {
        s += std::to_string(rec.iteration);
        s += ',';
        s += detail::format_double(rec.cost);
        s += ',';
        s += detail::format_double(rec.train_evs);
        s += '\n';
    }
    return s;
}

/// Writes `contents` to `<path>.tmp` and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path &path, std::string_view contents) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw OutputError("cannot create directory '" + path.parent_path().string() +
                              "': " + ec.message());
        }
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw OutputError("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp, ec);
            throw OutputError("write to '" + tmp.string() + "' failed");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw OutputError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
    }
}

inline void write_run_outputs(const RunResult &r, const std::filesystem::path &dir) {
    write_file_atomic(dir / "metrics.json", metrics_json(r).dump(2) + "\n");
    if (r.config.algorithm != Algorithm::QForest) {
        write_file_atomic(dir / "history.csv", history_csv(r.history));
    }
    write_file_atomic(dir / "model.json", r.model.dump(2) + "\n");
}

inline RunResult run(const RunConfig &cfg) {
    auto r = execute(cfg);
    write_run_outputs(r, cfg.out);
    return r;
}

/// Rows of a comparison, ranked by ascending test MSE (stable on ties).
[[nodiscard]] inline std::vector<const RunResult *> rank_by_mse(const std::vector<RunResult> &results) {
    std::vector<const RunResult *> ranked;
    for (const auto &r : results) {
        ranked.push_back(&r);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RunResult *a, const RunResult *b) { return a->test.mse < b->test.mse; });
    return ranked;
}

[[nodiscard]] inline json comparison_json(const std::vector<RunResult> &results) {
    json rows = json::array();
    std::size_t rank = 1;
    for (const auto *r : rank_by_mse(results)) {
        rows.push_back(json{{"rank", rank++},
                            {"algorithm", std::string(to_string(r->config.algorithm))},
                            {"mse", r->test.mse},
                            {"mae", r->test.mae},
                            {"evs", r->test.evs},
                            {"n", r->test.n},
                            {"config", config_echo(r->config)}});
    }
    const auto &c = results.front().config;
    return json{{"data", c.data},
                {"test_fraction", c.test_fraction},
                {"seed", c.seed},
                {"rows", std::move(rows)}};
}

[[nodiscard]] inline std::string comparison_table(const std::vector<RunResult> &results) {
    std::string s;
    char line[160];
    std::snprintf(line, sizeof line, "%-5s %-10s %14s %14s %14s\n", "rank", "algorithm", "mse",
                  "mae", "evs");
    s += line;
    std::size_t rank = 1;
    for (const auto *r : rank_by_mse(results)) {
        std::snprintf(line, sizeof line, "%-5zu %-10s %14.6f %14.6f %14.6f\n", rank++,
                      std::string(to_string(r->config.algorithm)).c_str(), r->test.mse,
                      r->test.mae, r->test.evs);
        s += line;
    }
    return s;
}

/// Runs every config on one dataset and split, then writes comparison.json
/// and comparison.txt into `out_dir`.
inline std::vector<RunResult> compare(const std::vector<RunConfig> &configs,
                                      const std::filesystem::path &out_dir) {
    if (configs.size() < 2) {
        throw ConfigError("compare needs at least 2 configurations");
    }
    const auto &first = configs.front();
    for (const auto &c : configs) {
        c.validate();
        if (c.data != first.data || c.test_fraction != first.test_fraction || c.seed != first.seed) {
            throw ConfigError("compare: all configurations must share data, test fraction and seed");
        }
    }
    const auto samples = load_csv(first.data);
    std::vector<RunResult> results;
    results.reserve(configs.size());
    for (const auto &c : configs) {
        results.push_back(execute(c, samples));
    }
    write_file_atomic(out_dir / "comparison.json", comparison_json(results).dump(2) + "\n");
    write_file_atomic(out_dir / "comparison.txt", comparison_table(results));
    return results;
}

} // namespace qsurf
