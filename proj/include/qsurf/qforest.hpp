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
 * Q-Forest regressor: bagged regression trees whose split search visits
 * every candidate split of every feature.
 *
 * The quantum formulation explores all split points "in parallel"; the
 * classical computation it stands for is the exhaustive scan below. For each
 * feature the node's rows are sorted and every midpoint between consecutive
 * distinct values is scored by the weighted reduction in population variance
 *
 *     Var(parent) - (n_L Var(L) + n_R Var(R)) / n.
 *
 * Ties go to the lower feature index, then the lower threshold. Rows with
 * x[feature] <= threshold route left.
 */
#pragma once

#include "qsurf/dataset.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsurf {

struct ForestConfig {
    std::size_t num_trees = 25;
    std::size_t max_depth = 4;
    std::size_t min_leaf = 2;
    bool bootstrap = true;
    std::uint64_t seed = 42;

    void validate() const {
        if (num_trees < 1) {
            throw std::invalid_argument("num_trees must be >= 1");
        }
        if (min_leaf < 1) {
            throw std::invalid_argument("min_leaf must be >= 1");
        }
    }
};

struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double decrease = 0.0; // variance reduction, target units squared
};

/// Relative slack under which two impurity decreases count as a tie, and
/// under which a decrease counts as no improvement at all.
inline constexpr double kSplitTieTolerance = 1e-9;

/// Midpoint of two consecutive distinct sorted values, kept strictly below
/// `hi` so that `hi` always routes right.
[[nodiscard]] inline double split_midpoint(double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return mid < hi ? mid : lo;
}

/// Exhaustive best split over `rows` (indices into x/y; repeats allowed).
/// Returns nothing when fewer than 2 * min_leaf rows are given, when no
/// candidate leaves min_leaf rows on both sides, or when no candidate
/// reduces the impurity.
[[nodiscard]] inline std::optional<Split> best_split(const Matrix &x, std::span<const double> y,
                                                     std::span<const std::size_t> rows,
                                                     std::size_t min_leaf) {
    const std::size_t n = rows.size();
    if (n < 2 || n < 2 * min_leaf) {
        return std::nullopt;
    }
    double sum = 0.0, sumsq = 0.0;
    double ymin = y[rows[0]], ymax = y[rows[0]];
    for (auto r : rows) {
        sum += y[r];
        sumsq += y[r] * y[r];
        ymin = std::min(ymin, y[r]);
        ymax = std::max(ymax, y[r]);
    }
    if (ymin == ymax) {
        return std::nullopt;
    }
    const double nd = static_cast<double>(n);
    const double parent_sse = sumsq - sum * sum / nd;
    const double tol = kSplitTieTolerance * std::max(parent_sse / nd, 0.0);

    std::optional<Split> best;
    std::vector<std::size_t> order(rows.begin(), rows.end());
    const std::size_t d = x[rows[0]].size();

    for (std::size_t f = 0; f < d; ++f) {
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return x[a][f] < x[b][f]; });
        double left_sum = 0.0, left_sumsq = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            const double yk = y[order[k - 1]];
            left_sum += yk;
            left_sumsq += yk * yk;
            const double lo = x[order[k - 1]][f];
            const double hi = x[order[k]][f];
            if (!(lo < hi) || k < min_leaf || n - k < min_leaf) {
                continue;
            }
            const double nl = static_cast<double>(k);
            const double nr = static_cast<double>(n - k);
            const double right_sum = sum - left_sum;
            const double right_sumsq = sumsq - left_sumsq;
            const double sse_l = left_sumsq - left_sum * left_sum / nl;
            const double sse_r = right_sumsq - right_sum * right_sum / nr;
            const double decrease = (parent_sse - sse_l - sse_r) / nd;
            if (decrease <= tol) {
                continue;
            }
            if (!best || decrease > best->decrease + tol) {
                best = Split{f, split_midpoint(lo, hi), decrease};
            }
        }
    }
    return best;
}

struct TreeNode {
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t feature = kNone; // kNone for leaves
    double threshold = 0.0;
    std::size_t left = kNone;
    std::size_t right = kNone;
    double prediction = 0.0; // mean target of the rows that reached this node
    std::size_t count = 0;

    [[nodiscard]] bool is_leaf() const noexcept { return feature == kNone; }
};

/// Flat array of nodes; node 0 is the root.
class RegressionTree {
  public:
    RegressionTree() = default;
    explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    [[nodiscard]] const std::vector<TreeNode> &nodes() const noexcept { return nodes_; }

    [[nodiscard]] const TreeNode &leaf_for(std::span<const double> x) const {
        if (nodes_.empty()) {
            throw std::logic_error("RegressionTree: empty tree");
        }
        std::size_t i = 0;
        while (!nodes_[i].is_leaf()) {
            const auto &n = nodes_[i];
            i = x[n.feature] <= n.threshold ? n.left : n.right;
        }
        return nodes_[i];
    }

    [[nodiscard]] double predict(std::span<const double> x) const {
        return leaf_for(x).prediction;
    }

    [[nodiscard]] std::size_t num_leaves() const {
        return static_cast<std::size_t>(
            std::count_if(nodes_.begin(), nodes_.end(), [](const auto &n) { return n.is_leaf(); }));
    }

    [[nodiscard]] std::size_t depth() const { return nodes_.empty() ? 0 : depth_from(0); }

  private:
    [[nodiscard]] std::size_t depth_from(std::size_t i) const {
        const auto &n = nodes_[i];
        if (n.is_leaf()) {
            return 0;
        }
        return 1 + std::max(depth_from(n.left), depth_from(n.right));
    }

    std::vector<TreeNode> nodes_;
};

namespace detail {

inline std::size_t grow(std::vector<TreeNode> &nodes, const Matrix &x, std::span<const double> y,
                        const std::vector<std::size_t> &rows, const ForestConfig &cfg,
                        std::size_t depth) {
    double sum = 0.0;
    for (auto r : rows) {
        sum += y[r];
    }
    const std::size_t id = nodes.size();
    TreeNode node;
    node.count = rows.size();
    node.prediction = sum / static_cast<double>(rows.size());
    nodes.push_back(node);

    if (depth >= cfg.max_depth || rows.size() < 2 * cfg.min_leaf) {
        return id;
    }
    const auto split = best_split(x, y, rows, cfg.min_leaf);
    if (!split) {
        return id;
    }
    std::vector<std::size_t> left, right;
    for (auto r : rows) {
        (x[r][split->feature] <= split->threshold ? left : right).push_back(r);
    }
    const std::size_t l = grow(nodes, x, y, left, cfg, depth + 1);
    const std::size_t r = grow(nodes, x, y, right, cfg, depth + 1);
    nodes[id].feature = split->feature;
    nodes[id].threshold = split->threshold;
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
}

inline void check_training_set(const Matrix &x, std::span<const double> y) {
    if (x.empty()) {
        throw std::invalid_argument("empty training set");
    }
    if (x.size() != y.size()) {
        throw std::invalid_argument("feature/target length mismatch");
    }
    for (const auto &row : x) {
        if (row.size() != x.front().size()) {
            throw std::invalid_argument("ragged feature matrix");
        }
    }
}

} // namespace detail

/// Grows a tree on `rows` until max_depth, fewer than 2 * min_leaf rows, or
/// no impurity-reducing split remains.
[[nodiscard]] inline RegressionTree build_tree(const Matrix &x, std::span<const double> y,
                                               const std::vector<std::size_t> &rows,
                                               const ForestConfig &cfg) {
    if (rows.empty()) {
        throw std::invalid_argument("build_tree: no rows");
    }
    std::vector<TreeNode> nodes;
    detail::grow(nodes, x, y, rows, cfg, 0);
    return RegressionTree(std::move(nodes));
}

[[nodiscard]] inline RegressionTree build_tree(const Matrix &x, std::span<const double> y,
                                               const ForestConfig &cfg) {
    detail::check_training_set(x, y);
    std::vector<std::size_t> rows(x.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    return build_tree(x, y, rows, cfg);
}

struct Forest {
    ForestConfig config;
    std::vector<RegressionTree> trees;

    [[nodiscard]] double predict(std::span<const double> x) const {
        if (trees.empty()) {
            throw std::logic_error("Forest: no trees (not fitted)");
        }
        double s = 0.0;
        for (const auto &t : trees) {
            s += t.predict(x);
        }
        return s / static_cast<double>(trees.size());
    }

    [[nodiscard]] std::vector<double> predict(const Matrix &x) const {
        std::vector<double> out;
        out.reserve(x.size());
        for (const auto &row : x) {
            out.push_back(predict(row));
        }
        return out;
    }
};

/// Bootstrap rows for tree `tree_index`: N draws with replacement from a
/// generator keyed on (seed, tree_index), so trees can be built in any order.
[[nodiscard]] inline std::vector<std::size_t> bootstrap_rows(std::size_t n, std::uint64_t seed,
                                                             std::size_t tree_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tree_index)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> rows(n);
    for (auto &r : rows) {
        r = pick(rng);
    }
    return rows;
}

[[nodiscard]] inline Forest fit_forest(const Matrix &x, std::span<const double> y,
                                       const ForestConfig &cfg) {
    cfg.validate();
    detail::check_training_set(x, y);
    Forest forest{cfg, {}};
    forest.trees.reserve(cfg.num_trees);
    std::vector<std::size_t> all(x.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    for (std::size_t t = 0; t < cfg.num_trees; ++t) {
        const auto rows = cfg.bootstrap ? bootstrap_rows(x.size(), cfg.seed, t) : all;
        forest.trees.push_back(build_tree(x, y, rows, cfg));
    }
    return forest;
}

[[nodiscard]] inline double predict_forest(const Forest &forest, std::span<const double> x) {
    return forest.predict(x);
}

} // namespace qsurf
