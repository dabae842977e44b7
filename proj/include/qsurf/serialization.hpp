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
 * JSON records for trained models and metric reports.
 *
 * Doubles are written in shortest round-trip form, so a model read back
 * from its record reproduces predictions bit for bit.
 */
#pragma once

#include "qsurf/metrics.hpp"
#include "qsurf/qforest.hpp"
#include "qsurf/variational.hpp"

#include "json.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsurf {

using json = nlohmann::ordered_json;

inline json to_json(const metrics::MetricsReport &r) {
    return json{{"mse", r.mse}, {"mae", r.mae}, {"evs", r.evs}, {"n", r.n}};
}

inline json to_json(const VariationalModel &m) {
    json params = json::array();
    for (double v : m.params.values()) {
        params.push_back(v);
    }
    return json{
        {"model_kind", std::string(to_string(m.spec.kind))},
        {"num_qubits", m.spec.num_qubits},
        {"layers", m.spec.layers},
        {"readout_qubit", m.spec.readout},
        {"params", std::move(params)},
        {"scaler", {{"min", m.scaler.mins()}, {"max", m.scaler.maxs()}}},
        {"output_map", {{"y_min", m.output.y_min}, {"y_max", m.output.y_max}}},
        {"config",
         {{"layers", m.config.layers},
          {"iterations", m.config.iterations},
          {"learning_rate", m.config.learning_rate},
          {"init_range", m.config.init_range}}},
        {"seed", m.config.seed},
    };
}

inline VariationalModel variational_from_json(const json &j) {
    const auto kind = parse_model_kind(j.at("model_kind").get<std::string>());
    if (!kind) {
        throw std::invalid_argument("model record: not a variational model kind");
    }
    VariationalModel m;
    m.spec = CircuitSpec{*kind, j.at("num_qubits").get<std::size_t>(),
                         j.at("layers").get<std::size_t>(),
                         j.at("readout_qubit").get<std::size_t>()};
    m.spec.validate();
    m.params = ParameterVector(m.spec.layers, m.spec.num_qubits,
                               j.at("params").get<std::vector<double>>());
    m.scaler = FeatureScaler(j.at("scaler").at("min").get<std::vector<double>>(),
                             j.at("scaler").at("max").get<std::vector<double>>());
    m.output = OutputMap{j.at("output_map").at("y_min").get<double>(),
                         j.at("output_map").at("y_max").get<double>()};
    const auto &c = j.at("config");
    m.config.layers = c.at("layers").get<std::size_t>();
    m.config.iterations = c.at("iterations").get<std::size_t>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.init_range = c.at("init_range").get<double>();
    m.config.seed = j.at("seed").get<std::uint64_t>();
    return m;
}

namespace detail {

inline json node_to_json(const std::vector<TreeNode> &nodes, std::size_t i) {
    const auto &n = nodes.at(i);
    if (n.is_leaf()) {
        return json{{"leaf", n.prediction}, {"count", n.count}};
    }
    return json{{"feature", n.feature},
                {"threshold", n.threshold},
                {"count", n.count},
                {"value", n.prediction},
                {"left", node_to_json(nodes, n.left)},
                {"right", node_to_json(nodes, n.right)}};
}

inline std::size_t node_from_json(std::vector<TreeNode> &nodes, const json &j) {
    const std::size_t id = nodes.size();
    nodes.emplace_back();
    if (j.contains("leaf")) {
        nodes[id].prediction = j.at("leaf").get<double>();
        nodes[id].count = j.at("count").get<std::size_t>();
        return id;
    }
    TreeNode n;
    n.feature = j.at("feature").get<std::size_t>();
    n.threshold = j.at("threshold").get<double>();
    n.count = j.at("count").get<std::size_t>();
    n.prediction = j.at("value").get<double>();
    n.left = node_from_json(nodes, j.at("left"));
    n.right = node_from_json(nodes, j.at("right"));
    nodes[id] = n;
    return id;
}

} // namespace detail

inline json to_json(const RegressionTree &t) {
    if (t.nodes().empty()) {
        return json{};
    }
    return detail::node_to_json(t.nodes(), 0);
}

inline json to_json(const Forest &f) {
    json trees = json::array();
    for (const auto &t : f.trees) {
        trees.push_back(to_json(t));
    }
    return json{{"model_kind", "qforest"},
                {"config",
                 {{"num_trees", f.config.num_trees},
                  {"max_depth", f.config.max_depth},
                  {"min_leaf", f.config.min_leaf},
                  {"bootstrap", f.config.bootstrap}}},
                {"seed", f.config.seed},
                {"trees", std::move(trees)}};
}

inline Forest forest_from_json(const json &j) {
    if (j.at("model_kind").get<std::string>() != "qforest") {
        throw std::invalid_argument("model record: not a qforest model");
    }
    Forest f;
    const auto &c = j.at("config");
    f.config.num_trees = c.at("num_trees").get<std::size_t>();
    f.config.max_depth = c.at("max_depth").get<std::size_t>();
    f.config.min_leaf = c.at("min_leaf").get<std::size_t>();
    f.config.bootstrap = c.at("bootstrap").get<bool>();
    f.config.seed = j.at("seed").get<std::uint64_t>();
    for (const auto &tj : j.at("trees")) {
        std::vector<TreeNode> nodes;
        detail::node_from_json(nodes, tj);
        f.trees.emplace_back(std::move(nodes));
    }
    return f;
}

} // namespace qsurf
