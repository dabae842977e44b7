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
#include "qsurf/serialization.hpp"

#include <catch_amalgamated.hpp>

using namespace qsurf;

namespace {

const std::string kTable1 = std::string(QSURF_DATA_DIR) + "/table1.csv";

} // namespace

TEST_CASE("variational model record reproduces predictions bit for bit", "[serialization]") {
    const auto samples = load_csv(kTable1);
    const auto x = feature_matrix(samples);
    const auto y = targets_of(samples);
    for (auto kind : {ModelKind::QNN, ModelKind::VQC}) {
        const auto trained = train(kind, x, y, TrainConfig{2, 3, 0.1, 7});
        const auto text = to_json(trained.model).dump();
        const auto back = variational_from_json(json::parse(text));
        CHECK(back.params == trained.model.params);
        CHECK(back.scaler == trained.model.scaler);
        CHECK(back.output == trained.model.output);
        CHECK(back.spec == trained.model.spec);
        CHECK(back.config.seed == 7);
        for (const auto &row : x) {
            CHECK(predict(back, row) == predict(trained.model, row));
        }
    }
}

TEST_CASE("forest record reproduces predictions bit for bit", "[serialization]") {
    const auto samples = load_csv(kTable1);
    const auto x = feature_matrix(samples);
    const auto y = targets_of(samples);
    const auto forest = fit_forest(x, y, ForestConfig{});
    const auto j = json::parse(to_json(forest).dump());
    CHECK(j.at("model_kind") == "qforest");
    CHECK(j.at("trees").size() == 25);
    const auto back = forest_from_json(j);
    CHECK(back.config.seed == forest.config.seed);
    REQUIRE(back.trees.size() == forest.trees.size());
    for (const auto &row : x) {
        CHECK(back.predict(row) == forest.predict(row));
    }
}

TEST_CASE("malformed records are rejected", "[serialization]") {
    CHECK_THROWS(variational_from_json(json{{"model_kind", "qforest"}}));
    CHECK_THROWS(forest_from_json(json{{"model_kind", "qnn"}}));
    CHECK_THROWS(variational_from_json(json::parse(
        R"({"model_kind":"qnn","num_qubits":2,"layers":1,"readout_qubit":0,"params":[0.1]})")));
}
