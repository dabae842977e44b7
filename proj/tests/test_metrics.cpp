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
#include "qsurf/metrics.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

using namespace qsurf::metrics;
using V = std::vector<double>;

TEST_CASE("mse", "[metrics]") {
    CHECK(mse(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
    CHECK(mse(V{0, 0}, V{3, 4}) == 12.5);
    CHECK(mse(V{6.12275}, V{7.12275}) == 1.0);
    CHECK_THROWS_AS(mse(V{1, 2}, V{1}), std::invalid_argument);
    CHECK_THROWS_AS(mse(V{}, V{}), std::invalid_argument);
}

TEST_CASE("mae", "[metrics]") {
    CHECK(mae(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
    CHECK(mae(V{0, 0}, V{3, -4}) == 3.5);
    CHECK(mae(V{1, 2, 3}, V{1.5, 2.5, 3.5}) == 0.5);
    CHECK_THROWS_AS(mae(V{1, 2}, V{1}), std::invalid_argument);
    CHECK_THROWS_AS(mae(V{}, V{}), std::invalid_argument);
}

TEST_CASE("explained_variance", "[metrics]") {
    const V y{1, 2, 3, 6};
    CHECK(explained_variance(y, y) == 1.0);
    CHECK(explained_variance(y, V(4, 3.0)) == 0.0); // mean(y) = 3
    CHECK(explained_variance(V{0, 2}, V{2, 0}) == -3.0);
    CHECK(explained_variance(V{0, 2}, V{2, 0}) < 0.0);
    CHECK_THROWS_AS(explained_variance(V{5, 5, 5}, V{1, 2, 3}), std::domain_error);
    CHECK_THROWS_AS(explained_variance(V{5}, V{5}), std::invalid_argument);
    CHECK_THROWS_AS(explained_variance(V{1, 2}, V{1}), std::invalid_argument);
}

TEST_CASE("evaluate bundles all three metrics", "[metrics]") {
    const auto r = evaluate(V{0, 2}, V{2, 0});
    CHECK(r.n == 2);
    CHECK(r.mse == 4.0);
    CHECK(r.mae == 2.0);
    CHECK(r.evs == -3.0);
}

TEST_CASE("metric properties on random vectors", "[metrics][property]") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 17;
        V y(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = g(rng);
            p[i] = g(rng);
        }
        const double m = mse(y, p), a = mae(y, p);
        CHECK(m >= 0.0);
        CHECK(a >= 0.0);
        CHECK(a <= std::sqrt(m) + 1e-12);
        CHECK(explained_variance(y, p) <= 1.0);

        // Shift invariance.
        V ys = y, ps = p;
        for (std::size_t i = 0; i < n; ++i) {
            ys[i] += 17.5;
            ps[i] += 17.5;
        }
        CHECK(explained_variance(ys, ps) == Catch::Approx(explained_variance(y, p)).margin(1e-9));

        // Permutation invariance over paired samples.
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        V yp(n), pp(n);
        for (std::size_t i = 0; i < n; ++i) {
            yp[i] = y[perm[i]];
            pp[i] = p[perm[i]];
        }
        CHECK(mse(yp, pp) == Catch::Approx(m).epsilon(1e-12));
        CHECK(mae(yp, pp) == Catch::Approx(a).epsilon(1e-12));

        // Mean prediction.
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n);
        CHECK(explained_variance(y, V(n, mean)) == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("EVS with independent noise of equal variance is near zero", "[metrics][property]") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 100000;
    V y(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = g(rng);
        p[i] = y[i] + g(rng);
    }
    CHECK(std::abs(explained_variance(y, p)) < 0.05);
}
