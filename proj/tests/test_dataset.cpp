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
#include "qsurf/dataset.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>
#include <set>
#include <sstream>

using namespace qsurf;

namespace {

const std::string kTable1 = std::string(QSURF_DATA_DIR) + "/table1.csv";
const std::string kHeader =
    "layer_height,wall_thickness,infill_density,infill_pattern,nozzle_temperature,"
    "bed_temperature,print_speed,fan_speed,surface_roughness\n";

std::vector<Sample> parse(const std::string &text) {
    std::istringstream in(text);
    return parse_csv(in);
}

} // namespace

TEST_CASE("load_csv on the bundled trials", "[dataset]") {
    const auto samples = load_csv(kTable1);
    REQUIRE(samples.size() == 30);

    const auto &first = samples.front();
    CHECK(first.layer_height == 0.1);
    CHECK(first.wall_thickness == 1.0);
    CHECK(first.infill_density == 50.0);
    CHECK(first.infill_pattern == InfillPattern::Honeycomb);
    CHECK(first.nozzle_temperature == 200.0);
    CHECK(first.surface_roughness == 6.12275);

    // Run 16 is the repaired line-wrapped cell.
    CHECK(samples[15].infill_pattern == InfillPattern::Triangles);
    CHECK(samples[15].surface_roughness == 6.04925);
    CHECK(samples.back().surface_roughness == 9.382);

    const auto counts = [&](InfillPattern p) {
        return std::count_if(samples.begin(), samples.end(),
                             [&](const Sample &s) { return s.infill_pattern == p; });
    };
    CHECK(counts(InfillPattern::Honeycomb) == 9);
    CHECK(counts(InfillPattern::Grid) == 6);
    CHECK(counts(InfillPattern::Triangles) == 9);
    CHECK(counts(InfillPattern::Cubic) == 6);
}

TEST_CASE("pattern normalization and encoding", "[dataset]") {
    CHECK(parse_pattern("honey comb") == InfillPattern::Honeycomb);
    CHECK(parse_pattern(" Honeycomb ") == InfillPattern::Honeycomb);
    CHECK(parse_pattern("triangl es") == InfillPattern::Triangles);
    CHECK(parse_pattern("GRID") == InfillPattern::Grid);
    CHECK_FALSE(parse_pattern("gyroid").has_value());

    CHECK(encode_pattern("grid") == 0.0);
    CHECK(encode_pattern("honeycomb") == 1.0);
    CHECK(encode_pattern("triangles") == 2.0);
    CHECK(encode_pattern("cubic") == 3.0);
    CHECK_THROWS_AS(encode_pattern("lines"), DatasetError);

    const auto s = parse(kHeader + "0.1,1,50,honey comb,200,60,120,0,6.12275\n");
    REQUIRE(s.size() == 1);
    CHECK(s[0].infill_pattern == InfillPattern::Honeycomb);
    CHECK(features_of(s[0])[3] == 1.0);
}

TEST_CASE("parse_csv rejects malformed input", "[dataset]") {
    SECTION("header is case-insensitive") {
        std::string upper = kHeader;
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        CHECK(parse(upper + "0.1,1,50,grid,200,60,120,0,6\n").size() == 1);
    }
    SECTION("schema mismatch") {
        CHECK_THROWS_AS(parse("a,b,c\n1,2,3\n"), DatasetError);
        CHECK_THROWS_AS(parse(""), DatasetError);
    }
    SECTION("non-numeric value names the row") {
        try {
            (void)parse(kHeader + "0.1,1,50,grid,200,60,120,0,6\n0.1,1,abc,grid,200,60,120,0,6\n");
            FAIL("expected DatasetError");
        } catch (const DatasetError &e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("row 2"));
        }
    }
    SECTION("missing value") {
        CHECK_THROWS_AS(parse(kHeader + "0.1,1,,grid,200,60,120,0,6\n"), DatasetError);
        CHECK_THROWS_AS(parse(kHeader + "0.1,1,50,grid,200,60,120,0\n"), DatasetError);
    }
    SECTION("unknown pattern") {
        CHECK_THROWS_AS(parse(kHeader + "0.1,1,50,gyroid,200,60,120,0,6\n"), DatasetError);
    }
    SECTION("range checks") {
        CHECK_THROWS_AS(parse(kHeader + "0,1,50,grid,200,60,120,0,6\n"), DatasetError);
        CHECK_THROWS_AS(parse(kHeader + "0.1,1,150,grid,200,60,120,0,6\n"), DatasetError);
        CHECK_THROWS_AS(parse(kHeader + "0.1,1,50,grid,200,60,120,-5,6\n"), DatasetError);
        CHECK_THROWS_AS(parse(kHeader + "0.1,1,50,grid,200,60,120,0,inf\n"), DatasetError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_csv("/nonexistent/table.csv"), DatasetError);
    }
}

TEST_CASE("CSV round trip", "[dataset][property]") {
    const auto samples = load_csv(kTable1);
    std::ostringstream out;
    write_csv(out, samples);
    CHECK(parse(out.str()) == samples);
}

TEST_CASE("split", "[dataset]") {
    const auto samples = load_csv(kTable1);

    SECTION("80/20 with seed 42") {
        const auto parts = split(samples, 0.2, 42);
        CHECK(parts.train.size() == 24);
        CHECK(parts.test.size() == 6);
    }
    SECTION("deterministic") {
        const auto a = split_indices(30, 0.2, 42);
        const auto b = split_indices(30, 0.2, 42);
        CHECK(a.train == b.train);
        CHECK(a.test == b.test);
    }
    SECTION("half split partitions the indices") {
        const auto ix = split_indices(30, 0.5, 7);
        CHECK(ix.train.size() == 15);
        CHECK(ix.test.size() == 15);
        std::set<std::size_t> all(ix.train.begin(), ix.train.end());
        all.insert(ix.test.begin(), ix.test.end());
        CHECK(all.size() == 30);
    }
    SECTION("partition property over many seeds") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const std::size_t n = 2 + seed % 40;
            const double frac = 0.1 + 0.8 * static_cast<double>(seed % 9) / 8.0;
            SplitIndices ix;
            try {
                ix = split_indices(n, frac, seed);
            } catch (const std::invalid_argument &) {
                continue; // degenerate for this n
            }
            std::vector<std::size_t> all = ix.train;
            all.insert(all.end(), ix.test.begin(), ix.test.end());
            std::sort(all.begin(), all.end());
            REQUIRE(all.size() == n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(all[i] == i);
            }
            CHECK(ix.test.size() ==
                  static_cast<std::size_t>(std::llround(static_cast<double>(n) * frac)));
        }
    }
    SECTION("degenerate inputs") {
        CHECK_THROWS_AS(split_indices(1, 0.5, 1), std::invalid_argument);
        CHECK_THROWS_AS(split_indices(30, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(split_indices(30, 1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(split_indices(3, 0.1, 1), std::invalid_argument); // rounds to 0
        CHECK_THROWS_AS(split_indices(3, 0.9, 1), std::invalid_argument); // rounds to 3
    }
}

TEST_CASE("FeatureScaler", "[dataset]") {
    const Matrix train{{1.0, 5.0, 2.0}, {3.0, 5.0, 4.0}, {2.0, 5.0, 6.0}};
    const auto sc = FeatureScaler::fit(train);

    const auto lo = sc.transform(std::vector<double>{1.0, 5.0, 2.0});
    const auto hi = sc.transform(std::vector<double>{3.0, 5.0, 6.0});
    CHECK(lo[0] == 0.0);
    CHECK(hi[0] == std::numbers::pi);
    CHECK(lo[1] == std::numbers::pi / 2.0); // constant column
    CHECK(hi[2] == std::numbers::pi);

    const auto clamped = sc.transform(std::vector<double>{-10.0, 99.0, 100.0});
    CHECK(clamped[0] == 0.0);
    CHECK(clamped[1] == std::numbers::pi / 2.0);
    CHECK(clamped[2] == std::numbers::pi);

    CHECK_THROWS_AS(FeatureScaler::fit(Matrix{}), std::invalid_argument);
    CHECK_THROWS_AS(sc.transform(std::vector<double>{1.0}), std::invalid_argument);

    SECTION("scaled training rows lie in [0, pi]") {
        const auto samples = load_csv(kTable1);
        const auto x = feature_matrix(samples);
        const auto s = FeatureScaler::fit(x);
        for (const auto &row : s.transform(x)) {
            for (double v : row) {
                CHECK(v >= 0.0);
                CHECK(v <= std::numbers::pi);
            }
        }
    }
    SECTION("statistics ignore test rows") {
        const auto samples = load_csv(kTable1);
        auto parts = split(samples, 0.2, 42);
        const auto before = FeatureScaler::fit(feature_matrix(parts.train));
        for (auto &s : parts.test) {
            s.layer_height *= 100.0;
            s.print_speed = -1.0;
        }
        const auto after = FeatureScaler::fit(feature_matrix(parts.train));
        CHECK(before == after);
    }
}
