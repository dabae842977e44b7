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

// Batch front-end.
//
//   qsurf run --algorithm {qnn,vqc,qforest} --data FILE [options]
//   qsurf compare --algorithms qnn,vqc,qforest --data FILE [options]
//
// Exit codes: 0 success, 1 bad flags, 2 dataset error, 3 training
// divergence, 4 output could not be written, 5 unexpected internal error.

#include "qsurf/qsurf.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

namespace {

enum ExitCode : int {
    kOk = 0,
    kBadFlags = 1,
    kDatasetError = 2,
    kDivergence = 3,
    kOutputError = 4,
    kInternal = 5,
};

void add_shared_flags(CLI::App &cmd, qsurf::RunConfig &cfg) {
    cmd.add_option("--data", cfg.data, "CSV dataset")->required();
    cmd.add_option("--test-fraction", cfg.test_fraction, "held-out fraction")
        ->capture_default_str();
    cmd.add_option("--seed", cfg.seed, "seed for split, initialization and bootstrap")
        ->capture_default_str();
    cmd.add_option("--layers", cfg.layers, "variational layers")->capture_default_str();
    cmd.add_option("--iterations", cfg.iterations, "gradient-descent iterations")
        ->capture_default_str();
    cmd.add_option("--learning-rate", cfg.learning_rate, "gradient-descent step size")
        ->capture_default_str();
    cmd.add_option("--num-trees", cfg.num_trees, "trees in the forest")->capture_default_str();
    cmd.add_option("--max-depth", cfg.max_depth, "maximum tree depth")->capture_default_str();
    cmd.add_option("--min-leaf", cfg.min_leaf, "minimum rows per leaf")->capture_default_str();
    cmd.add_option("--bootstrap", cfg.bootstrap, "bootstrap-resample each tree (true/false)")
        ->capture_default_str();
    cmd.add_option("--out", cfg.out, "output directory")->capture_default_str();
}

qsurf::Algorithm algorithm_or_throw(const std::string &name) {
    auto a = qsurf::parse_algorithm(name);
    if (!a) {
        throw qsurf::ConfigError("unknown algorithm '" + name + "' (expected qnn, vqc or qforest)");
    }
    return *a;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum ML regressors for FDM surface roughness"};
    app.require_subcommand(1);

    qsurf::RunConfig cfg;
    std::string algorithm;
    std::vector<std::string> algorithms;

    auto *run = app.add_subcommand("run", "train and evaluate one algorithm");
    run->add_option("--algorithm", algorithm, "qnn, vqc or qforest")->required();
    add_shared_flags(*run, cfg);

    qsurf::RunConfig cmp_cfg;
    auto *cmp = app.add_subcommand("compare", "run several algorithms on one split and rank them");
    cmp->add_option("--algorithms", algorithms, "comma-separated algorithm list")
        ->delimiter(',')
        ->required();
    add_shared_flags(*cmp, cmp_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kBadFlags;
    }

    try {
        if (run->parsed()) {
            cfg.algorithm = algorithm_or_throw(algorithm);
            const auto r = qsurf::run(cfg);
            std::cout << qsurf::metrics_json(r).dump(2) << "\n";
        } else {
            std::vector<qsurf::RunConfig> configs;
            for (const auto &name : algorithms) {
                auto c = cmp_cfg;
                c.algorithm = algorithm_or_throw(name);
                configs.push_back(c);
            }
            const auto results = qsurf::compare(configs, cmp_cfg.out);
            std::cout << qsurf::comparison_table(results);
        }
    } catch (const qsurf::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadFlags;
    } catch (const qsurf::DatasetError &e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kDatasetError;
    } catch (const qsurf::TrainingDivergence &e) {
        std::cerr << "training diverged: " << e.what() << "\n";
        return kDivergence;
    } catch (const qsurf::OutputError &e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kOutputError;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
