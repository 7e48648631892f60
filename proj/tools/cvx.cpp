// Copyright 2026 The cvx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// cvx <experiment> [--flags]
//
// Exit status: 0 when every asserted check passes, 1 when any check fails,
// 2 on usage, parse, capacity or I/O errors.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cvx/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-extremality experiments for continuous-variable states"};
    app.require_subcommand(1);

    cvx::ExperimentConfig cfg;
    std::string state, channel;

    for (const auto& name : cvx::experiment_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--state", state, "state JSON file");
        sub->add_option("--channel", channel, "channel JSON file (capacity)");
        sub->add_option("--lambda", cfg.lambda, "counterexample amplitude")->capture_default_str();
        sub->add_option("--m-max", cfg.m_max, "largest network level, n = 2^m")->capture_default_str();
        sub->add_option("--grid-max", cfg.grid_max, "phase-space grid extent")->capture_default_str();
        sub->add_option("--grid-step", cfg.grid_step, "phase-space grid spacing")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "RNG seed (mt19937_64)")->capture_default_str();
        sub->add_option("--count", cfg.count, "ensemble size")->capture_default_str();
        sub->add_option("--eta", cfg.eta, "pure-loss transmissivity")->capture_default_str();
        sub->add_option("--kappa", cfg.kappa, "energy bound")->capture_default_str();
        sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "inequality tolerance")->capture_default_str();
        sub->callback([&cfg, name] { cfg.experiment = name; });
    }

    CLI11_PARSE(app, argc, argv);
    if (!state.empty()) cfg.state_path = state;
    if (!channel.empty()) cfg.channel_path = channel;

    try {
        const auto result = cvx::run_experiment(cfg);
        for (const auto& a : result.assertions) {
            std::printf("%-4s %-24s margin=%s  %s\n", a.pass ? "PASS" : "FAIL", a.name.c_str(),
                        cvx::format_number(a.margin).c_str(), a.detail.c_str());
        }
        for (const auto& f : result.files) std::printf("wrote %s\n", f.string().c_str());
        return result.passed() ? 0 : 1;
    } catch (const cvx::error& e) {
        std::cerr << "cvx " << cfg.experiment << ": " << e.what() << "\n";
        return 2;
    }
}
