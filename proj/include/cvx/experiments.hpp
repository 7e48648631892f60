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


// Batch experiment driver behind the `cvx` command-line tool.
//
// Every experiment writes its tables into the output directory together with
// verdict.json, which lists each asserted check with pass/fail and margin.
// Randomness flows only from the configured seed through std::mt19937_64.

#pragma once

#include <cstdint>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cvx/channels.hpp"
#include "cvx/ensembles.hpp"
#include "cvx/gaussify.hpp"
#include "cvx/io.hpp"
#include "cvx/measures.hpp"

namespace cvx {

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"gaussify-converge", "extremality", "counterexample",
                                                "max-entropy",       "capacity",    "distillability"};
    return names;
}

struct ExperimentConfig {
    std::string experiment;
    std::optional<std::filesystem::path> state_path;
    std::optional<std::filesystem::path> channel_path;
    double lambda = 0.25;
    unsigned m_max = 6;
    double grid_max = 3.0;
    double grid_step = 0.375;
    std::uint64_t seed = 7;
    std::size_t count = 100;
    double eta = 0.8;
    double kappa = 3.0;
    std::filesystem::path out_dir = ".";
    double tol = kInequalityTol;
};

struct Assertion {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // positive when satisfied
    std::string detail;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<Assertion> assertions;
    Json findings = Json::object();
    std::vector<std::filesystem::path> files;

    bool passed() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }
};

inline Json to_json(const ExperimentResult& r) {
    Json checks = Json::array();
    for (const auto& a : r.assertions)
        checks.push_back({{"name", a.name}, {"pass", a.pass}, {"margin", format_number(a.margin)}, {"detail", a.detail}});
    return {{"experiment", r.experiment}, {"assertions", checks}, {"findings", r.findings}, {"passed", r.passed()}};
}

namespace detail {

inline void add_file(ExperimentResult& res, const std::filesystem::path& path, const std::string& content) {
    write_text_file(path, content);
    res.files.push_back(path);
}

inline Assertion strictly_decreasing(const std::string& name, const std::vector<double>& e) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < e.size(); ++i) margin = std::min(margin, e[i - 1] - e[i]);
    if (e.size() < 2) margin = 0.0;
    return {name, margin > 0.0, margin, "sup_error strictly decreasing in n"};
}

inline Assertion count_violations(const std::string& name, std::size_t violations, double min_margin, std::size_t total) {
    return {name, violations == 0, min_margin,
            std::to_string(violations) + " violations in " + std::to_string(total) + " states"};
}

inline ExperimentResult run_gaussify_converge(const ExperimentConfig& cfg) {
    ExperimentResult res;
    StateSpec spec = cfg.state_path ? load_state(*cfg.state_path)
                                    : StateSpec{fock_number_state({4}, {1}), std::nullopt};
    const PhaseSpaceGrid grid = standard_grid(spec.n_modes(), cfg.grid_max, cfg.grid_step);
    ConvergenceReport report;
    bool gaussian = !spec.is_fock();
    if (gaussian) {
        report = convergence_scan(GaussianSource{std::get<GaussianState>(spec.state)}, cfg.m_max, grid);
    } else {
        report = convergence_scan(FockSource(std::get<FockDensityOperator>(spec.state)), cfg.m_max, grid);
    }
    for (const auto& p : emit_report(report, cfg.out_dir, "convergence")) res.files.push_back(p);
    if (gaussian) {
        double worst = 0.0;
        for (const auto& row : report.rows) worst = std::max(worst, row.sup_error);
        res.assertions.push_back({"gaussian_fixed_point", worst <= 1e-12, 1e-12 - worst, "all sup errors <= 1e-12"});
    } else {
        res.assertions.push_back(strictly_decreasing("monotone_first_row", report.errors("first")));
        res.assertions.push_back(strictly_decreasing("monotone_balanced_row", report.errors("balanced")));
    }
    for (const auto& [cls, s] : report.slopes) res.findings["slope_" + cls] = s ? Json(format_number(*s)) : Json(nullptr);
    for (const auto& [cls, s] : report.tail_slopes)
        res.findings["tail_slope_" + cls] = s ? Json(format_number(*s)) : Json(nullptr);
    return res;
}

inline ExperimentResult run_extremality(const ExperimentConfig& cfg) {
    ExperimentResult res;
    if (cfg.state_path) {
        const StateSpec spec = load_state(*cfg.state_path);
        if (!spec.is_fock()) throw parse_error(cfg.state_path->string() + ": extremality needs a Fock-space state");
        const auto report = extremality_report(std::get<FockDensityOperator>(spec.state), spec.partition_or_default(),
                                               cfg.state_path->stem().string(), cfg.tol);
        for (const auto& p : emit_report(report, cfg.out_dir, "extremality")) res.files.push_back(p);
        res.assertions.push_back({"max_entropy", report.max_entropy_holds(), report.max_entropy_margin(), "S(rho_G) >= S(rho)"});
        res.assertions.push_back({"conditional_entropy", report.conditional_entropy_holds(),
                                  report.conditional_entropy_margin(), "[S_A - S](rho) >= [S_A - S](rho_G)"});
        res.findings["log_negativity_margin"] = format_number(report.negativity_margin());
        return res;
    }
    const auto ensemble = bounded_photon_ensemble(cfg.seed, cfg.count);
    const Bipartition part = Bipartition::split(2, 1);
    std::string csv = extremality_csv_header();
    std::size_t bad_s = 0, bad_c = 0;
    double min_s = std::numeric_limits<double>::infinity(), min_c = min_s;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const auto r = extremality_report(ensemble[i].state, part,
                                          std::to_string(i) + (ensemble[i].mixed ? "-mixed" : "-pure"), cfg.tol);
        csv += extremality_csv_row(r);
        bad_s += r.max_entropy_holds() ? 0 : 1;
        bad_c += r.conditional_entropy_holds() ? 0 : 1;
        min_s = std::min(min_s, r.max_entropy_margin());
        min_c = std::min(min_c, r.conditional_entropy_margin());
    }
    add_file(res, cfg.out_dir / "extremality.csv", csv);
    res.assertions.push_back(count_violations("max_entropy", bad_s, min_s, ensemble.size()));
    res.assertions.push_back(count_violations("conditional_entropy", bad_c, min_c, ensemble.size()));
    return res;
}

inline ExperimentResult run_counterexample(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const auto phi = counterexample_phi(cfg.lambda);
    const auto report = extremality_report(phi.state, Bipartition::split(2, 1), "phi", cfg.tol);
    Json j = to_json(report);
    j["lambda"] = format_number(cfg.lambda);
    add_file(res, cfg.out_dir / "counterexample.json", serialize(j));
    res.assertions.push_back({"max_entropy", report.max_entropy_holds(), report.max_entropy_margin(), "S(rho_G) >= S(rho)"});
    res.assertions.push_back({"conditional_entropy", report.conditional_entropy_holds(),
                              report.conditional_entropy_margin(), "[S_A - S](rho) >= [S_A - S](rho_G)"});
    res.findings["lambda"] = format_number(cfg.lambda);
    res.findings["log_negativity_state"] = format_number(report.log_negativity);
    res.findings["log_negativity_gaussian"] = format_number(report.log_negativity_gaussian);
    res.findings["negativity_counterexample"] = report.negativity_counterexample() ? "confirmed" : "not_observed";
    return res;
}

inline ExperimentResult run_max_entropy(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const auto ensemble = bounded_photon_ensemble(cfg.seed, cfg.count);
    std::string csv = "index,kind,entropy,entropy_gaussian,margin\n";
    std::size_t bad = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const auto& rho = ensemble[i].state;
        const double s = von_neumann_entropy(rho);
        const double sg = gaussian_entropy(extract_moments(rho).cm);
        const double margin = sg - s;
        bad += margin >= -cfg.tol ? 0 : 1;
        min_margin = std::min(min_margin, margin);
        csv += std::to_string(i) + "," + (ensemble[i].mixed ? "mixed" : "pure") + "," + format_number(s) + "," +
               format_number(sg) + "," + format_number(margin) + "\n";
    }
    add_file(res, cfg.out_dir / "max_entropy.csv", csv);
    res.assertions.push_back(count_violations("max_entropy", bad, min_margin, ensemble.size()));
    return res;
}

inline ExperimentResult run_capacity(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const bool pure_loss = !cfg.channel_path;
    const GaussianChannel ch = pure_loss ? make_pure_loss(cfg.eta) : load_channel(*cfg.channel_path);
    const EnergyConstraint constraint(cfg.kappa);
    const auto opt = optimize_modulation(ch, constraint);
    const auto oracle = grid_search_modulation(ch, constraint);
    const double delta = opt.value - oracle.value;
    Json j;
    j["label"] = "Gaussian-encoding achievable rate";
    j["units"] = "bits per channel use; hbar = 1, vacuum energy 1 per mode";
    j["channel"] = {{"x", matrix_json(ch.x)}, {"y", matrix_json(ch.y)}};
    j["kappa"] = format_number(cfg.kappa);
    j["kappa_used"] = format_number(opt.kappa_used);
    j["mean_photon"] = format_number(opt.mean_photon);
    j["modulation"] = matrix_json(opt.modulation);
    j["value"] = format_number(opt.value);
    j["oracle_value"] = format_number(oracle.value);
    j["oracle_delta"] = format_number(delta);
    res.assertions.push_back({"oracle_agreement", std::abs(delta) <= 1e-4, 1e-4 - std::abs(delta),
                              "|optimizer - grid search| <= 1e-4"});
    if (pure_loss) {
        // (x + 1) log2(x + 1) - x log2 x at x = eta * nbar
        const double x = cfg.eta * opt.mean_photon;
        const double closed = x > 0.0 ? (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x) : 0.0;
        j["closed_form_value"] = format_number(closed);
        res.assertions.push_back({"closed_form_agreement", std::abs(opt.value - closed) <= 1e-6,
                                  1e-6 - std::abs(opt.value - closed), "pure-loss photon-number entropy"});
    }
    add_file(res, cfg.out_dir / "capacity.json", serialize(j));
    res.findings["value"] = format_number(opt.value);
    res.findings["oracle_delta"] = format_number(delta);
    return res;
}

inline ExperimentResult run_distillability(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const Bipartition part = Bipartition::split(2, 1);
    std::string csv = "index,min_pt_symplectic_eigenvalue,log_negativity,distillable,consistent\n";
    std::size_t mismatches = 0;
    auto row = [&](const std::string& label, const RealMatrix& cm) {
        const double nu = symplectic_eigenvalues(partial_transpose_cm(cm, part)).back();
        const double en = log_negativity_gaussian(cm, part);
        const bool dist = is_distillable_gaussian(cm, part, cfg.tol);
        const bool ok = dist == (en > cfg.tol);
        mismatches += ok ? 0 : 1;
        csv += label + "," + format_number(nu) + "," + format_number(en) + "," + (dist ? "1" : "0") + "," +
               (ok ? "1" : "0") + "\n";
    };
    if (cfg.state_path) {
        const StateSpec spec = load_state(*cfg.state_path);
        const RealMatrix cm = spec.is_fock() ? extract_moments(std::get<FockDensityOperator>(spec.state)).cm
                                             : std::get<GaussianState>(spec.state).cm;
        if (cm.rows() != 4) throw parse_error(cfg.state_path->string() + ": distillability needs a two-mode state");
        row(cfg.state_path->stem().string(), cm);
    } else {
        Rng rng(cfg.seed);
        for (std::size_t i = 0; i < cfg.count; ++i) row(std::to_string(i), random_two_mode_cm(rng));
    }
    add_file(res, cfg.out_dir / "distillability.csv", csv);
    res.assertions.push_back({"criterion_consistency", mismatches == 0, -static_cast<double>(mismatches),
                              std::to_string(mismatches) + " mismatches between the PT criterion and E_N > tol"});
    return res;
}

}  // namespace detail

/// Runs one named experiment, writes its artifacts and verdict.json.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult res;
    const std::string& e = cfg.experiment;
    if (e == "gaussify-converge") res = detail::run_gaussify_converge(cfg);
    else if (e == "extremality") res = detail::run_extremality(cfg);
    else if (e == "counterexample") res = detail::run_counterexample(cfg);
    else if (e == "max-entropy") res = detail::run_max_entropy(cfg);
    else if (e == "capacity") res = detail::run_capacity(cfg);
    else if (e == "distillability") res = detail::run_distillability(cfg);
    else throw domain_error("unknown experiment '" + e + "'");
    res.experiment = e;
    const auto verdict = cfg.out_dir / "verdict.json";
    write_text_file(verdict, serialize(to_json(res)));
    res.files.push_back(verdict);
    return res;
}

}  // namespace cvx
