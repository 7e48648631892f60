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


// Acceptance checks, one line per criterion:
//   acceptance            run every criterion
//   acceptance <k> ...    run only the listed criteria
// Exit status is 0 iff every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cvx/cvx.hpp"
#include "oracles.hpp"

using namespace cvx;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

FockDensityOperator phi_state(double lambda, std::size_t dim) {
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(dim * dim));
    c(0) = std::sqrt(1.0 - lambda * lambda);
    c(static_cast<Eigen::Index>(dim + 1)) = lambda;
    return build_pure_state({dim, dim}, c);
}

FockDensityOperator cat02() {
    ComplexVector c = ComplexVector::Zero(4);
    c(0) = c(2) = 1.0;
    return build_pure_state({4}, c);
}

const Bipartition& ab() {
    static const Bipartition p = Bipartition::split(2, 1);
    return p;
}

Outcome counterexample_values() {
    const Stopwatch clock;
    const auto c = counterexample_phi(0.25);
    const double en = log_negativity_fock(c.state, ab());
    const double eg = log_negativity_gaussian(c.moments.cm, ab());
    const double t = clock.seconds();
    const bool ok = std::abs(en - 0.5697) <= 0.005 && std::abs(eg - 0.642) <= 0.005 && t < 1.0;
    return {ok, "E_N(state)=" + fmt("%.5f", en) + " E_N(gaussian)=" + fmt("%.5f", eg) + " time=" + fmt("%.3fs", t)};
}

Outcome covariance_oracle() {
    double worst = 0.0, spread = 0.0;
    for (double lam : {0.1, 0.25, 0.5}) {
        const RealMatrix g3 = extract_moments(phi_state(lam, 3)).cm;
        const RealMatrix g4 = extract_moments(phi_state(lam, 4)).cm;
        const RealMatrix ref = oracle::phi_cm(lam);
        worst = std::max({worst, (g3 - ref).cwiseAbs().maxCoeff(), (g4 - ref).cwiseAbs().maxCoeff()});
        spread = std::max(spread, (g3 - g4).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-10 && spread <= 1e-10,
            "max |cm - analytic|=" + fmt("%.2e", worst) + " max |cm(3,3) - cm(4,4)|=" + fmt("%.2e", spread)};
}

Outcome path_equivalence() {
    const Stopwatch clock;
    const std::vector<FockDensityOperator> inputs = {fock_number_state({3}, {0}), fock_number_state({4}, {1}), cat02(),
                                                     phi_state(0.25, 3)};
    double worst = 0.0;
    std::size_t min_points = SIZE_MAX;
    for (const auto& rho : inputs) {
        const FockSource formula(rho);
        const auto outputs = fock_gaussify_step(rho);
        const auto grid = standard_grid(rho.n_modes());
        min_points = std::min(min_points, grid.points.size());
        for (std::size_t k = 0; k < outputs.size(); ++k) {
            const FockChi fock(outputs[k]);
            for (const auto& xi : grid.points) worst = std::max(worst, std::abs(fock(xi) - reduced_chi(formula, k, 2, xi)));
        }
    }
    const double t = clock.seconds();
    return {worst <= 1e-9 && min_points >= 50 && t < 30.0,
            "max deviation=" + fmt("%.2e", worst) + " points>=" + std::to_string(min_points) + " time=" + fmt("%.2fs", t)};
}

Outcome clt_convergence() {
    const auto report = convergence_scan(FockSource(fock_number_state({4}, {1})), 6, standard_grid(1));
    const auto e = report.errors("first");
    bool decreasing = true;
    for (std::size_t i = 1; i < e.size(); ++i) decreasing = decreasing && e[i] < e[i - 1];
    const double slope = report.slope("first").value_or(NAN);
    const double tail = report.tail_slope("first").value_or(NAN);
    const bool ok = decreasing && std::abs(slope + 1.0) <= 0.15 && e.back() < e.front() / 8.0;
    return {ok, std::string("decreasing=") + (decreasing ? "yes" : "no") + " slope(n=2..64)=" + fmt("%.4f", slope) +
                    " slope(n=4..64)=" + fmt("%.4f", tail) + " e(2)=" + fmt("%.4e", e.front()) +
                    " e(64)=" + fmt("%.4e", e.back())};
}

Outcome extremality_suites() {
    const Stopwatch clock;
    const auto members = bounded_photon_ensemble(7, 200);
    std::size_t bad_s = 0, bad_c = 0;
    double min_s = INFINITY, min_c = INFINITY;
    for (const auto& m : members) {
        const auto r = extremality_report(m.state, ab());
        bad_s += r.max_entropy_margin() >= -1e-9 ? 0 : 1;
        bad_c += r.conditional_entropy_margin() >= -1e-9 ? 0 : 1;
        min_s = std::min(min_s, r.max_entropy_margin());
        min_c = std::min(min_c, r.conditional_entropy_margin());
    }
    const double t = clock.seconds();
    return {bad_s == 0 && bad_c == 0 && t < 300.0,
            "states=" + std::to_string(members.size()) + " violations=" + std::to_string(bad_s) + "/" +
                std::to_string(bad_c) + " min margins=" + fmt("%.3e", min_s) + "/" + fmt("%.3e", min_c) +
                " time=" + fmt("%.2fs", t)};
}

Outcome entropy_cross_representation() {
    const double fock = von_neumann_entropy(thermal_state(40, 0.5));
    const double cm = gaussian_entropy(2.0 * RealMatrix::Identity(2, 2));
    const double diff = std::abs(fock - cm);
    return {diff <= 1e-6, "S_fock=" + fmt("%.9f", fock) + " h(2)=" + fmt("%.9f", cm) + " diff=" + fmt("%.2e", diff)};
}

Outcome distillability_consistency() {
    Rng rng(2024);
    std::size_t mismatches = 0, distillable = 0;
    for (int i = 0; i < 200; ++i) {
        const RealMatrix g = random_two_mode_cm(rng);
        const bool d = is_distillable_gaussian(g, ab());
        distillable += d ? 1 : 0;
        mismatches += (d == (log_negativity_gaussian(g, ab()) > 1e-9)) ? 0 : 1;
    }
    return {mismatches == 0,
            "mismatches=" + std::to_string(mismatches) + " distillable=" + std::to_string(distillable) + "/200"};
}

Outcome encoding_optimization() {
    double worst_grid = 0.0, worst_closed = 0.0;
    for (double eta : {0.5, 0.8, 1.0}) {
        const auto ch = make_pure_loss(eta);
        const EnergyConstraint k(3.0);
        const double v = optimize_modulation(ch, k).value;
        worst_grid = std::max(worst_grid, std::abs(v - grid_search_modulation(ch, k).value));
        worst_closed = std::max(worst_closed, std::abs(v - oracle::photon_entropy(eta * 1.0)));
    }
    return {worst_grid <= 1e-4 && worst_closed <= 1e-6,
            "max |opt - grid|=" + fmt("%.2e", worst_grid) + " max |opt - closed form|=" + fmt("%.2e", worst_closed)};
}

Outcome bochner_and_expansion() {
    Rng rng(77);
    std::vector<FockDensityOperator> fock = {fock_number_state({3}, {0}), fock_number_state({4}, {1}), cat02(),
                                             phi_state(0.25, 3), random_bounded_mixed_state(rng, 1),
                                             random_bounded_pure_state(rng, 2)};
    std::vector<double> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(-3.0 + 0.25 * i);
    double worst_dev = 0.0, worst_eig = INFINITY;
    auto check = [&](const auto& src, std::size_t modes) {
        for (std::size_t dir = 0; dir < 2 * modes + 1; ++dir) {
            RealVector xi = RealVector::Zero(static_cast<Eigen::Index>(2 * modes));
            if (dir < 2 * modes) xi(static_cast<Eigen::Index>(dir)) = 1.0;
            else xi.setConstant(0.5);
            worst_dev = std::max(worst_dev, second_order_check(src, xi, {1e-2}).deviation);
            worst_eig = std::min(worst_eig, bochner_check(src, xi, pts).min_eigenvalue);
        }
    };
    for (const auto& rho : fock) check(FockSource(rho), rho.n_modes());
    RealVector d(4);
    d << 0.3, -0.2, 0.1, 0.0;
    check(GaussianSource{GaussianState(d, random_two_mode_cm(rng))}, 2);
    check(GaussianSource{GaussianState::thermal(0.5)}, 1);
    return {worst_dev <= 1e-3 && worst_eig >= -1e-8,
            "max second-order deviation=" + fmt("%.2e", worst_dev) + " min Gram eigenvalue=" + fmt("%.2e", worst_eig)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"counterexample log-negativities", counterexample_values},
        {"covariance matrix oracle", covariance_oracle},
        {"gaussification path equivalence", path_equivalence},
        {"CLT convergence of one-photon state", clt_convergence},
        {"extremality suites", extremality_suites},
        {"entropy cross-representation", entropy_cross_representation},
        {"distillability consistency", distillability_consistency},
        {"encoding optimization", encoding_optimization},
        {"Bochner and second-order checks", bochner_and_expansion},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i) selected.insert(static_cast<std::size_t>(std::atoi(argv[i])));

    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (!selected.empty() && !selected.count(k + 1)) continue;
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("[%s] AC%zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
