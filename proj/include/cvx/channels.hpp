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


// Bosonic Gaussian channels acting on covariance matrices, Holevo rates of
// Gaussian-modulated coherent-state encodings, and their optimization under an
// energy constraint.
//
// Only the coherent-encoding rate C_1 is computed. It is a Gaussian-encoding
// achievable rate; it coincides with the classical capacity only under the
// (unproven) additivity hypothesis.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvx/errors.hpp"
#include "cvx/phase_space.hpp"

namespace cvx {

/// Gamma -> X Gamma X^T + Y, d -> X d.
struct GaussianChannel {
    RealMatrix x;
    RealMatrix y;

    GaussianChannel(RealMatrix x_, RealMatrix y_) : x(std::move(x_)), y(std::move(y_)) {
        if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
            throw dimension_error("channel matrices X and Y must be square and of equal size");
        }
        modes_of_dimension(x.rows());
        if (detail::symmetry_defect(y) > kTolPsd * std::max(1.0, y.cwiseAbs().maxCoeff())) {
            throw validity_error("channel noise matrix Y must be symmetric");
        }
    }

    std::size_t n_modes() const { return static_cast<std::size_t>(x.rows() / 2); }

    static GaussianChannel identity(std::size_t n_modes) {
        return {RealMatrix::Identity(2 * n_modes, 2 * n_modes), RealMatrix::Zero(2 * n_modes, 2 * n_modes)};
    }
};

/// Minimum eigenvalue of Y + i sigma - i X sigma X^T.
inline double cp_certificate(const GaussianChannel& ch) {
    const RealMatrix sigma = symplectic_form(ch.n_modes());
    const ComplexMatrix m = ch.y.cast<Complex>() +
                            Complex(0.0, 1.0) * (sigma - ch.x * sigma * ch.x.transpose()).cast<Complex>();
    return detail::min_eigenvalue(0.5 * (m + m.adjoint()));
}

inline bool is_completely_positive(const GaussianChannel& ch, double tol = kTolPsd) { return cp_certificate(ch) >= -tol; }

/// Beam-splitter loss with transmissivity eta and a vacuum environment.
inline GaussianChannel make_pure_loss(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw domain_error("transmissivity must lie in (0, 1]");
    return {std::sqrt(eta) * RealMatrix::Identity(2, 2), (1.0 - eta) * RealMatrix::Identity(2, 2)};
}

/// `second` after `first`.
inline GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first) {
    if (second.x.rows() != first.x.rows()) throw dimension_error("composed channels act on different mode counts");
    return {second.x * first.x, second.x * first.y * second.x.transpose() + second.y};
}

inline GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& state) {
    if (ch.x.rows() != state.cm.rows()) throw dimension_error("channel and state act on different mode counts");
    if (!is_completely_positive(ch)) throw certificate_error("channel fails the complete-positivity certificate");
    RealMatrix g = ch.x * state.cm * ch.x.transpose() + ch.y;
    g = 0.5 * (g + g.transpose()).eval();
    return {ch.x * state.means, std::move(g)};
}

/// Coherent states displaced by a zero-mean Gaussian with covariance
/// `modulation / 2` per quadrature pair, so the average state has CM 1 + M.
struct CoherentEncoding {
    RealMatrix modulation;
    GaussianChannel channel;
    EnergyConstraint constraint;
};

inline GaussianState average_input_state(const CoherentEncoding& enc) {
    const auto dim = enc.modulation.rows();
    return GaussianState(RealMatrix::Identity(dim, dim) + enc.modulation);
}

/// S(T(rho_bar)) - S(T(coherent)) in bits.
inline double holevo_coherent(const CoherentEncoding& enc) {
    const RealMatrix& m = enc.modulation;
    if (m.rows() != enc.channel.x.rows() || m.cols() != m.rows()) {
        throw dimension_error("modulation size does not match the channel");
    }
    if (detail::symmetry_defect(m) > kTolPsd * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw validity_error("modulation must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kTolPsd) throw validity_error("modulation must be positive semidefinite");
    const std::size_t n = enc.channel.n_modes();
    enc.constraint.require_feasible(n);
    const double energy = energy_of_gaussian(average_input_state(enc));
    if (energy > enc.constraint.kappa + 1e-9) {
        throw constraint_error("average state energy " + std::to_string(energy) + " exceeds the bound " +
                               std::to_string(enc.constraint.kappa));
    }
    const GaussianState out_avg = apply_channel(enc.channel, average_input_state(enc));
    const GaussianState out_coh = apply_channel(enc.channel, GaussianState::vacuum(n));
    return std::max(0.0, gaussian_entropy(out_avg.cm) - gaussian_entropy(out_coh.cm));
}

/// Single-mode modulation from its eigenvalues and the rotation angle of its
/// principal axes.
inline RealMatrix modulation_matrix(double lambda_1, double lambda_2, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    RealMatrix rot(2, 2);
    rot << c, -s, s, c;
    RealMatrix m = rot * Eigen::Vector2d(lambda_1, lambda_2).asDiagonal() * rot.transpose();
    return 0.5 * (m + m.transpose());
}

struct ModulationResult {
    RealMatrix modulation;
    double value = 0.0;
    double kappa_used = 0.0;    // energy of the optimal average input state
    double mean_photon = 0.0;   // (kappa_used - 1) / 2 per mode
    std::size_t evaluations = 0;
};

namespace detail {

inline void require_single_mode(const GaussianChannel& ch) {
    if (ch.n_modes() != 1) throw domain_error("modulation optimization supports single-mode channels only");
}

inline ModulationResult finish_result(const GaussianChannel& ch, RealMatrix m, double value, std::size_t evals) {
    ModulationResult r;
    r.kappa_used = energy_of_gaussian(GaussianState(RealMatrix::Identity(2, 2) + m));
    r.mean_photon = 0.5 * (r.kappa_used - static_cast<double>(ch.n_modes()));
    r.modulation = std::move(m);
    r.value = value;
    r.evaluations = evals;
    return r;
}

}  // namespace detail

/// Maximizes holevo_coherent over single-mode modulations with
/// energy(1 + M) <= kappa, by a deterministic compass search on
/// (lambda_1, lambda_2, angle) in [0, B]^2 x [0, pi], B = 2 (kappa - 1).
/// Points with lambda_1 + lambda_2 > B are scaled back onto the budget.
inline ModulationResult optimize_modulation(const GaussianChannel& ch, const EnergyConstraint& constraint) {
    detail::require_single_mode(ch);
    constraint.require_feasible(1);
    if (!is_completely_positive(ch)) throw certificate_error("channel fails the complete-positivity certificate");
    const double budget = std::max(0.0, 2.0 * (constraint.kappa - 1.0));
    if (budget == 0.0) return detail::finish_result(ch, RealMatrix::Zero(2, 2), 0.0, 0);

    std::size_t evals = 0;
    auto feasible = [&](std::array<double, 3> p) {
        p[0] = std::clamp(p[0], 0.0, budget);
        p[1] = std::clamp(p[1], 0.0, budget);
        p[2] = std::clamp(p[2], 0.0, std::numbers::pi);
        const double sum = p[0] + p[1];
        if (sum > budget) {
            p[0] *= budget / sum;
            p[1] *= budget / sum;
        }
        return p;
    };
    auto objective = [&](const std::array<double, 3>& p) {
        ++evals;
        return holevo_coherent({modulation_matrix(p[0], p[1], p[2]), ch, constraint});
    };

    const std::array<std::array<double, 3>, 3> starts{{{0.8 * budget, 0.1 * budget, 0.0},
                                                       {0.1 * budget, 0.6 * budget, std::numbers::pi / 3.0},
                                                       {0.5 * budget, 0.5 * budget, std::numbers::pi / 2.0}}};
    std::array<double, 3> best{};
    double best_value = -1.0;
    for (const auto& start : starts) {
        std::array<double, 3> x = feasible(start);
        double fx = objective(x);
        std::array<double, 3> step{budget / 4.0, budget / 4.0, std::numbers::pi / 4.0};
        for (int iter = 0; iter < 20000 && step[0] > 1e-11 * budget; ++iter) {
            bool improved = false;
            for (std::size_t c = 0; c < 3 && !improved; ++c) {
                for (double dir : {1.0, -1.0}) {
                    std::array<double, 3> y = x;
                    y[c] += dir * step[c];
                    y = feasible(y);
                    const double fy = objective(y);
                    if (fy > fx + 1e-15) {
                        x = y;
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved)
                for (double& s : step) s *= 0.5;
        }
        if (fx > best_value) {
            best_value = fx;
            best = x;
        }
    }
    return detail::finish_result(ch, modulation_matrix(best[0], best[1], best[2]), best_value, evals);
}

/// Exhaustive search over modulations on the energy budget boundary
/// (lambda_1 + lambda_2 = B, lambda_1 on a grid of spacing `step`) and a grid
/// of `angle_steps` rotation angles in [0, pi). Output entropies are evaluated
/// from 2x2 determinants, nu = sqrt(det Gamma).
inline ModulationResult grid_search_modulation(const GaussianChannel& ch, const EnergyConstraint& constraint,
                                               double step = 1e-3, std::size_t angle_steps = 360) {
    detail::require_single_mode(ch);
    constraint.require_feasible(1);
    if (!(step > 0.0) || angle_steps == 0) throw domain_error("grid search needs a positive step and angle count");
    const double budget = std::max(0.0, 2.0 * (constraint.kappa - 1.0));
    auto entropy_2x2 = [](const RealMatrix& g) { return mode_entropy(std::sqrt(std::max(1.0, g.determinant()))); };
    const RealMatrix xt = ch.x.transpose();
    const double noise_floor = entropy_2x2(ch.x * xt + ch.y);
    const auto count = static_cast<std::size_t>(std::floor(budget / step + 1e-9));
    double best_value = -1.0;
    RealMatrix best_m = RealMatrix::Zero(2, 2);
    std::size_t evals = 0;
    for (std::size_t i = 0; i <= count + 1; ++i) {
        const double l1 = std::min(budget, static_cast<double>(i) * step);
        const double l2 = budget - l1;
        for (std::size_t a = 0; a < angle_steps; ++a) {
            const double angle = std::numbers::pi * static_cast<double>(a) / static_cast<double>(angle_steps);
            const RealMatrix m = modulation_matrix(l1, l2, angle);
            const double v = entropy_2x2(ch.x * (RealMatrix::Identity(2, 2) + m) * xt + ch.y) - noise_floor;
            ++evals;
            if (v > best_value) {
                best_value = v;
                best_m = m;
            }
        }
        if (l1 >= budget) break;
    }
    return detail::finish_result(ch, std::move(best_m), std::max(0.0, best_value), evals);
}

}  // namespace cvx
