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


// Entropic and entanglement comparisons between a state and the Gaussian
// state with the same first and second moments.

#pragma once

#include <string>

#include "cvx/errors.hpp"
#include "cvx/fock.hpp"
#include "cvx/phase_space.hpp"

namespace cvx {

inline constexpr double kInequalityTol = 1e-9;

/// S(rho_A) - S(rho) in bits; negative for entangled pure-ish states.
inline double conditional_entropy(const FockDensityOperator& rho, const Bipartition& part) {
    part.require_modes(rho.n_modes());
    return von_neumann_entropy(partial_trace(rho, part.modes_a())) - von_neumann_entropy(rho);
}

inline double gaussian_conditional_entropy(const RealMatrix& gamma, const Bipartition& part) {
    require_valid_cm(gamma);
    part.require_modes(modes_of_dimension(gamma.rows()));
    const GaussianState reduced = reduce_gaussian(GaussianState(gamma), part.modes_a());
    return gaussian_entropy(reduced.cm) - gaussian_entropy(gamma);
}

struct Counterexample {
    FockDensityOperator state;
    GaussianState moments;
};

/// sqrt(1 - lambda^2)|00> + lambda|11>, truncated at `dim` levels per mode.
inline Counterexample counterexample_phi(double lambda, std::size_t dim = 3) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw domain_error("lambda must lie in (0, 1)");
    if (dim < 3) throw dimension_error("the counterexample needs at least 3 levels per mode to stay below the edge");
    const Dims dims{dim, dim};
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(dim * dim));
    c(0) = std::sqrt(1.0 - lambda * lambda);
    c(static_cast<Eigen::Index>(dim + 1)) = lambda;
    FockDensityOperator rho = build_pure_state(dims, std::move(c));
    GaussianState g = extract_moments(rho);
    return {std::move(rho), std::move(g)};
}

/// Paired quantities for rho and its Gaussian counterpart rho_G, plus verdicts.
///
/// Asserted directions: S(rho_G) >= S(rho) and
/// [S_A - S](rho) >= [S_A - S](rho_G). The log-negativity comparison is
/// reported without an asserted direction.
struct ExtremalityReport {
    std::string label;
    GaussianState moments;

    double entropy = 0.0;
    double entropy_gaussian = 0.0;
    double reduced_entropy = 0.0;
    double reduced_entropy_gaussian = 0.0;
    double conditional_entropy = 0.0;
    double conditional_entropy_gaussian = 0.0;
    double log_negativity = 0.0;
    double log_negativity_gaussian = 0.0;
    bool distillable_gaussian = false;  // sufficient for distillability of rho

    double tolerance = kInequalityTol;

    double max_entropy_margin() const { return entropy_gaussian - entropy; }
    double conditional_entropy_margin() const { return conditional_entropy - conditional_entropy_gaussian; }
    double negativity_margin() const { return log_negativity - log_negativity_gaussian; }

    bool max_entropy_holds() const { return max_entropy_margin() >= -tolerance; }
    bool conditional_entropy_holds() const { return conditional_entropy_margin() >= -tolerance; }
    /// rho_G carries more log-negativity than rho.
    bool negativity_counterexample() const { return negativity_margin() < -tolerance; }
};

inline ExtremalityReport extremality_report(const FockDensityOperator& rho, const Bipartition& part,
                                            std::string label = "state", double tol = kInequalityTol) {
    part.require_modes(rho.n_modes());
    ExtremalityReport r;
    r.label = std::move(label);
    r.tolerance = tol;
    r.moments = extract_moments(rho);
    const RealMatrix& gamma = r.moments.cm;
    const RealMatrix gamma_a = reduce_gaussian(r.moments, part.modes_a()).cm;

    r.entropy = von_neumann_entropy(rho);
    r.reduced_entropy = von_neumann_entropy(partial_trace(rho, part.modes_a()));
    r.conditional_entropy = r.reduced_entropy - r.entropy;
    r.log_negativity = log_negativity_fock(rho, part);

    r.entropy_gaussian = gaussian_entropy(gamma);
    r.reduced_entropy_gaussian = gaussian_entropy(gamma_a);
    r.conditional_entropy_gaussian = r.reduced_entropy_gaussian - r.entropy_gaussian;
    r.log_negativity_gaussian = cvx::log_negativity_gaussian(gamma, part);
    r.distillable_gaussian = is_distillable_gaussian(gamma, part);
    return r;
}

}  // namespace cvx
