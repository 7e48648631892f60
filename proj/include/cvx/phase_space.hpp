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


// Covariance-matrix algebra for N-mode bosonic systems.
//
// Conventions: canonical ordering R = (Q_1, P_1, ..., Q_N, P_N), hbar = 1,
// CM entries Gamma_kl = tr[rho {R_k - d_k, R_l - d_l}_+], so the vacuum has
// Gamma = 1. Entropies and negativities are in bits.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvx/errors.hpp"

namespace cvx {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ModeList = std::vector<std::size_t>;

inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolSymplectic = 1e-9;

/// Block-diagonal symplectic form with blocks [[0,1],[-1,0]].
inline RealMatrix symplectic_form(std::size_t n_modes) {
    RealMatrix sigma = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
    for (std::size_t j = 0; j < n_modes; ++j) {
        sigma(2 * j, 2 * j + 1) = 1.0;
        sigma(2 * j + 1, 2 * j) = -1.0;
    }
    return sigma;
}

inline std::size_t modes_of_dimension(Eigen::Index dim) {
    if (dim <= 0 || dim % 2 != 0) {
        throw dimension_error("phase-space dimension must be even and positive, got " + std::to_string(dim));
    }
    return static_cast<std::size_t>(dim / 2);
}

/// A split of modes {0..N-1} into two disjoint parties A and B.
class Bipartition {
   public:
    Bipartition(ModeList modes_a, ModeList modes_b) : a_(std::move(modes_a)), b_(std::move(modes_b)) {
        std::sort(a_.begin(), a_.end());
        std::sort(b_.begin(), b_.end());
        ModeList all;
        all.reserve(a_.size() + b_.size());
        all.insert(all.end(), a_.begin(), a_.end());
        all.insert(all.end(), b_.begin(), b_.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i] != i) {
                throw partition_error("bipartition must be a disjoint cover of modes 0.." +
                                      std::to_string(all.size() - 1));
            }
        }
        if (all.empty()) throw partition_error("bipartition over zero modes");
    }

    /// First `n_a` modes form A, the rest form B.
    static Bipartition split(std::size_t n_modes, std::size_t n_a) {
        if (n_a > n_modes) throw partition_error("party A larger than the system");
        ModeList a(n_a), b(n_modes - n_a);
        std::iota(a.begin(), a.end(), std::size_t{0});
        std::iota(b.begin(), b.end(), n_a);
        return {std::move(a), std::move(b)};
    }

    const ModeList& modes_a() const { return a_; }
    const ModeList& modes_b() const { return b_; }
    std::size_t n_modes() const { return a_.size() + b_.size(); }

    void require_modes(std::size_t n_modes) const {
        if (this->n_modes() != n_modes) {
            throw partition_error("bipartition covers " + std::to_string(this->n_modes()) +
                                  " modes but the state has " + std::to_string(n_modes));
        }
    }

   private:
    ModeList a_;
    ModeList b_;
};

/// Bound on sum_j tr[(Q_j^2 + P_j^2) rho]; the vacuum contributes 1 per mode.
struct EnergyConstraint {
    double kappa = 1.0;

    explicit EnergyConstraint(double k) : kappa(k) {
        if (!(k > 0.0) || !std::isfinite(k)) throw domain_error("energy bound must be positive and finite");
    }

    void require_feasible(std::size_t n_modes) const {
        if (kappa < static_cast<double>(n_modes) - 1e-12) {
            throw constraint_error("energy bound " + std::to_string(kappa) + " is below the vacuum floor " +
                                   std::to_string(n_modes));
        }
    }
};

/// First and second moments of a Gaussian state.
struct GaussianState {
    RealVector means;
    RealMatrix cm;

    GaussianState() = default;
    GaussianState(RealVector d, RealMatrix gamma) : means(std::move(d)), cm(std::move(gamma)) {
        if (cm.rows() != cm.cols()) throw dimension_error("covariance matrix must be square");
        modes_of_dimension(cm.rows());
        if (means.size() != cm.rows()) throw dimension_error("means vector length does not match the CM");
        if (!means.allFinite()) throw validity_error("means vector has non-finite entries");
    }
    explicit GaussianState(const RealMatrix& gamma) : GaussianState(RealVector::Zero(gamma.rows()), gamma) {}

    std::size_t n_modes() const { return static_cast<std::size_t>(cm.rows() / 2); }

    static GaussianState vacuum(std::size_t n_modes) {
        return GaussianState(RealMatrix::Identity(2 * n_modes, 2 * n_modes));
    }
    /// Single-mode thermal state with mean photon number `nbar` (Gamma = (2 nbar + 1) 1).
    static GaussianState thermal(double nbar) {
        return GaussianState(RealMatrix::Identity(2, 2) * (2.0 * nbar + 1.0));
    }
    static GaussianState coherent(RealVector d) {
        const auto dim = d.size();
        return GaussianState(std::move(d), RealMatrix::Identity(dim, dim));
    }
};

/// Two-mode squeezed vacuum CM [[c 1, s Z], [s Z, c 1]], c = cosh 2r, s = sinh 2r.
inline RealMatrix two_mode_squeezed_cm(double r) {
    const double c = std::cosh(2.0 * r), s = std::sinh(2.0 * r);
    RealMatrix g = RealMatrix::Zero(4, 4);
    g.diagonal().setConstant(c);
    g(0, 2) = g(2, 0) = s;
    g(1, 3) = g(3, 1) = -s;
    return g;
}

inline GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
    const auto na = a.cm.rows(), nb = b.cm.rows();
    RealMatrix g = RealMatrix::Zero(na + nb, na + nb);
    g.topLeftCorner(na, na) = a.cm;
    g.bottomRightCorner(nb, nb) = b.cm;
    RealVector d(na + nb);
    d << a.means, b.means;
    return {std::move(d), std::move(g)};
}

enum class CmValidity { valid, not_symmetric, violates_uncertainty };

inline const char* to_string(CmValidity v) {
    switch (v) {
        case CmValidity::valid: return "valid";
        case CmValidity::not_symmetric: return "not_symmetric";
        case CmValidity::violates_uncertainty: return "violates_uncertainty";
    }
    return "unknown";
}

namespace detail {

inline double symmetry_defect(const RealMatrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

inline double min_eigenvalue(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline void require_square_even(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("matrix must be square");
    modes_of_dimension(m.rows());
}

}  // namespace detail

/// Checks symmetry and the uncertainty relation Gamma + i sigma >= 0.
inline CmValidity validate_cm(const RealMatrix& gamma, double tol_psd = kTolPsd) {
    detail::require_square_even(gamma);
    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    if (!gamma.allFinite() || detail::symmetry_defect(gamma) > tol_psd * scale) return CmValidity::not_symmetric;
    const std::size_t n = modes_of_dimension(gamma.rows());
    const RealMatrix sym = 0.5 * (gamma + gamma.transpose());
    const ComplexMatrix m = sym.cast<Complex>() + Complex(0.0, 1.0) * symplectic_form(n).cast<Complex>();
    if (detail::min_eigenvalue(m) < -tol_psd) return CmValidity::violates_uncertainty;
    return CmValidity::valid;
}

inline void require_valid_cm(const RealMatrix& gamma, double tol_psd = kTolPsd) {
    const auto v = validate_cm(gamma, tol_psd);
    if (v != CmValidity::valid) throw validity_error(std::string("covariance matrix is ") + to_string(v));
}

/// chi(xi) = exp(i xi.d - xi.Gamma xi / 4).
inline Complex gaussian_chi(const GaussianState& state, const RealVector& xi) {
    if (xi.size() != state.cm.rows()) throw dimension_error("xi length does not match the number of quadratures");
    const double phase = xi.dot(state.means);
    const double quad = xi.dot(state.cm * xi);
    return std::exp(Complex(-0.25 * quad, phase));
}

/// Symplectic eigenvalues nu_1 >= ... >= nu_N, the moduli of the eigenvalues of
/// i sigma Gamma. Accepts any symmetric positive-definite matrix, including
/// partially transposed CMs.
inline std::vector<double> symplectic_eigenvalues(const RealMatrix& gamma) {
    detail::require_square_even(gamma);
    const std::size_t n = modes_of_dimension(gamma.rows());
    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    if (!gamma.allFinite() || detail::symmetry_defect(gamma) > kTolPsd * scale) {
        throw spectrum_error("symplectic spectrum needs a symmetric matrix");
    }
    const RealMatrix sym = 0.5 * (gamma + gamma.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym);
    if (es.eigenvalues().minCoeff() <= 0.0) throw spectrum_error("matrix is not positive definite");
    // Gamma^{1/2} (i sigma) Gamma^{1/2} is Hermitian and isospectral to i sigma Gamma.
    const RealMatrix root = es.operatorSqrt();
    const ComplexMatrix h =
        Complex(0.0, 1.0) * (root * symplectic_form(n) * root).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> hs(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    const RealVector& ev = hs.eigenvalues();  // ascending: -nu_max .. -nu_min, nu_min .. nu_max
    std::vector<double> nu(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double pos = ev(static_cast<Eigen::Index>(2 * n - 1 - k));
        const double neg = -ev(static_cast<Eigen::Index>(k));
        nu[k] = 0.5 * (pos + neg);
    }
    return nu;
}

/// Entropy in bits of a single-mode thermal state with symplectic eigenvalue nu.
inline double mode_entropy(double nu) {
    if (nu <= 1.0 + 1e-14) return 0.0;
    const double p = 0.5 * (nu + 1.0), m = 0.5 * (nu - 1.0);
    return p * std::log2(p) - m * std::log2(m);
}

inline double gaussian_entropy(const RealMatrix& gamma) {
    require_valid_cm(gamma);
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(gamma)) s += mode_entropy(nu);
    return s;
}

/// P Gamma P with P = -1 on the momentum quadratures of party B.
inline RealMatrix partial_transpose_cm(const RealMatrix& gamma, const Bipartition& part) {
    detail::require_square_even(gamma);
    part.require_modes(modes_of_dimension(gamma.rows()));
    RealVector signs = RealVector::Ones(gamma.rows());
    for (std::size_t b : part.modes_b()) signs(static_cast<Eigen::Index>(2 * b + 1)) = -1.0;
    return signs.asDiagonal() * gamma * signs.asDiagonal();
}

inline double log_negativity_gaussian(const RealMatrix& gamma, const Bipartition& part) {
    require_valid_cm(gamma);
    double en = 0.0;
    for (double nu : symplectic_eigenvalues(partial_transpose_cm(gamma, part))) en += std::max(0.0, -std::log2(nu));
    return en;
}

/// Gaussian distillability: some partially transposed symplectic eigenvalue is
/// strictly below 1. The boundary nu = 1 counts as non-distillable.
inline bool is_distillable_gaussian(const RealMatrix& gamma, const Bipartition& part, double tol = kTolPsd) {
    require_valid_cm(gamma);
    const auto nu = symplectic_eigenvalues(partial_transpose_cm(gamma, part));
    return nu.back() < 1.0 - tol;
}

inline GaussianState reduce_gaussian(const GaussianState& state, const ModeList& modes) {
    if (modes.empty()) throw index_error("reduction needs at least one mode");
    const std::size_t n = state.n_modes();
    ModeList seen = modes;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw index_error("duplicate mode in reduction");
    if (seen.back() >= n) throw index_error("mode " + std::to_string(seen.back()) + " out of range");
    const auto k = static_cast<Eigen::Index>(modes.size());
    RealMatrix g(2 * k, 2 * k);
    RealVector d(2 * k);
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
        const auto src_i = static_cast<Eigen::Index>(2 * modes[static_cast<std::size_t>(i / 2)]) + i % 2;
        d(i) = state.means(src_i);
        for (Eigen::Index j = 0; j < 2 * k; ++j) {
            const auto src_j = static_cast<Eigen::Index>(2 * modes[static_cast<std::size_t>(j / 2)]) + j % 2;
            g(i, j) = state.cm(src_i, src_j);
        }
    }
    return {std::move(d), std::move(g)};
}

inline bool is_symplectic(const RealMatrix& s, double tol = kTolSymplectic) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) return false;
    const RealMatrix sigma = symplectic_form(static_cast<std::size_t>(s.rows() / 2));
    return (s * sigma * s.transpose() - sigma).norm() <= tol;
}

inline GaussianState apply_symplectic(const GaussianState& state, const RealMatrix& s) {
    if (s.rows() != state.cm.rows() || s.cols() != state.cm.cols()) {
        throw dimension_error("symplectic matrix does not match the state dimension");
    }
    if (!is_symplectic(s)) throw symplecticity_error("matrix violates S sigma S^T = sigma");
    RealMatrix g = s * state.cm * s.transpose();
    g = 0.5 * (g + g.transpose());
    return {s * state.means, std::move(g)};
}

/// Symplectic matrix of the passive transformation
/// (Q_i, Q_j) -> (cos t Q_i + sin t Q_j, cos t Q_j - sin t Q_i), identically for P.
inline RealMatrix beam_splitter_symplectic(std::size_t n_modes, std::size_t i, std::size_t j, double theta) {
    if (i >= n_modes || j >= n_modes || i == j) throw index_error("beam splitter needs two distinct modes in range");
    RealMatrix s = RealMatrix::Identity(2 * n_modes, 2 * n_modes);
    const double c = std::cos(theta), sn = std::sin(theta);
    for (std::size_t q = 0; q < 2; ++q) {
        const auto ii = static_cast<Eigen::Index>(2 * i + q), jj = static_cast<Eigen::Index>(2 * j + q);
        s(ii, ii) = c;
        s(ii, jj) = sn;
        s(jj, ii) = -sn;
        s(jj, jj) = c;
    }
    return s;
}

/// sum_j tr[(Q_j^2 + P_j^2) rho], using <Q^2> = Gamma_qq / 2 + d_q^2.
inline double energy_of_gaussian(const GaussianState& state) {
    return 0.5 * state.cm.trace() + state.means.squaredNorm();
}

}  // namespace cvx
