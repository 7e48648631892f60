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


// Independent reference computations used only by the tests. Nothing here
// calls into the code path it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cvx/fock.hpp"

namespace cvx::oracle {

/// <m| D(alpha) |n> in Laguerre form.
inline Complex displacement_element(unsigned m, unsigned n, Complex alpha) {
    const double x = std::norm(alpha);
    const double pre = std::exp(-0.5 * x);
    if (m >= n) {
        const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
        return ratio * std::pow(alpha, static_cast<int>(m - n)) * pre * std::assoc_laguerre(n, m - n, x);
    }
    const double ratio = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
    return ratio * std::pow(-std::conj(alpha), static_cast<int>(n - m)) * pre * std::assoc_laguerre(m, n - m, x);
}

/// tr[rho exp(i xi.R)] with exact displacement matrix elements;
/// exp(i(qQ + pP)) = D(alpha), alpha = (-p + i q) / sqrt 2.
inline Complex chi_exact(const FockDensityOperator& rho, const RealVector& xi) {
    const std::size_t n = rho.n_modes();
    std::vector<ComplexMatrix> f(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex alpha = Complex(-xi(2 * k + 1), xi(2 * k)) / std::sqrt(2.0);
        const auto d = static_cast<Eigen::Index>(rho.dims()[k]);
        f[k].resize(d, d);
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b)
                f[k](a, b) = displacement_element(static_cast<unsigned>(a), static_cast<unsigned>(b), alpha);
    }
    ComplexMatrix e = f[0];
    for (std::size_t k = 1; k < n; ++k) {
        ComplexMatrix next(e.rows() * f[k].rows(), e.cols() * f[k].cols());
        for (Eigen::Index i = 0; i < e.rows(); ++i)
            for (Eigen::Index j = 0; j < e.cols(); ++j)
                next.block(i * f[k].rows(), j * f[k].cols(), f[k].rows(), f[k].cols()) = e(i, j) * f[k];
        e = next;
    }
    return (rho.matrix() * e).trace();
}

/// chi of Fock |1>: exp(-|xi|^2/4) (1 - |xi|^2/2).
inline Complex chi_fock1(const RealVector& xi) {
    const double r2 = xi.squaredNorm();
    return std::exp(-0.25 * r2) * (1.0 - 0.5 * r2);
}

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Entropy of a thermal state with mean photon number x: (x+1) log2(x+1) - x log2 x.
inline double photon_entropy(double x) {
    return x > 0.0 ? (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x) : 0.0;
}

/// Analytic CM of sqrt(1 - l^2)|00> + l|11>.
inline RealMatrix phi_cm(double lambda) {
    const double nu = 1.0 + 2.0 * lambda * lambda;
    const double k = 2.0 * lambda * std::sqrt(1.0 - lambda * lambda);
    RealMatrix g = RealMatrix::Zero(4, 4);
    g.diagonal().setConstant(nu);
    g(0, 2) = g(2, 0) = k;
    g(1, 3) = g(3, 1) = -k;
    return g;
}

/// Symplectic eigenvalues from a dense non-Hermitian eigensolve of i sigma Gamma.
inline std::vector<double> symplectic_eigenvalues_dense(const RealMatrix& gamma) {
    const auto dim = gamma.rows();
    RealMatrix sigma = RealMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim / 2; ++j) {
        sigma(2 * j, 2 * j + 1) = 1.0;
        sigma(2 * j + 1, 2 * j) = -1.0;
    }
    const ComplexMatrix m = Complex(0.0, 1.0) * (sigma * gamma).cast<Complex>();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    std::vector<double> mod;
    for (Eigen::Index k = 0; k < dim; ++k) mod.push_back(std::abs(es.eigenvalues()(k)));
    std::sort(mod.begin(), mod.end(), std::greater<>());
    std::vector<double> nu;
    for (std::size_t k = 0; k < mod.size(); k += 2) nu.push_back(0.5 * (mod[k] + mod[k + 1]));
    return nu;
}

/// exp(A) by scaling and squaring with a Taylor series.
inline RealMatrix expm_taylor(const RealMatrix& a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    const RealMatrix s = a / std::pow(2.0, squarings);
    RealMatrix term = RealMatrix::Identity(a.rows(), a.cols()), sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * s / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace cvx::oracle
