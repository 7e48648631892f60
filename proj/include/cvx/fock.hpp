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


// Truncated Fock-space simulator for arbitrary (non-Gaussian) N-mode states.
//
// Basis ordering is mode-major: the flat index of |n_1, ..., n_N> is
// sum_k n_k * stride_k with the last mode varying fastest.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvx/errors.hpp"
#include "cvx/phase_space.hpp"

namespace cvx {

using Dims = std::vector<std::size_t>;

inline constexpr double kLeakageBudget = 1e-8;
inline constexpr double kEigFloor = 1e-14;
inline constexpr std::size_t kDefaultMaxDim = 20000;

/// Cap on the total Hilbert-space dimension, read from CVX_MAX_DIM.
inline std::size_t max_total_dim() {
    if (const char* env = std::getenv("CVX_MAX_DIM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxDim;
}

inline std::string dims_to_string(const Dims& dims) {
    std::string s = "(";
    for (std::size_t k = 0; k < dims.size(); ++k) s += (k ? "," : "") + std::to_string(dims[k]);
    return s + ")";
}

inline std::size_t total_dimension(const Dims& dims) {
    const std::size_t cap = max_total_dim();
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d < 2) throw dimension_error("every mode needs at least two Fock levels, got " + dims_to_string(dims));
        if (total > cap / d) {
            throw capacity_error("dims " + dims_to_string(dims) + " exceed the maximum total dimension " +
                                 std::to_string(cap));
        }
        total *= d;
    }
    if (dims.empty()) throw dimension_error("state needs at least one mode");
    return total;
}

/// Single-mode ladder and quadrature operators truncated to `dim` levels.
struct ModeOperatorSet {
    std::size_t dim = 0;
    RealMatrix a;
    RealMatrix a_dag;
    RealMatrix q;
    ComplexMatrix p;

    explicit ModeOperatorSet(std::size_t d) : dim(d) {
        const auto n = static_cast<Eigen::Index>(d);
        a = RealMatrix::Zero(n, n);
        for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
        a_dag = a.transpose();
        q = (a + a_dag) / std::sqrt(2.0);
        p = Complex(0.0, -1.0 / std::sqrt(2.0)) * (a - a_dag).cast<Complex>();
    }
};

/// Mixed-radix index helper for a tensor-product Fock basis.
class FockIndexer {
   public:
    explicit FockIndexer(Dims dims) : dims_(std::move(dims)), strides_(dims_.size()) {
        std::size_t s = 1;
        for (std::size_t k = dims_.size(); k-- > 0;) {
            strides_[k] = s;
            s *= dims_[k];
        }
        total_ = s;
    }
    std::size_t total() const { return total_; }
    std::size_t stride(std::size_t mode) const { return strides_[mode]; }
    std::size_t level(std::size_t flat, std::size_t mode) const { return (flat / strides_[mode]) % dims_[mode]; }
    const Dims& dims() const { return dims_; }

    /// Flat offsets of every multi-index over `modes` (in the given order, last fastest).
    std::vector<std::size_t> offsets(const ModeList& modes) const {
        std::vector<std::size_t> out{0};
        for (std::size_t m : modes) {
            std::vector<std::size_t> next;
            next.reserve(out.size() * dims_[m]);
            for (std::size_t base : out)
                for (std::size_t l = 0; l < dims_[m]; ++l) next.push_back(base + l * strides_[m]);
            out = std::move(next);
        }
        return out;
    }

   private:
    Dims dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

/// Density operator in a truncated tensor-product Fock basis.
class FockDensityOperator {
   public:
    FockDensityOperator(Dims dims, ComplexMatrix rho) : dims_(std::move(dims)), rho_(std::move(rho)) {
        const auto n = static_cast<Eigen::Index>(total_dimension(dims_));
        if (rho_.rows() != n || rho_.cols() != n) {
            throw dimension_error("density matrix size " + std::to_string(rho_.rows()) + " does not match dims " +
                                  dims_to_string(dims_));
        }
        if (!rho_.allFinite()) throw validity_error("density matrix has non-finite entries");
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw validity_error("density matrix is not Hermitian");
        rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
        if (std::abs(rho_.trace() - Complex(1.0)) > 1e-10) throw validity_error("density matrix trace is not 1");
        leakage_ = compute_leakage();
    }

    const Dims& dims() const { return dims_; }
    const ComplexMatrix& matrix() const { return rho_; }
    std::size_t n_modes() const { return dims_.size(); }
    std::size_t total_dim() const { return static_cast<std::size_t>(rho_.rows()); }
    /// Population carried by basis states with any mode on its top level.
    double leakage() const { return leakage_; }

    /// Full positivity check (one eigendecomposition).
    bool is_positive(double tol = 1e-10) const { return detail::min_eigenvalue(rho_) >= -tol; }

    void require_leakage_within(double budget) const {
        if (leakage_ > budget) {
            throw truncation_error("top-level population " + std::to_string(leakage_) + " exceeds the budget " +
                                   std::to_string(budget) + " at dims " + dims_to_string(dims_));
        }
    }

   private:
    double compute_leakage() const {
        const FockIndexer idx(dims_);
        double w = 0.0;
        for (std::size_t x = 0; x < idx.total(); ++x) {
            for (std::size_t m = 0; m < dims_.size(); ++m) {
                if (idx.level(x, m) + 1 == dims_[m]) {
                    w += rho_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real();
                    break;
                }
            }
        }
        return w;
    }

    Dims dims_;
    ComplexMatrix rho_;
    double leakage_ = 0.0;
};

/// |psi><psi| from (unnormalized) Fock-basis coefficients.
inline FockDensityOperator build_pure_state(const Dims& dims, ComplexVector coefficients) {
    const auto n = static_cast<Eigen::Index>(total_dimension(dims));
    if (coefficients.size() != n) {
        throw dimension_error("expected " + std::to_string(n) + " coefficients for dims " + dims_to_string(dims));
    }
    const double norm = coefficients.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw degenerate_input_error("coefficient vector has zero norm");
    coefficients /= norm;
    return {dims, coefficients * coefficients.adjoint()};
}

/// Validated construction from an explicit density matrix (checks positivity).
inline FockDensityOperator build_mixed_state(const Dims& dims, ComplexMatrix rho) {
    FockDensityOperator out(dims, std::move(rho));
    if (!out.is_positive()) throw validity_error("density matrix has a negative eigenvalue below -1e-10");
    return out;
}

inline FockDensityOperator fock_number_state(const Dims& dims, const std::vector<std::size_t>& levels) {
    if (levels.size() != dims.size()) throw dimension_error("one level per mode required");
    const FockIndexer idx(dims);
    std::size_t flat = 0;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        if (levels[m] >= dims[m]) throw index_error("Fock level beyond the truncation");
        flat += levels[m] * idx.stride(m);
    }
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(idx.total()));
    c(static_cast<Eigen::Index>(flat)) = 1.0;
    return build_pure_state(dims, std::move(c));
}

/// Single-mode thermal state, renormalized after truncation at `dim` levels.
inline FockDensityOperator thermal_state(std::size_t dim, double nbar) {
    if (!(nbar >= 0.0)) throw domain_error("mean photon number must be non-negative");
    RealVector p(static_cast<Eigen::Index>(dim));
    const double r = nbar / (nbar + 1.0);
    for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = std::pow(r, static_cast<double>(k)) / (nbar + 1.0);
    p /= p.sum();
    return {{dim}, p.cast<Complex>().asDiagonal().toDenseMatrix()};
}

inline FockDensityOperator tensor_product(const FockDensityOperator& a, const FockDensityOperator& b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    total_dimension(dims);
    const ComplexMatrix& ma = a.matrix();
    const ComplexMatrix& mb = b.matrix();
    const auto nb = mb.rows();
    ComplexMatrix out(ma.rows() * nb, ma.cols() * nb);
    for (Eigen::Index i = 0; i < ma.rows(); ++i)
        for (Eigen::Index j = 0; j < ma.cols(); ++j) out.block(i * nb, j * nb, nb, nb) = ma(i, j) * mb;
    return {std::move(dims), std::move(out)};
}

namespace detail {

inline void require_modes(const ModeList& modes, std::size_t n_modes, const char* what) {
    ModeList s = modes;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw index_error(std::string(what) + ": duplicate mode");
    if (!s.empty() && s.back() >= n_modes) {
        throw index_error(std::string(what) + ": mode " + std::to_string(s.back()) + " out of range");
    }
}

inline ModeList complement(const ModeList& modes, std::size_t n_modes) {
    ModeList out;
    for (std::size_t m = 0; m < n_modes; ++m)
        if (std::find(modes.begin(), modes.end(), m) == modes.end()) out.push_back(m);
    return out;
}

}  // namespace detail

/// Reduced state on `keep` (output mode order follows ascending mode index).
inline FockDensityOperator partial_trace(const FockDensityOperator& rho, ModeList keep) {
    if (keep.empty()) throw index_error("partial trace must keep at least one mode");
    detail::require_modes(keep, rho.n_modes(), "partial_trace");
    std::sort(keep.begin(), keep.end());
    const FockIndexer idx(rho.dims());
    const ModeList traced = detail::complement(keep, rho.n_modes());
    const auto kept_off = idx.offsets(keep);
    const auto traced_off = idx.offsets(traced);
    const ComplexMatrix& m = rho.matrix();
    const auto nk = static_cast<Eigen::Index>(kept_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
    for (Eigen::Index i = 0; i < nk; ++i)
        for (Eigen::Index j = 0; j < nk; ++j) {
            Complex s = 0.0;
            for (std::size_t t : traced_off)
                s += m(static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(i)] + t),
                       static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(j)] + t));
            out(i, j) = s;
        }
    Dims dims;
    for (std::size_t k : keep) dims.push_back(rho.dims()[k]);
    return {std::move(dims), std::move(out)};
}

/// Zero-pads each mode to `new_dims` (each at least the current dimension).
inline FockDensityOperator embed(const FockDensityOperator& rho, const Dims& new_dims) {
    if (new_dims.size() != rho.n_modes()) throw dimension_error("embed: mode count mismatch");
    for (std::size_t m = 0; m < new_dims.size(); ++m)
        if (new_dims[m] < rho.dims()[m]) throw dimension_error("embed cannot shrink a mode");
    const FockIndexer src(rho.dims()), dst(new_dims);
    std::vector<std::size_t> map(src.total());
    for (std::size_t x = 0; x < src.total(); ++x) {
        std::size_t y = 0;
        for (std::size_t m = 0; m < new_dims.size(); ++m) y += src.level(x, m) * dst.stride(m);
        map[x] = y;
    }
    const auto n = static_cast<Eigen::Index>(dst.total());
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < map.size(); ++i)
        for (std::size_t j = 0; j < map.size(); ++j)
            out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
                rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return {new_dims, std::move(out)};
}

/// Highest Fock level per mode carrying population above `threshold`.
inline std::vector<std::size_t> occupied_levels(const FockDensityOperator& rho, double threshold = 1e-15) {
    const FockIndexer idx(rho.dims());
    std::vector<std::size_t> top(rho.n_modes(), 0);
    for (std::size_t x = 0; x < idx.total(); ++x) {
        if (rho.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real() <= threshold) continue;
        for (std::size_t m = 0; m < rho.n_modes(); ++m) top[m] = std::max(top[m], idx.level(x, m));
    }
    return top;
}

namespace detail {

struct Ladder {
    std::size_t mode;
    bool raise;
};

// tr[rho * O] for O a product of ladder operators, applied right to left.
// Exact for any rho supported on the truncated space: a term that would leave
// the space pairs with a vanishing matrix element of rho.
inline Complex ladder_expectation(const FockDensityOperator& rho, const FockIndexer& idx,
                                  std::initializer_list<Ladder> ops_left_to_right) {
    std::vector<Ladder> ops(ops_left_to_right);
    const ComplexMatrix& m = rho.matrix();
    Complex s = 0.0;
    std::vector<std::size_t> level(idx.dims().size());
    for (std::size_t x = 0; x < idx.total(); ++x) {
        for (std::size_t k = 0; k < level.size(); ++k) level[k] = idx.level(x, k);
        double c = 1.0;
        bool inside = true;
        for (auto it = ops.rbegin(); it != ops.rend() && inside; ++it) {
            std::size_t& n = level[it->mode];
            if (it->raise) {
                if (n + 1 >= idx.dims()[it->mode]) inside = false;
                else c *= std::sqrt(static_cast<double>(++n));
            } else {
                if (n == 0) inside = false;
                else c *= std::sqrt(static_cast<double>(n--));
            }
        }
        if (!inside) continue;
        std::size_t y = 0;
        for (std::size_t k = 0; k < level.size(); ++k) y += level[k] * idx.stride(k);
        s += c * m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }
    return s;
}

}  // namespace detail

/// Means and CM of rho, assembled from normally ordered ladder moments.
inline GaussianState extract_moments(const FockDensityOperator& rho, double leakage_budget = kLeakageBudget) {
    rho.require_leakage_within(leakage_budget);
    const std::size_t n = rho.n_modes();
    const FockIndexer idx(rho.dims());
    const auto dim = static_cast<Eigen::Index>(2 * n);

    // b = (a_1, a_1^dag, a_2, a_2^dag, ...); e(u, v) = <{b_u, b_v}>.
    ComplexVector mean_b(dim);
    ComplexMatrix e(dim, dim);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex aj = detail::ladder_expectation(rho, idx, {{j, false}});
        mean_b(static_cast<Eigen::Index>(2 * j)) = aj;
        mean_b(static_cast<Eigen::Index>(2 * j + 1)) = std::conj(aj);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            const Complex aa = detail::ladder_expectation(rho, idx, {{j, false}, {k, false}});
            const Complex num_jk = detail::ladder_expectation(rho, idx, {{j, true}, {k, false}});  // <a_j^dag a_k>
            const double delta = (j == k) ? 1.0 : 0.0;
            const auto aj = static_cast<Eigen::Index>(2 * j), cj = aj + 1;
            const auto ak = static_cast<Eigen::Index>(2 * k), ck = ak + 1;
            e(aj, ak) = e(ak, aj) = 2.0 * aa;
            e(cj, ck) = e(ck, cj) = 2.0 * std::conj(aa);
            // a_j a_k^dag + a_k^dag a_j = 2 a_k^dag a_j + delta
            e(aj, ck) = e(ck, aj) = 2.0 * std::conj(num_jk) + delta;
            e(cj, ak) = e(ak, cj) = 2.0 * num_jk + delta;
        }
    }
    ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto q = static_cast<Eigen::Index>(2 * j), p = q + 1;
        t(q, q) = r;
        t(q, q + 1) = r;
        t(p, q) = Complex(0.0, -r);
        t(p, q + 1) = Complex(0.0, r);
    }
    const RealVector d = (t * mean_b).real();
    RealMatrix gamma = (t * e * t.transpose()).real() - 2.0 * d * d.transpose();
    gamma = 0.5 * (gamma + gamma.transpose()).eval();
    return {d, gamma};
}

/// Numerical characteristic function tr[rho exp(i xi.R)] of a Fock-space state.
///
/// The single-mode factor exp(i(qQ + pP)) equals the displacement D(alpha),
/// alpha = (-p + i q)/sqrt 2, whose Fock elements follow from D a^dag =
/// (a^dag - alpha*) D; the retained block is therefore exact. The reliable radius
/// for a truncation of `dim` levels is the largest |xi| at which the first `dim`
/// columns, evaluated on dim + kChiPadding levels, stay unit-norm to 1e-8 and the
/// vacuum element reproduces exp(-|xi|^2/4).
class FockChi {
   public:
    static constexpr std::size_t kChiPadding = 64;

    explicit FockChi(FockDensityOperator rho, double leakage_budget = kLeakageBudget)
        : rho_(std::move(rho)), idx_(rho_.dims()) {
        rho_.require_leakage_within(leakage_budget);
        for (std::size_t d : rho_.dims()) {
            if (kernels_.count(d) == 0) kernels_.emplace(d, Kernel(d));
        }
    }

    const FockDensityOperator& state() const { return rho_; }

    /// Largest per-mode |xi| accepted for a mode truncated at `dim` levels.
    double xi_max(std::size_t dim) const { return kernel(dim).xi_max; }

    Complex operator()(const RealVector& xi) const {
        const std::size_t n = rho_.n_modes();
        if (xi.size() != static_cast<Eigen::Index>(2 * n)) throw dimension_error("xi length must be 2N");
        if (xi.isZero(0.0)) return 1.0;
        std::vector<ComplexMatrix> factors(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double q = xi(static_cast<Eigen::Index>(2 * m)), p = xi(static_cast<Eigen::Index>(2 * m + 1));
            const Kernel& k = kernel(rho_.dims()[m]);
            if (std::hypot(q, p) > k.xi_max) {
                throw reliability_error("|xi| = " + std::to_string(std::hypot(q, p)) + " on mode " + std::to_string(m) +
                                        " exceeds the reliable radius " + std::to_string(k.xi_max));
            }
            factors[m] = k.exponential(q, p);
        }
        // tr[rho E] = sum_{x,y} rho(x, y) E(y, x), E = tensor product of the factors.
        const ComplexMatrix& r = rho_.matrix();
        const std::size_t total = idx_.total();
        std::vector<std::size_t> lx(n * total);
        for (std::size_t x = 0; x < total; ++x)
            for (std::size_t m = 0; m < n; ++m) lx[x * n + m] = idx_.level(x, m);
        Complex s = 0.0;
        for (std::size_t x = 0; x < total; ++x) {
            for (std::size_t y = 0; y < total; ++y) {
                const Complex rxy = r(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
                if (rxy == Complex(0.0)) continue;
                Complex e = 1.0;
                for (std::size_t m = 0; m < n; ++m)
                    e *= factors[m](static_cast<Eigen::Index>(lx[y * n + m]), static_cast<Eigen::Index>(lx[x * n + m]));
                s += rxy * e;
            }
        }
        return s;
    }

   private:
    // <m|D(alpha)|n> for m < rows, n < cols.
    static ComplexMatrix displacement(Complex alpha, std::size_t rows, std::size_t cols) {
        const auto nr = static_cast<Eigen::Index>(rows), nc = static_cast<Eigen::Index>(cols);
        ComplexMatrix d(nr, nc);
        d(0, 0) = std::exp(-0.5 * std::norm(alpha));
        for (Eigen::Index m = 1; m < nr; ++m) d(m, 0) = alpha / std::sqrt(static_cast<double>(m)) * d(m - 1, 0);
        const Complex ac = std::conj(alpha);
        for (Eigen::Index n = 1; n < nc; ++n) {
            const double inv = 1.0 / std::sqrt(static_cast<double>(n));
            d(0, n) = -ac * d(0, n - 1) * inv;
            for (Eigen::Index m = 1; m < nr; ++m)
                d(m, n) = (std::sqrt(static_cast<double>(m)) * d(m - 1, n - 1) - ac * d(m, n - 1)) * inv;
        }
        return d;
    }

    struct Kernel {
        std::size_t dim;
        double xi_max = 0.0;

        explicit Kernel(std::size_t d) : dim(d), xi_max(reliable_radius(d)) {}

        ComplexMatrix exponential(double q, double p) const {
            return displacement(Complex(-p, q) / std::sqrt(2.0), dim, dim);
        }

        static double reliable_radius(std::size_t d) {
            auto healthy = [d](double r) {
                const ComplexMatrix m = displacement(Complex(0.0, r / std::sqrt(2.0)), d + kChiPadding, d);
                if (!m.allFinite()) return false;
                if (std::abs(m(0, 0) - std::exp(-0.25 * r * r)) > 1e-8) return false;
                return (m.colwise().squaredNorm().array() - 1.0).abs().maxCoeff() <= 1e-8;
            };
            const double step = 0.125;
            double lo = 0.0;
            while (lo < 64.0 && healthy(lo + step)) lo += step;
            double hi = lo + step;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                (healthy(mid) ? lo : hi) = mid;
            }
            return lo;
        }
    };

    const Kernel& kernel(std::size_t dim) const { return kernels_.at(dim); }

    FockDensityOperator rho_;
    FockIndexer idx_;
    std::map<std::size_t, Kernel> kernels_;
};

inline Complex fock_chi(const FockDensityOperator& rho, const RealVector& xi) { return FockChi(rho)(xi); }

/// Conjugates rho by exp[theta (a_i^dag a_j - a_i a_j^dag)]. In the Heisenberg
/// picture a_i -> cos(theta) a_i + sin(theta) a_j, a_j -> cos(theta) a_j - sin(theta) a_i,
/// so theta = pi/4 sends the symmetric combination to mode i.
inline FockDensityOperator apply_beam_splitter(const FockDensityOperator& rho, std::size_t mode_i, std::size_t mode_j,
                                               double theta) {
    if (mode_i >= rho.n_modes() || mode_j >= rho.n_modes() || mode_i == mode_j) {
        throw index_error("beam splitter needs two distinct modes in range");
    }
    const std::size_t d = rho.dims()[mode_i];
    if (rho.dims()[mode_j] != d) throw dimension_error("beam splitter modes must share the same truncation");

    // Truncated generator on the pair space, pair index = n_i * d + n_j. It
    // conserves n_i + n_j, so the exponential is exact on every complete block.
    const ModeOperatorSet ops(d);
    const RealMatrix eye = RealMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    auto kron = [](const RealMatrix& x, const RealMatrix& y) {
        RealMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return out;
    };
    const RealMatrix gen = kron(ops.a_dag, ops.a) - kron(ops.a, ops.a_dag);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(Complex(0.0, 1.0) * gen.cast<Complex>());
    ComplexVector phase(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::exp(Complex(0.0, -theta * es.eigenvalues()(k)));
    const ComplexMatrix u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();

    const FockIndexer idx(rho.dims());
    const auto pair_off = idx.offsets({mode_i, mode_j});
    ModeList rest = detail::complement({mode_i, mode_j}, rho.n_modes());
    const auto rest_off = idx.offsets(rest);
    const auto np = static_cast<Eigen::Index>(pair_off.size());

    ComplexMatrix m = rho.matrix();
    ComplexVector v(np);
    // Left multiplication by U on the pair index, column by column.
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (std::size_t base : rest_off) {
            for (Eigen::Index p = 0; p < np; ++p) v(p) = m(static_cast<Eigen::Index>(base + pair_off[static_cast<std::size_t>(p)]), c);
            const ComplexVector w = u * v;
            for (Eigen::Index p = 0; p < np; ++p) m(static_cast<Eigen::Index>(base + pair_off[static_cast<std::size_t>(p)]), c) = w(p);
        }
    }
    // Right multiplication by U^dag, row by row.
    const ComplexMatrix ut = u.conjugate();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (std::size_t base : rest_off) {
            for (Eigen::Index p = 0; p < np; ++p) v(p) = m(r, static_cast<Eigen::Index>(base + pair_off[static_cast<std::size_t>(p)]));
            const ComplexVector w = ut * v;
            for (Eigen::Index p = 0; p < np; ++p) m(r, static_cast<Eigen::Index>(base + pair_off[static_cast<std::size_t>(p)])) = w(p);
        }
    }
    return {rho.dims(), 0.5 * (m + m.adjoint())};
}

/// <n_mode> = tr[rho a^dag a].
inline double mean_photon_number(const FockDensityOperator& rho, std::size_t mode) {
    if (mode >= rho.n_modes()) throw index_error("mode out of range");
    const FockIndexer idx(rho.dims());
    double s = 0.0;
    for (std::size_t x = 0; x < idx.total(); ++x)
        s += static_cast<double>(idx.level(x, mode)) * rho.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real();
    return s;
}

inline double von_neumann_entropy(const FockDensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double l = es.eigenvalues()(k);
        if (l >= kEigFloor) s -= l * std::log2(l);
    }
    return std::max(0.0, s);
}

/// rho^{T_B}: transpose on the Fock indices of party B.
inline ComplexMatrix partial_transpose(const FockDensityOperator& rho, const Bipartition& part) {
    part.require_modes(rho.n_modes());
    const FockIndexer idx(rho.dims());
    const auto off_a = idx.offsets(part.modes_a());
    const auto off_b = idx.offsets(part.modes_b());
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t ra : off_a)
        for (std::size_t rb : off_b)
            for (std::size_t ca : off_a)
                for (std::size_t cb : off_b)
                    out(static_cast<Eigen::Index>(ra + rb), static_cast<Eigen::Index>(ca + cb)) =
                        m(static_cast<Eigen::Index>(ra + cb), static_cast<Eigen::Index>(ca + rb));
    return out;
}

inline double trace_norm_hermitian(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

/// log2 || rho^{T_B} ||_1.
inline double log_negativity_fock(const FockDensityOperator& rho, const Bipartition& part) {
    return std::max(0.0, std::log2(trace_norm_hermitian(partial_transpose(rho, part))));
}

inline double trace_distance(const FockDensityOperator& a, const FockDensityOperator& b) {
    if (a.dims() != b.dims()) throw dimension_error("trace distance needs equal dims");
    return std::clamp(0.5 * trace_norm_hermitian(a.matrix() - b.matrix()), 0.0, 1.0);
}

}  // namespace cvx
