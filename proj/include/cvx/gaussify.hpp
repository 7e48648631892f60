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


// Gaussification by Hadamard beam-splitter networks.
//
// n = 2^m copies of an N-mode state are mixed by the passive transformation
// R~_{k} = sum_l H_kl / sqrt(n) R_l (per site, identically on Q and P). The
// k-th output then has characteristic function
//     chi~_k(xi) = chi(xi / sqrt n)^{n+} chi(-xi / sqrt n)^{n-},
// with (n+, n-) the number of +1 / -1 entries in row k of H, and tends to the
// Gaussian with the same first and second moments as n grows.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvx/errors.hpp"
#include "cvx/fock.hpp"
#include "cvx/phase_space.hpp"

namespace cvx {

/// Sylvester-Hadamard matrix [[1,1],[1,-1]]^{(x) m}.
class HadamardNetwork {
   public:
    static constexpr unsigned kMaxLevels = 12;

    explicit HadamardNetwork(unsigned m) : m_(m) {
        if (m > kMaxLevels) {
            throw capacity_error("Hadamard network level " + std::to_string(m) + " exceeds " + std::to_string(kMaxLevels));
        }
        n_ = std::size_t{1} << m;
        const auto n = static_cast<Eigen::Index>(n_);
        h_.resize(n, n);
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index l = 0; l < n; ++l)
                h_(k, l) = (std::popcount(static_cast<unsigned long long>(k & l)) % 2 == 0) ? 1 : -1;
    }

    unsigned levels() const { return m_; }
    std::size_t size() const { return n_; }
    const Eigen::MatrixXi& matrix() const { return h_; }

    /// Number of +1 entries in row k (0-based).
    std::size_t n_plus(std::size_t k) const {
        if (k >= n_) throw index_error("Hadamard row " + std::to_string(k) + " out of range");
        return static_cast<std::size_t>((h_.row(static_cast<Eigen::Index>(k)).array() > 0).count());
    }
    std::size_t n_minus(std::size_t k) const { return n_ - n_plus(k); }

   private:
    unsigned m_ = 0;
    std::size_t n_ = 1;
    Eigen::MatrixXi h_;
};

inline HadamardNetwork hadamard_matrix(unsigned m) { return HadamardNetwork(m); }

/// (H / sqrt n) (x) 1_{2N}: symplectic and orthogonal on n copies of N modes,
/// modes ordered copy-major (copy l, site a) -> l * N + a.
inline RealMatrix network_symplectic(const HadamardNetwork& net, std::size_t n_modes) {
    const RealMatrix h = net.matrix().cast<double>() / std::sqrt(static_cast<double>(net.size()));
    const auto block = static_cast<Eigen::Index>(2 * n_modes);
    RealMatrix s = RealMatrix::Zero(h.rows() * block, h.cols() * block);
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        for (Eigen::Index l = 0; l < h.cols(); ++l)
            s.block(k * block, l * block, block, block) = h(k, l) * RealMatrix::Identity(block, block);
    return s;
}

/// Anything that evaluates a characteristic function and knows its moments.
template <typename P>
concept ChiProvider = requires(const P& p, const RealVector& xi) {
    { p(xi) } -> std::convertible_to<Complex>;
    { p.moments() } -> std::convertible_to<GaussianState>;
};

struct GaussianSource {
    GaussianState state;

    Complex operator()(const RealVector& xi) const { return gaussian_chi(state, xi); }
    const GaussianState& moments() const { return state; }
};

struct FockSource {
    FockChi chi;
    GaussianState gaussian;

    explicit FockSource(const FockDensityOperator& rho, double leakage_budget = kLeakageBudget)
        : chi(rho, leakage_budget), gaussian(extract_moments(rho, leakage_budget)) {}

    Complex operator()(const RealVector& xi) const { return chi(xi); }
    const GaussianState& moments() const { return gaussian; }
};

namespace detail {

inline Complex int_pow(Complex z, std::size_t e) {
    Complex r = 1.0;
    while (e) {
        if (e & 1U) r *= z;
        z *= z;
        e >>= 1U;
    }
    return r;
}

inline bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

}  // namespace detail

/// chi~_k(xi) for row k (0-based) of the order-n Hadamard network.
template <ChiProvider Source>
Complex reduced_chi(const Source& source, std::size_t k, std::size_t n, const RealVector& xi) {
    if (!detail::is_power_of_two(n)) throw domain_error("network size must be a power of two");
    if (k >= n) throw index_error("row " + std::to_string(k) + " out of range for n = " + std::to_string(n));
    const std::size_t n_plus = (k == 0) ? n : n / 2;
    const RealVector scaled = xi / std::sqrt(static_cast<double>(n));
    const Complex plus = detail::int_pow(source(scaled), n_plus);
    if (n_plus == n) return plus;
    return plus * detail::int_pow(source(RealVector(-scaled)), n - n_plus);
}

/// Deterministic phase-space lattice used for sup-norm convergence metrics.
struct PhaseSpaceGrid {
    double max = 3.0;
    double step = 0.375;
    std::vector<RealVector> points;
};

/// Square lattice |q|, |p| <= max with spacing `step`. For N > 1 the lattice is
/// laid on each mode in turn (others at zero), followed by the lattice applied
/// to every mode at once.
inline PhaseSpaceGrid standard_grid(std::size_t n_modes, double max = 3.0, double step = 0.375) {
    if (!(step > 0.0) || !(max >= 0.0)) throw domain_error("grid needs positive step and non-negative extent");
    PhaseSpaceGrid g{max, step, {}};
    const auto count = static_cast<int>(std::floor(2.0 * max / step + 1e-9)) + 1;
    std::vector<double> axis(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) axis[static_cast<std::size_t>(i)] = -max + step * i;
    auto add_plane = [&](const std::vector<std::size_t>& modes) {
        for (double q : axis)
            for (double p : axis) {
                RealVector xi = RealVector::Zero(static_cast<Eigen::Index>(2 * n_modes));
                for (std::size_t m : modes) {
                    xi(static_cast<Eigen::Index>(2 * m)) = q;
                    xi(static_cast<Eigen::Index>(2 * m + 1)) = p;
                }
                g.points.push_back(std::move(xi));
            }
    };
    if (n_modes == 1) {
        add_plane({0});
        return g;
    }
    std::vector<std::size_t> all(n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) {
        add_plane({m});
        all[m] = m;
    }
    add_plane(all);
    return g;
}

struct ConvergenceRow {
    std::size_t n = 0;
    std::string row_class;  // "first" (all-ones row) or "balanced"
    std::size_t row = 0;
    double sup_error = 0.0;
};

struct ConvergenceReport {
    PhaseSpaceGrid grid;
    std::size_t tail_min_n = 4;
    std::vector<ConvergenceRow> rows;
    // Least-squares slope of log e(n) against log n per row class, over every tabulated n.
    std::vector<std::pair<std::string, std::optional<double>>> slopes;
    // The same fit restricted to n >= tail_min_n.
    std::vector<std::pair<std::string, std::optional<double>>> tail_slopes;

    std::vector<double> errors(const std::string& row_class) const {
        std::vector<double> out;
        for (const auto& r : rows)
            if (r.row_class == row_class) out.push_back(r.sup_error);
        return out;
    }
    std::optional<double> slope(const std::string& row_class) const { return find(slopes, row_class); }
    std::optional<double> tail_slope(const std::string& row_class) const { return find(tail_slopes, row_class); }

   private:
    static std::optional<double> find(const std::vector<std::pair<std::string, std::optional<double>>>& v,
                                      const std::string& row_class) {
        for (const auto& [name, s] : v)
            if (name == row_class) return s;
        return std::nullopt;
    }
};

namespace detail {

inline std::optional<double> loglog_slope(const std::vector<ConvergenceRow>& rows, const std::string& row_class,
                                          std::size_t min_n) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
        if (r.row_class != row_class || r.n < min_n || !(r.sup_error > 0.0)) continue;
        x.push_back(std::log(static_cast<double>(r.n)));
        y.push_back(std::log(r.sup_error));
    }
    if (x.size() < 2) return std::nullopt;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace detail

/// Sup-grid distance between chi~_k and its Gaussian limit for n = 2 .. 2^m_max,
/// for the all-ones row and one balanced row. The limit has the source's CM;
/// its mean is sqrt(n) d on the all-ones row and zero on balanced rows.
template <ChiProvider Source>
ConvergenceReport convergence_scan(const Source& source, unsigned m_max, PhaseSpaceGrid grid,
                                   std::size_t tail_min_n = 4) {
    if (m_max < 1 || m_max > HadamardNetwork::kMaxLevels) {
        throw domain_error("m_max must lie in 1.." + std::to_string(HadamardNetwork::kMaxLevels));
    }
    const GaussianState g = source.moments();
    ConvergenceReport report;
    report.tail_min_n = tail_min_n;
    // Balanced rows cancel the first moment; the all-ones row carries sqrt(n) d.
    const GaussianState centered(g.cm);
    std::vector<Complex> target_balanced(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i) target_balanced[i] = gaussian_chi(centered, grid.points[i]);

    for (unsigned m = 1; m <= m_max; ++m) {
        const std::size_t n = std::size_t{1} << m;
        const GaussianState shifted(RealVector(std::sqrt(static_cast<double>(n)) * g.means), g.cm);
        double first = 0.0, balanced = 0.0;
        for (std::size_t i = 0; i < grid.points.size(); ++i) {
            const RealVector scaled = grid.points[i] / std::sqrt(static_cast<double>(n));
            const Complex cp = source(scaled);
            const Complex cm = source(RealVector(-scaled));
            const Complex all_plus = detail::int_pow(cp, n);
            const Complex half = detail::int_pow(cp, n / 2) * detail::int_pow(cm, n / 2);
            first = std::max(first, std::abs(all_plus - gaussian_chi(shifted, grid.points[i])));
            balanced = std::max(balanced, std::abs(half - target_balanced[i]));
        }
        report.rows.push_back({n, "first", 0, first});
        report.rows.push_back({n, "balanced", 1, balanced});
    }
    for (const char* cls : {"first", "balanced"}) {
        report.slopes.emplace_back(cls, detail::loglog_slope(report.rows, cls, 0));
        report.tail_slopes.emplace_back(cls, detail::loglog_slope(report.rows, cls, tail_min_n));
    }
    report.grid = std::move(grid);
    return report;
}

/// One physical Gaussification step (n = 2) in Fock space.
///
/// Each mode is first padded to 2L + 2 levels, L being its highest occupied
/// level, so the photon-number-conserving beam splitters act exactly and the
/// outputs carry no top-level population. Output 0 is the symmetric
/// combination (Hadamard row 1); output 1 is minus the antisymmetric one,
/// which has the same reduced characteristic function since chi~_2 is even.
inline std::vector<FockDensityOperator> fock_gaussify_step(const FockDensityOperator& rho) {
    const std::size_t n = rho.n_modes();
    const auto top = occupied_levels(rho);
    Dims padded(n);
    for (std::size_t m = 0; m < n; ++m) padded[m] = std::max(rho.dims()[m], 2 * top[m] + 2);
    Dims doubled = padded;
    doubled.insert(doubled.end(), padded.begin(), padded.end());
    total_dimension(doubled);

    const FockDensityOperator one = (padded == rho.dims()) ? rho : embed(rho, padded);
    FockDensityOperator mixed = tensor_product(one, one);
    for (std::size_t a = 0; a < n; ++a) mixed = apply_beam_splitter(mixed, a, n + a, std::numbers::pi / 4.0);

    ModeList first(n), second(n);
    for (std::size_t a = 0; a < n; ++a) {
        first[a] = a;
        second[a] = n + a;
    }
    return {partial_trace(mixed, first), partial_trace(mixed, second)};
}

struct SecondOrderReport {
    double expected_curvature = 0.0;  // -(xi.Gamma xi / 2 + (xi.d)^2)
    std::vector<double> steps;
    std::vector<double> estimates;    // central differences, one per step
    double estimate = 0.0;            // Richardson-combined when two or more steps
    double deviation = 0.0;           // relative, or absolute when degenerate
    bool degenerate = false;          // xi = 0: g is identically 1
};

/// Estimates g''(0) for g(x) = chi(x xi) by central differences and compares it
/// with the curvature implied by the source's moments.
template <ChiProvider Source>
SecondOrderReport second_order_check(const Source& source, const RealVector& xi,
                                     std::vector<double> steps = {1e-2, 5e-3}) {
    if (steps.empty()) throw domain_error("second-order check needs at least one step");
    const GaussianState& g = source.moments();
    SecondOrderReport rep;
    const double mean = xi.dot(g.means);
    rep.expected_curvature = -(0.5 * xi.dot(g.cm * xi) + mean * mean);
    rep.degenerate = xi.isZero(0.0);
    const double g0 = source(RealVector(0.0 * xi)).real();
    for (double h : steps) {
        if (!(h > 0.0)) throw domain_error("finite-difference steps must be positive");
        const double gp = source(RealVector(h * xi)).real();
        const double gm = source(RealVector(-h * xi)).real();
        rep.steps.push_back(h);
        rep.estimates.push_back((gp - 2.0 * g0 + gm) / (h * h));
    }
    if (rep.steps.size() >= 2) {
        // Eliminate the O(h^2) term using the two smallest steps.
        std::vector<std::size_t> order(rep.steps.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rep.steps[a] < rep.steps[b]; });
        const double h1 = rep.steps[order[1]], h2 = rep.steps[order[0]];
        const double d1 = rep.estimates[order[1]], d2 = rep.estimates[order[0]];
        rep.estimate = (h1 * h1 * d2 - h2 * h2 * d1) / (h1 * h1 - h2 * h2);
    } else {
        rep.estimate = rep.estimates.front();
    }
    const double diff = std::abs(rep.estimate - rep.expected_curvature);
    rep.deviation = (rep.degenerate || std::abs(rep.expected_curvature) < 1e-14)
                        ? diff
                        : diff / std::abs(rep.expected_curvature);
    return rep;
}

struct BochnerReport {
    double min_eigenvalue = 0.0;
    double normalization_defect = 0.0;  // |g(0) - 1|
    bool positive_definite = false;     // min_eigenvalue >= -1e-8
};

/// Minimum eigenvalue of the Gram matrix g(x_j - x_k), g(x) = chi(x xi). A
/// classical characteristic function yields a positive semidefinite matrix.
template <ChiProvider Source>
BochnerReport bochner_check(const Source& source, const RealVector& xi, const std::vector<double>& points) {
    if (points.empty() || points.size() > 64) throw dimension_error("Bochner check takes 1..64 points");
    const auto m = static_cast<Eigen::Index>(points.size());
    ComplexMatrix gram(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k)
            gram(j, k) = source(RealVector((points[static_cast<std::size_t>(j)] - points[static_cast<std::size_t>(k)]) * xi));
    BochnerReport rep;
    rep.min_eigenvalue = detail::min_eigenvalue(0.5 * (gram + gram.adjoint()));
    rep.normalization_defect = std::abs(source(RealVector(0.0 * xi)) - Complex(1.0));
    rep.positive_definite = rep.min_eigenvalue >= -1e-8;
    return rep;
}

}  // namespace cvx
