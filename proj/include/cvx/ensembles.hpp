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


// Seeded random ensembles. All randomness is drawn from std::mt19937_64.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cvx/fock.hpp"
#include "cvx/phase_space.hpp"

namespace cvx {

using Rng = std::mt19937_64;

/// Haar-random pure state on the span of Fock levels <= n_max in every mode,
/// embedded in n_max + 2 levels so the top level stays empty.
inline FockDensityOperator random_bounded_pure_state(Rng& rng, std::size_t n_modes, std::size_t n_max = 2) {
    const Dims dims(n_modes, n_max + 2);
    const FockIndexer idx(dims);
    std::normal_distribution<double> normal;
    ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(idx.total()));
    for (std::size_t x = 0; x < idx.total(); ++x) {
        bool bounded = true;
        for (std::size_t m = 0; m < n_modes; ++m) bounded = bounded && idx.level(x, m) <= n_max;
        if (!bounded) continue;
        const double re = normal(rng);
        const double im = normal(rng);
        c(static_cast<Eigen::Index>(x)) = Complex(re, im);
    }
    return build_pure_state(dims, std::move(c));
}

/// p |psi1><psi1| + (1 - p) |psi2><psi2| with p uniform on [0, 1].
inline FockDensityOperator random_bounded_mixed_state(Rng& rng, std::size_t n_modes, std::size_t n_max = 2) {
    const auto a = random_bounded_pure_state(rng, n_modes, n_max);
    const auto b = random_bounded_pure_state(rng, n_modes, n_max);
    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return {a.dims(), p * a.matrix() + (1.0 - p) * b.matrix()};
}

struct EnsembleMember {
    bool mixed = false;
    FockDensityOperator state;
};

/// Alternating pure / mixed two-mode states, reproducible from `seed`.
inline std::vector<EnsembleMember> bounded_photon_ensemble(std::uint64_t seed, std::size_t count,
                                                           std::size_t n_modes = 2, std::size_t n_max = 2) {
    Rng rng(seed);
    std::vector<EnsembleMember> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const bool mixed = (i % 2) == 1;
        out.push_back({mixed, mixed ? random_bounded_mixed_state(rng, n_modes, n_max)
                                    : random_bounded_pure_state(rng, n_modes, n_max)});
    }
    return out;
}

/// Random valid two-mode CM: S (nu_1 1 (+) nu_2 1) S^T with thermal nu in [1, 3]
/// and S = O_1 Z O_2, O passive (random 2x2 unitary), Z single-mode squeezers
/// with r in [0, 1].
inline RealMatrix random_two_mode_cm(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto passive = [&]() {
        // U = [[e^{ia} cos t, e^{ib} sin t], [-e^{-ib} sin t, e^{-ia} cos t]] (times a phase), mapped to
        // the real 4x4 symplectic acting on (Q1, P1, Q2, P2).
        const double t = unit(rng) * std::numbers::pi / 2.0;
        const double a = unit(rng) * 2.0 * std::numbers::pi, b = unit(rng) * 2.0 * std::numbers::pi;
        const double g = unit(rng) * 2.0 * std::numbers::pi;
        Eigen::Matrix2cd u;
        u << std::polar(std::cos(t), a + g), std::polar(std::sin(t), b + g),
            -std::polar(std::sin(t), -b + g), std::polar(std::cos(t), -a + g);
        RealMatrix s(4, 4);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const double x = u(j, k).real(), y = u(j, k).imag();
                s.block<2, 2>(2 * j, 2 * k) << x, -y, y, x;
            }
        return s;
    };
    RealMatrix z = RealMatrix::Zero(4, 4);
    for (int j = 0; j < 2; ++j) {
        const double r = unit(rng);
        z(2 * j, 2 * j) = std::exp(r);
        z(2 * j + 1, 2 * j + 1) = std::exp(-r);
    }
    RealMatrix thermal = RealMatrix::Zero(4, 4);
    for (int j = 0; j < 2; ++j) thermal.block<2, 2>(2 * j, 2 * j) = (1.0 + 2.0 * unit(rng)) * RealMatrix::Identity(2, 2);
    const RealMatrix s = passive() * z * passive();
    RealMatrix g = s * thermal * s.transpose();
    return 0.5 * (g + g.transpose());
}

}  // namespace cvx
