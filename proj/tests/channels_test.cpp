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


#include "cvx/channels.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace cvx;

namespace {

GaussianChannel thermal_loss(double eta, double nbar) {
    return {std::sqrt(eta) * RealMatrix::Identity(2, 2), (1.0 - eta) * (2.0 * nbar + 1.0) * RealMatrix::Identity(2, 2)};
}

GaussianChannel amplifier(double g) {
    return {std::sqrt(g) * RealMatrix::Identity(2, 2), (g - 1.0) * RealMatrix::Identity(2, 2)};
}

double holevo(const GaussianChannel& ch, const RealMatrix& m, double kappa) {
    return holevo_coherent({m, ch, EnergyConstraint(kappa)});
}

}  // namespace

TEST(channels, construction) {
    EXPECT_THROW(GaussianChannel(RealMatrix::Identity(2, 2), RealMatrix::Identity(4, 4)), dimension_error);
    RealMatrix y(2, 2);
    y << 1, 0.5, 0, 1;
    EXPECT_THROW(GaussianChannel(RealMatrix::Identity(2, 2), y), validity_error);
    EXPECT_THROW(make_pure_loss(0.0), domain_error);
    EXPECT_THROW(make_pure_loss(1.5), domain_error);
}

TEST(channels, pure_loss_action) {
    const auto out = apply_channel(make_pure_loss(0.5), GaussianState::thermal(1.0));
    EXPECT_TRUE(out.cm.isApprox(2.0 * RealMatrix::Identity(2, 2), 1e-14));
    RealVector d(2);
    d << 1.0, -2.0;
    const auto coh = apply_channel(make_pure_loss(0.25), GaussianState::coherent(d));
    EXPECT_TRUE(coh.means.isApprox(0.5 * d, 1e-14));
    EXPECT_TRUE(coh.cm.isApprox(RealMatrix::Identity(2, 2), 1e-14));
    EXPECT_TRUE(apply_channel(GaussianChannel::identity(1), GaussianState::thermal(0.3)).cm.isApprox(
        GaussianState::thermal(0.3).cm));
}

TEST(channels, composition) {
    const auto c = compose(make_pure_loss(0.5), make_pure_loss(0.6));
    const auto direct = make_pure_loss(0.3);
    EXPECT_TRUE(c.x.isApprox(direct.x, 1e-14));
    EXPECT_TRUE(c.y.isApprox(direct.y, 1e-14));
    EXPECT_THROW(compose(GaussianChannel::identity(2), make_pure_loss(0.5)), dimension_error);
}

TEST(channels, complete_positivity) {
    for (double eta : {0.1, 0.5, 1.0}) EXPECT_TRUE(is_completely_positive(make_pure_loss(eta)));
    EXPECT_TRUE(is_completely_positive(amplifier(2.0)));
    EXPECT_TRUE(is_completely_positive(thermal_loss(0.5, 1.0)));
    EXPECT_NEAR(cp_certificate(make_pure_loss(0.5)), 0.0, 1e-12);
    // Amplification without the matching noise violates the uncertainty principle.
    const GaussianChannel bad(std::sqrt(2.0) * RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2));
    EXPECT_FALSE(is_completely_positive(bad));
    EXPECT_NEAR(cp_certificate(bad), -1.0, 1e-12);
    EXPECT_THROW(apply_channel(bad, GaussianState::vacuum(1)), certificate_error);
    // Transposition is positive but not completely positive.
    RealMatrix t(2, 2);
    t << 1, 0, 0, -1;
    EXPECT_FALSE(is_completely_positive({t, RealMatrix::Zero(2, 2)}));
}

TEST(holevo, closed_form_values) {
    const RealMatrix m = 2.0 * RealMatrix::Identity(2, 2);
    EXPECT_NEAR(holevo(make_pure_loss(1.0), m, 3.0), 2.0, 1e-12);
    EXPECT_NEAR(holevo(make_pure_loss(0.8), m, 3.0), oracle::photon_entropy(0.8), 1e-12);
    EXPECT_NEAR(holevo(make_pure_loss(0.8), m, 3.0), 1.7839, 1e-4);
    EXPECT_NEAR(holevo(make_pure_loss(0.5), RealMatrix::Zero(2, 2), 3.0), 0.0, 1e-15);
}

TEST(holevo, constraint_and_validity) {
    EXPECT_THROW(holevo(make_pure_loss(0.8), 3.0 * RealMatrix::Identity(2, 2), 3.0), constraint_error);
    RealMatrix neg(2, 2);
    neg << 1, 0, 0, -0.5;
    EXPECT_THROW(holevo(make_pure_loss(0.8), neg, 3.0), validity_error);
    EXPECT_THROW(holevo(make_pure_loss(0.8), RealMatrix::Zero(4, 4), 3.0), dimension_error);
    EXPECT_THROW(EnergyConstraint(0.5).require_feasible(1), constraint_error);
}

TEST(holevo, data_processing) {
    const RealMatrix m = modulation_matrix(3.0, 1.0, 0.4);
    const double before = holevo(make_pure_loss(0.9), m, 3.0);
    const double after = holevo(compose(make_pure_loss(0.5), make_pure_loss(0.9)), m, 3.0);
    EXPECT_LE(after, before + 1e-12);
}

TEST(modulation, matrix_shape) {
    const RealMatrix m = modulation_matrix(3.0, 1.0, 0.7);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
    EXPECT_NEAR(es.eigenvalues()(0), 1.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(1), 3.0, 1e-14);
    EXPECT_NEAR(m.trace(), 4.0, 1e-14);
}

TEST(modulation, optimizer_matches_grid_and_closed_form) {
    for (double eta : {0.5, 0.8, 1.0}) {
        const auto ch = make_pure_loss(eta);
        const EnergyConstraint k(3.0);
        const auto opt = optimize_modulation(ch, k);
        const auto grid = grid_search_modulation(ch, k);
        EXPECT_NEAR(opt.value, grid.value, 1e-4) << "eta " << eta;
        EXPECT_NEAR(opt.value, oracle::photon_entropy(eta * 1.0), 1e-6) << "eta " << eta;
        EXPECT_NEAR(opt.kappa_used, 3.0, 1e-6);
        EXPECT_NEAR(opt.mean_photon, 1.0, 1e-6);
        EXPECT_LE(opt.modulation.trace(), 4.0 + 1e-9);
    }
}

TEST(modulation, noisy_channel_agrees_with_grid) {
    RealMatrix y(2, 2);
    y << 0.9, 0.2, 0.2, 0.3;
    RealMatrix x(2, 2);
    x << 0.9, 0.0, 0.1, 0.7;
    const GaussianChannel ch(x, y + RealMatrix::Identity(2, 2));
    ASSERT_TRUE(is_completely_positive(ch));
    const auto opt = optimize_modulation(ch, EnergyConstraint(2.5));
    const auto grid = grid_search_modulation(ch, EnergyConstraint(2.5));
    EXPECT_GE(opt.value, grid.value - 1e-4);
    EXPECT_NEAR(opt.value, grid.value, 1e-4);
}

TEST(modulation, monotone_in_energy) {
    double prev = -1.0;
    for (double kappa : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        const auto r = optimize_modulation(make_pure_loss(0.7), EnergyConstraint(kappa));
        EXPECT_GE(r.value, prev - 1e-12);
        prev = r.value;
    }
    const auto zero = optimize_modulation(make_pure_loss(0.7), EnergyConstraint(1.0));
    EXPECT_EQ(zero.value, 0.0);
    EXPECT_TRUE(zero.modulation.isZero());
}

TEST(modulation, rejects_multimode_and_invalid_channels) {
    EXPECT_THROW(optimize_modulation(GaussianChannel::identity(2), EnergyConstraint(3.0)), domain_error);
    EXPECT_THROW(grid_search_modulation(GaussianChannel::identity(2), EnergyConstraint(3.0)), domain_error);
    const GaussianChannel bad(std::sqrt(2.0) * RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2));
    EXPECT_THROW(optimize_modulation(bad, EnergyConstraint(3.0)), certificate_error);
}
