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


#include "cvx/measures.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "cvx/ensembles.hpp"
#include "oracles.hpp"

using namespace cvx;

namespace {

const Bipartition kAB = Bipartition::split(2, 1);

}  // namespace

TEST(conditional_entropy, examples) {
    const auto phi = counterexample_phi(0.25);
    EXPECT_NEAR(conditional_entropy(phi.state, kAB), oracle::binary_entropy(1.0 / 16.0), 1e-10);
    EXPECT_NEAR(conditional_entropy(phi.state, kAB), 0.33729, 1e-5);

    // Maximally entangled two-qubit state: S_A - S = 1.
    ComplexVector bell = ComplexVector::Zero(9);
    bell(0) = bell(4) = 1.0;
    EXPECT_NEAR(conditional_entropy(build_pure_state({3, 3}, bell), kAB), 1.0, 1e-10);

    // Maximally mixed on two levels per mode: S_A - S = 1 - 2.
    ComplexMatrix mixed = ComplexMatrix::Zero(9, 9);
    for (int i : {0, 1, 3, 4}) mixed(i, i) = 0.25;
    EXPECT_NEAR(conditional_entropy(build_mixed_state({3, 3}, mixed), kAB), -1.0, 1e-10);
}

TEST(conditional_entropy, gaussian_examples) {
    const RealMatrix g = oracle::phi_cm(0.25);
    // S from the dense symplectic spectrum; the reduced CM is (1 + 2 l^2) 1.
    const auto nus = oracle::symplectic_eigenvalues_dense(g);
    double s = 0.0;
    for (double nu : nus) s += mode_entropy(nu);
    EXPECT_NEAR(gaussian_conditional_entropy(g, kAB), mode_entropy(1.125) - s, 1e-10);
    EXPECT_NEAR(gaussian_conditional_entropy(g, kAB), 0.2117, 1e-4);
    EXPECT_NEAR(gaussian_conditional_entropy(RealMatrix::Identity(4, 4), kAB), 0.0, 1e-12);
    EXPECT_THROW(gaussian_conditional_entropy(0.5 * RealMatrix::Identity(4, 4), kAB), validity_error);
}

TEST(counterexample, phi_state) {
    const auto c = counterexample_phi(0.25);
    EXPECT_EQ(c.state.dims(), (Dims{3, 3}));
    EXPECT_LT((c.moments.cm - oracle::phi_cm(0.25)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(log_negativity_fock(c.state, kAB), 0.5697, 1e-4);
    EXPECT_NEAR(log_negativity_gaussian(c.moments.cm, kAB), 0.642, 5e-3);
    EXPECT_THROW(counterexample_phi(0.0), domain_error);
    EXPECT_THROW(counterexample_phi(1.0), domain_error);
    EXPECT_THROW(counterexample_phi(0.25, 2), dimension_error);
}

TEST(counterexample, analytic_log_negativity) {
    for (double lam : {0.1, 0.25, 0.5}) {
        const auto c = counterexample_phi(lam, 4);
        const double expected = 2.0 * std::log2(std::sqrt(1.0 - lam * lam) + lam);
        EXPECT_NEAR(log_negativity_fock(c.state, kAB), expected, 1e-12);
        EXPECT_LT((c.moments.cm - oracle::phi_cm(lam)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(extremality_report, counterexample_fields) {
    const auto c = counterexample_phi(0.25);
    const auto r = extremality_report(c.state, kAB, "phi");
    EXPECT_EQ(r.label, "phi");
    EXPECT_NEAR(r.entropy, 0.0, 1e-9);
    EXPECT_GT(r.entropy_gaussian, 0.0);
    EXPECT_TRUE(r.max_entropy_holds());
    EXPECT_TRUE(r.conditional_entropy_holds());
    EXPECT_NEAR(r.conditional_entropy_margin(), 0.33729 - 0.21171, 1e-4);
    EXPECT_TRUE(r.negativity_counterexample());
    EXPECT_TRUE(r.distillable_gaussian);
    EXPECT_NEAR(r.reduced_entropy, r.conditional_entropy + r.entropy, 1e-14);
}

TEST(extremality_report, gaussian_input_saturates) {
    // The thermal state is Gaussian, so every margin vanishes up to truncation.
    const auto th = tensor_product(thermal_state(40, 0.3), thermal_state(40, 0.1));
    const auto r = extremality_report(th, kAB);
    EXPECT_NEAR(r.max_entropy_margin(), 0.0, 1e-6);
    EXPECT_NEAR(r.conditional_entropy_margin(), 0.0, 1e-6);
    EXPECT_NEAR(r.log_negativity, 0.0, 1e-9);
}

TEST(extremality_report, ensemble_has_no_violations) {
    const auto members = bounded_photon_ensemble(7, 200);
    ASSERT_EQ(members.size(), 200u);
    std::size_t mixed = 0;
    for (const auto& m : members) {
        mixed += m.mixed ? 1 : 0;
        const auto r = extremality_report(m.state, kAB);
        EXPECT_TRUE(r.max_entropy_holds()) << r.max_entropy_margin();
        EXPECT_TRUE(r.conditional_entropy_holds()) << r.conditional_entropy_margin();
    }
    EXPECT_EQ(mixed, 100u);
}

TEST(ensembles, deterministic_in_seed) {
    const auto a = bounded_photon_ensemble(11, 4);
    const auto b = bounded_photon_ensemble(11, 4);
    const auto c = bounded_photon_ensemble(12, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(a[i].state.matrix(), b[i].state.matrix());
        EXPECT_EQ(a[i].state.dims(), (Dims{4, 4}));
        EXPECT_EQ(a[i].state.leakage(), 0.0);
    }
    EXPECT_NE(a[0].state.matrix(), c[0].state.matrix());
}

TEST(ensembles, random_cms_are_valid) {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(validate_cm(random_two_mode_cm(rng)), CmValidity::valid);
}
