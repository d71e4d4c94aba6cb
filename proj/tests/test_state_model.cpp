// Copyright 2026 The qest Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "qest/errors.hpp"
#include "qest/measurement.hpp"
#include "qest/random.hpp"
#include "qest/state_model.hpp"
#include "qest/verify.hpp"

using namespace qest;

TEST(StokesPoint, RejectsOutsideBall) {
    EXPECT_THROW(StokesPoint(Eigen::Vector3d(1.0, 0.0, 0.0)), Error);
    EXPECT_THROW(StokesPoint(Eigen::Vector3d(0.8, 0.8, 0.0)), Error);
    EXPECT_NO_THROW(StokesPoint(Eigen::Vector3d(0.5, 0.5, 0.5)));
}

TEST(QubitState, Origin) {
    const CMatrix rho = qubit_state(StokesPoint(Eigen::Vector3d::Zero()));
    EXPECT_LT((rho - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(QubitState, ThirdAxis) {
    const CMatrix rho = qubit_state(StokesPoint(Eigen::Vector3d(0, 0, 0.5)));
    EXPECT_NEAR(rho(0, 0).real(), 0.75, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 0.25, 1e-15);
    EXPECT_NEAR(std::abs(rho(0, 1)), 0.0, 1e-15);
}

TEST(QubitState, ReferencePointEigenvalues) {
    const auto e = hermitian_eig(qubit_state(StokesPoint(Eigen::Vector3d(0.55, 0.55, 0.55))));
    const double r = std::sqrt(0.9075);
    EXPECT_NEAR(e.values[0], (1 - r) / 2, 1e-14);
    EXPECT_NEAR(e.values[1], (1 + r) / 2, 1e-14);
}

TEST(QubitSlds, OriginArePaulis) {
    const auto d = qubit_slds(StokesPoint(Eigen::Vector3d::Zero()));
    for (int mu = 0; mu < 3; ++mu) EXPECT_LT((d.slds[mu] - pauli(mu)).norm(), 1e-15);
    EXPECT_LT(sld_residual(d), 1e-14);
}

TEST(QubitSlds, SatisfyDefiningEquation) {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        const auto d = qubit_slds(StokesPoint(verify::random_in_ball(rng, 0.99)));
        EXPECT_LT(sld_residual(d), 1e-12);
    }
}

TEST(QubitQfi, Origin) {
    EXPECT_LT((qubit_qfi(StokesPoint(Eigen::Vector3d::Zero())) - RMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(ModelQfi, ReferencePointClosedForm) {
    const Eigen::Vector3d x0(0.55, 0.55, 0.55);
    const RMatrix expected = RMatrix::Identity(3, 3) + x0 * x0.transpose() / 0.0925;
    const RMatrix j = model_qfi(qubit_slds(StokesPoint(x0)));
    EXPECT_LT((j - expected).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((qubit_qfi(StokesPoint(x0)) - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ModelQfi, GenericSldsMatchQubitClosedForm) {
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const StokesPoint x(verify::random_in_ball(rng, 0.95));
        std::vector<CMatrix> partials;
        for (int mu = 0; mu < 3; ++mu) partials.push_back(pauli(mu) / 2.0);
        const auto d = derivatives_from_partials(qubit_state(x), partials);
        EXPECT_LT((model_qfi(d) - qubit_qfi(x)).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(MubState, OriginIsMaximallyMixed) {
    for (int q = 2; q <= 5; ++q) {
        const MubFamily f = mub_bases(q);
        const CMatrix rho = mub_state({q, RVector::Zero(mub_param_count(q))}, f);
        EXPECT_LT((rho - CMatrix::Identity(q, q) / double(q)).norm(), 1e-14);
    }
}

TEST(MubState, SingleCoordinateQubit) {
    const MubFamily f = mub_bases(2);
    RVector c = RVector::Zero(3);
    c[0] = 0.3;
    const CMatrix rho = mub_state({2, c}, f);
    EXPECT_NEAR(rho(0, 0).real(), 0.65, 1e-14);
    EXPECT_NEAR(rho(1, 1).real(), 0.35, 1e-14);
}

TEST(MubState, RejectsNonPositive) {
    const MubFamily f = mub_bases(3);
    RVector c = RVector::Zero(8);
    c[0] = 1.5;
    try {
        mub_state({3, c}, f);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPositive);
    }
}

TEST(MubModel, QfiSymmetricPositiveDefinite) {
    for (int q : {3, 4}) {
        const MubFamily f = mub_bases(q);
        const auto d = mub_derivatives({q, RVector::Zero(mub_param_count(q))}, f);
        const RMatrix j = model_qfi(d);
        EXPECT_EQ(j.rows(), q * q - 1);
        EXPECT_LT(symmetry_defect(j), 1e-12);
        EXPECT_GT(symmetric_eig(j).values.minCoeff(), 1e-6);
        EXPECT_LT(sld_residual(d), 1e-12);
    }
}

TEST(Bures, OrthogonalPureStates) {
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    EXPECT_NEAR(bures_distance(a, b), 4.0, 1e-12);
}

TEST(Bures, IdenticalStatesAndSymmetry) {
    Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const CMatrix a = qubit_state(StokesPoint(verify::random_in_ball(rng, 0.9)));
        const CMatrix b = qubit_state(StokesPoint(verify::random_in_ball(rng, 0.9)));
        EXPECT_NEAR(bures_distance(a, a), 0.0, 1e-12);
        EXPECT_NEAR(bures_distance(a, b), bures_distance(b, a), 1e-12);
        EXPECT_GE(bures_distance(a, b), 0.0);
    }
}

TEST(Bures, QuadraticExpansion) {
    EXPECT_TRUE(verify::check_bures_expansion(21, 20).passed);
}

TEST(CheckState, RejectsBadTrace) {
    EXPECT_THROW(check_state(CMatrix::Identity(2, 2)), Error);
    EXPECT_NO_THROW(check_state(CMatrix::Identity(2, 2) / 2.0));
}
