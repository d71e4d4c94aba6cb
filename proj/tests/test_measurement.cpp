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

using namespace qest;

namespace {

CMatrix projector(int mu, double sign) { return (CMatrix::Identity(2, 2) + sign * pauli(mu)) / 2.0; }

}  // namespace

TEST(Povm, RejectsIncomplete) {
    std::vector<PovmElement> e{{"a", projector(2, 1.0)}};
    EXPECT_THROW(Povm(std::move(e)), Error);
}

TEST(Povm, RejectsNegativeElement) {
    CMatrix a = CMatrix::Identity(2, 2) * 1.5;
    CMatrix b = CMatrix::Identity(2, 2) * -0.5;
    EXPECT_THROW(Povm({{"a", a}, {"b", b}}), Error);
}

TEST(PvmFromObservable, PauliZ) {
    const Povm m = pvm_from_observable(pauli(2));
    ASSERT_EQ(m.size(), 2u);
    EXPECT_LT((m[0].op - projector(2, -1.0)).norm(), 1e-13);
    EXPECT_LT((m[1].op - projector(2, 1.0)).norm(), 1e-13);
    EXPECT_EQ(m[0].label, "-1");
    EXPECT_EQ(m[1].label, "+1");
}

TEST(PvmFromObservable, IdentityIsOneCluster) {
    const Povm m = pvm_from_observable(CMatrix::Identity(2, 2));
    ASSERT_EQ(m.size(), 1u);
    EXPECT_LT((m[0].op - CMatrix::Identity(2, 2)).norm(), 1e-13);
}

TEST(PvmFromObservable, PauliX) {
    const Povm m = pvm_from_observable(pauli(0));
    ASSERT_EQ(m.size(), 2u);
    EXPECT_LT((m[0].op - projector(0, -1.0)).norm(), 1e-13);
    EXPECT_LT((m[1].op - projector(0, 1.0)).norm(), 1e-13);
}

TEST(Randomize, SinglePartUnchanged) {
    const Povm m = pvm_from_observable(pauli(1));
    const Povm r = randomize({{1.0, m}});
    ASSERT_EQ(r.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_LT((r[i].op - m[i].op).norm(), 1e-15);
}

TEST(Randomize, ThreePaulisGiveSixThirdTraceElements) {
    std::vector<std::pair<double, Povm>> parts;
    for (int mu = 0; mu < 3; ++mu) parts.emplace_back(1.0 / 3.0, pvm_from_observable(pauli(mu)));
    const Povm r = randomize(parts);
    ASSERT_EQ(r.size(), 6u);
    for (const auto &e : r.elements()) EXPECT_NEAR(e.op.trace().real(), 1.0 / 3.0, 1e-14);
    ASSERT_TRUE(r.provenance().has_value());
    EXPECT_EQ((*r.provenance())[5].branch, 2);
}

TEST(Randomize, DuplicatedPvmKeepsDistribution) {
    const Povm m = pvm_from_observable(pauli(2));
    const Povm r = randomize({{0.5, m}, {0.5, m}});
    const CMatrix rho = qubit_state(StokesPoint(Eigen::Vector3d(0.1, 0.2, 0.3)));
    const RVector p = outcome_distribution(rho, m);
    const RVector q = outcome_distribution(rho, r);
    ASSERT_EQ(q.size(), 4);
    EXPECT_NEAR(q[0] + q[2], p[0], 1e-15);
    EXPECT_NEAR(q[1] + q[3], p[1], 1e-15);
}

TEST(Randomize, RejectsBadDistribution) {
    const Povm m = pvm_from_observable(pauli(2));
    try {
        randomize({{0.5, m}, {0.4, m}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadDistribution);
    }
}

TEST(TomographyPovm, UniformAtOrigin) {
    const RVector p = outcome_distribution(CMatrix::Identity(2, 2) / 2.0, qubit_tomography_povm());
    ASSERT_EQ(p.size(), 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(p[i], 1.0 / 6.0, 1e-15);
}

TEST(TomographyPovm, ReferencePoint) {
    const RVector p =
        outcome_distribution(qubit_state(StokesPoint(Eigen::Vector3d(0.55, 0.55, 0.55))), qubit_tomography_povm());
    for (int mu = 0; mu < 3; ++mu) {
        EXPECT_NEAR(p[2 * mu], 1.55 / 6.0, 1e-15);
        EXPECT_NEAR(p[2 * mu + 1], 0.45 / 6.0, 1e-15);
    }
}

TEST(TomographyPovm, MatchesRandomizedPaulis) {
    const Povm t = qubit_tomography_povm();
    EXPECT_EQ(t[0].label, "1+");
    EXPECT_EQ(t[5].label, "3-");
    for (int mu = 0; mu < 3; ++mu) {
        EXPECT_LT((t[2 * mu].op - projector(mu, 1.0) / 3.0).norm(), 1e-15);
        EXPECT_LT((t[2 * mu + 1].op - projector(mu, -1.0) / 3.0).norm(), 1e-15);
    }
}

TEST(OutcomeDistribution, Eigenstate) {
    const RVector p = outcome_distribution(projector(2, 1.0), pvm_from_observable(pauli(2)));
    EXPECT_NEAR(p[0], 0.0, 1e-15);
    EXPECT_NEAR(p[1], 1.0, 1e-15);
}

TEST(OutcomeDistribution, MatchesStokesFormula) {
    Rng rng(1);
    const Povm t = qubit_tomography_povm();
    for (int k = 0; k < 10; ++k) {
        Eigen::Vector3d x(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
        const RVector p = outcome_distribution(qubit_state(StokesPoint(x)), t);
        for (int mu = 0; mu < 3; ++mu) {
            EXPECT_NEAR(p[2 * mu], (1 + x[mu]) / 6.0, 1e-15);
            EXPECT_NEAR(p[2 * mu + 1], (1 - x[mu]) / 6.0, 1e-15);
        }
    }
}

TEST(MubBases, OverlapsForSupportedDimensions) {
    for (int q = 2; q <= 5; ++q) {
        const MubFamily f = mub_bases(q);
        EXPECT_EQ(static_cast<int>(f.bases().size()), q + 1);
        EXPECT_LT(f.orthonormality_defect(), 1e-12);
        EXPECT_LT(f.unbiasedness_defect(), 1e-12);
        for (int a = 0; a <= q; ++a)
            for (int b = a + 1; b <= q; ++b)
                for (int i = 0; i < q; ++i)
                    for (int j = 0; j < q; ++j)
                        EXPECT_NEAR(std::norm(f.vector(a, i).dot(f.vector(b, j))), 1.0 / q, 1e-9);
    }
}

TEST(MubBases, QubitFamilyIsPauliEigenbases) {
    const MubFamily f = mub_bases(2);
    const int axis_of_basis[] = {2, 0, 1};
    for (int a = 0; a < 3; ++a) {
        for (int i = 0; i < 2; ++i) {
            const CVector v = f.vector(a, i);
            const CMatrix p = v * v.adjoint();
            const double expectation = (p * pauli(axis_of_basis[a])).trace().real();
            EXPECT_NEAR(std::abs(expectation), 1.0, 1e-12);
        }
    }
}

TEST(MubBases, UnsupportedDimension) {
    for (int q : {1, 6, 7}) {
        try {
            mub_bases(q);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
        }
    }
}

TEST(MubBases, RejectsNonUnbiasedFamily) {
    std::vector<CMatrix> bases(3, CMatrix::Identity(2, 2));
    EXPECT_THROW(MubFamily(2, bases), Error);
}

TEST(MubTomography, QutritHasTwelveQuarterTraceElements) {
    const Povm m = mub_tomography_povm(mub_bases(3));
    ASSERT_EQ(m.size(), 12u);
    for (const auto &e : m.elements()) EXPECT_NEAR(e.op.trace().real(), 0.25, 1e-14);
    EXPECT_EQ(m[4].label, "2:2");
}

TEST(MubTomography, QubitCoincidesWithPauliTomography) {
    const Povm a = mub_tomography_povm(mub_bases(2));
    const Povm b = qubit_tomography_povm();
    ASSERT_EQ(a.size(), b.size());
    for (const auto &e : a.elements()) {
        double best = 1e9;
        for (const auto &f : b.elements()) best = std::min(best, (e.op - f.op).norm());
        EXPECT_LT(best, 1e-12);
    }
}
