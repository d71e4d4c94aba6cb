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
#include "qest/estimation.hpp"
#include "qest/measurement.hpp"
#include "qest/random.hpp"
#include "qest/state_model.hpp"
#include "qest/verify.hpp"

using namespace qest;

namespace {

const Eigen::Vector3d kX0(0.55, 0.55, 0.55);

RMatrix eye(int d) { return RMatrix::Identity(d, d); }

double max_abs(const RMatrix &a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Weight, RejectsIndefinite) {
    RMatrix h = eye(3);
    h(2, 2) = -1.0;
    EXPECT_THROW(Weight{h}, Error);
    RMatrix asym = eye(2);
    asym(0, 1) = 0.5;
    EXPECT_THROW(Weight{asym}, Error);
}

TEST(ClassicalFisher, TomographyClosedForm) {
    Rng rng(12);
    const Povm t = qubit_tomography_povm();
    for (int k = 0; k < 20; ++k) {
        const StokesPoint x(verify::random_in_ball(rng, 0.95));
        const RMatrix g = classical_fisher(qubit_slds(x), t);
        RMatrix expected = RMatrix::Zero(3, 3);
        for (int mu = 0; mu < 3; ++mu) expected(mu, mu) = 1.0 / (3.0 * (1.0 - x[mu] * x[mu]));
        EXPECT_LT(max_abs(g - expected), 1e-12);
        EXPECT_LT(max_abs(qubit_tomography_fisher(x) - expected), 1e-14);
    }
}

TEST(ClassicalFisher, PauliZAtOrigin) {
    const RMatrix g =
        classical_fisher(qubit_slds(StokesPoint(Eigen::Vector3d::Zero())), pvm_from_observable(pauli(2)));
    RMatrix expected = RMatrix::Zero(3, 3);
    expected(2, 2) = 1.0;
    EXPECT_LT(max_abs(g - expected), 1e-14);
}

TEST(ClassicalFisher, ZeroProbabilityOutcomeWithSlope) {
    // tau on the boundary is excluded, so build a model whose outcome vanishes
    // while its derivative does not.
    CMatrix rho = CMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    ModelDerivatives d;
    d.rho = rho;
    d.partials = {pauli(2) / 2.0};
    d.slds = {pauli(2)};
    try {
        classical_fisher(d, pvm_from_observable(pauli(2)));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularOutcome);
    }
}

TEST(HatFisher, Identities) {
    const RMatrix j = qubit_qfi(StokesPoint(kX0));
    EXPECT_LT(max_abs(hat_fisher(j, j, eye(3)) - eye(3)), 1e-12);
    const RMatrix g0 =
        classical_fisher(qubit_slds(StokesPoint(Eigen::Vector3d::Zero())), qubit_tomography_povm());
    const RMatrix h0 = hat_fisher(g0, eye(3), eye(3));
    EXPECT_LT(max_abs(h0 - eye(3) / 3.0), 1e-14);
    EXPECT_NEAR(h0.trace(), 1.0, 1e-14);
}

TEST(QcrMinTrace, OriginIdentity) {
    const auto sol = qcr_min_trace(eye(3), Weight(eye(3)));
    EXPECT_NEAR(sol.bound, 9.0, 1e-12);
    EXPECT_LT(max_abs(sol.fisher_target - eye(3) / 3.0), 1e-14);
    EXPECT_TRUE(sol.attainable);
}

TEST(QcrMinTrace, QfiWeightAlwaysNine) {
    Rng rng(6);
    for (int k = 0; k < 20; ++k) {
        const RMatrix j = qubit_qfi(StokesPoint(verify::random_in_ball(rng, 0.99)));
        EXPECT_NEAR(qcr_min_trace(j, Weight(j)).bound, 9.0, 1e-8);
    }
}

TEST(QcrMinTrace, ThirdAxisIdentityWeight) {
    const RMatrix j = qubit_qfi(StokesPoint(Eigen::Vector3d(0, 0, 0.5)));
    const double expected = std::pow(2.0 + std::sqrt(0.75), 2);
    EXPECT_NEAR(qcr_min_trace(j, Weight(eye(3))).bound, expected, 1e-12);
}

TEST(QcrMinTrace, NoPovmBeatsTheBound) {
    Rng rng(17);
    for (int k = 0; k < 30; ++k) {
        const StokesPoint x(verify::random_in_ball(rng, 0.9));
        const auto d = qubit_slds(x);
        const Weight h(verify::random_pd(rng, 3));
        const double bound = qcr_min_trace(qubit_qfi(x), h).bound;
        const RMatrix g = classical_fisher(d, verify::random_povm(rng, 2, 6));
        EXPECT_GE(weighted_trace_inverse(h.matrix(), g), bound * (1.0 - 1e-10));
    }
}

TEST(OptimalMeasurement, OriginIsTomography) {
    const StokesPoint x(Eigen::Vector3d::Zero());
    const auto sol = optimal_measurement(qubit_slds(x), eye(3), Weight(eye(3)));
    ASSERT_TRUE(sol.measurement.has_value());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(sol.probs[i], 1.0 / 3.0, 1e-14);
    const RMatrix g = classical_fisher(qubit_slds(x), *sol.measurement);
    EXPECT_LT(max_abs(g - classical_fisher(qubit_slds(x), qubit_tomography_povm())), 1e-13);
}

TEST(OptimalMeasurement, TomographyWeightAtReferencePoint) {
    const StokesPoint x(kX0);
    const auto d = qubit_slds(x);
    const Weight h = tomography_weight(x);
    const auto sol = optimal_measurement(d, qubit_qfi(x), h);
    const double tomo = weighted_trace_inverse(h.matrix(), classical_fisher(d, qubit_tomography_povm()));
    EXPECT_NEAR(sol.bound, tomo, 1e-9 * tomo);
    EXPECT_NEAR(weighted_trace_inverse(h.matrix(), classical_fisher(d, *sol.measurement)), sol.bound,
                1e-9 * sol.bound);
}

TEST(OptimalMeasurement, AttainsTarget) { EXPECT_TRUE(verify::check_optimal_attainment(99, 30).passed); }

TEST(OptimalMeasurement, QutritUnsupported) {
    const MubFamily f = mub_bases(3);
    const auto d = mub_derivatives({3, RVector::Zero(8)}, f);
    const RMatrix j = model_qfi(d);
    try {
        optimal_measurement(d, j, Weight(j));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
    }
}

TEST(LuEstimator, TomographyCovarianceAtOrigin) {
    const StokesPoint x(Eigen::Vector3d::Zero());
    const auto d = qubit_slds(x);
    const Povm t = qubit_tomography_povm();
    const RMatrix g = classical_fisher(d, t);
    const auto est = lu_estimator(RVector::Zero(3), d, t, g);
    const RVector p = outcome_distribution(d.rho, t);
    RMatrix cov = RMatrix::Zero(3, 3);
    RVector mean = RVector::Zero(3);
    for (std::size_t n = 0; n < est.size(); ++n) {
        mean += p[n] * est[n];
        cov += p[n] * est[n] * est[n].transpose();
    }
    EXPECT_LT(mean.norm(), 1e-14);
    EXPECT_LT(max_abs(cov - 3.0 * eye(3)), 1e-12);
}

TEST(LuEstimator, BinomialVarianceOneParameter) {
    const StokesPoint x(Eigen::Vector3d(0, 0, 0.5));
    const auto full = qubit_slds(x);
    const ModelDerivatives d = derivatives_from_partials(full.rho, {full.partials[2]});
    const Povm m = pvm_from_observable(pauli(2));
    const RMatrix g = classical_fisher(d, m);
    RVector x3(1);
    x3[0] = 0.5;
    const auto est = lu_estimator(x3, d, m, g);
    const RVector p = outcome_distribution(d.rho, m);
    double mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < est.size(); ++n) {
        mean += p[n] * est[n][0];
        second += p[n] * est[n][0] * est[n][0];
    }
    EXPECT_NEAR(mean, 0.5, 1e-14);
    EXPECT_NEAR(second - mean * mean, 0.75, 1e-12);
}

TEST(TomographyWeight, Examples) {
    EXPECT_LT(max_abs(tomography_weight(StokesPoint(Eigen::Vector3d::Zero())).matrix() - eye(3)), 1e-15);
    RMatrix expected = eye(3);
    expected(0, 0) = 1.0 / 0.75;
    EXPECT_LT(max_abs(tomography_weight(StokesPoint(Eigen::Vector3d(0.5, 0, 0))).matrix() - expected), 1e-14);
}

TEST(TomographyWeight, OptimalityIdentities) {
    EXPECT_TRUE(verify::check_tomography_identity(3, 50).passed);
    EXPECT_TRUE(verify::check_tomography_optimality(4, 20).passed);
}

TEST(WeightFromFisher, TomographyFeasibleQfiNot) {
    const StokesPoint x(kX0);
    const RMatrix j = qubit_qfi(x);
    const auto tomo = weight_from_fisher(qubit_tomography_fisher(x), j);
    EXPECT_TRUE(tomo.feasible);
    const RMatrix ht = tomography_weight(x).matrix();
    const double scale = ht(0, 0) / tomo.weight.matrix()(0, 0);
    EXPECT_LT(max_abs(scale * tomo.weight.matrix() - ht), 1e-9 * max_abs(ht));
    const auto qfi = weight_from_fisher(j, j);
    EXPECT_FALSE(qfi.feasible);
    EXPECT_NEAR(qfi.trace_jinv_f, 3.0, 1e-12);
}

TEST(RotWeight, IdentityAndQfi) {
    Rng rng(9);
    for (int k = 0; k < 10; ++k) {
        const StokesPoint x(verify::random_in_ball(rng, 0.95));
        const double r = x.radius();
        EXPECT_LT(max_abs(rot_weight({1.0, 1.0}, x).matrix() - eye(3)), 1e-15);
        EXPECT_LT(max_abs(rot_weight({1.0, 1.0 / (1.0 - r * r)}, x).matrix() - qubit_qfi(x)), 1e-9);
    }
}

TEST(RotWeight, RotationInvariance) {
    Rng rng(10);
    for (int k = 0; k < 20; ++k) {
        const Eigen::Vector3d x = verify::random_in_ball(rng, 0.9);
        const Eigen::Matrix3d u = verify::random_rotation(rng);
        const RotWeightSpec spec{0.5 + rng.uniform(), 0.5 + rng.uniform()};
        const RMatrix lhs = u.transpose() * rot_weight(spec, StokesPoint(u * x)).matrix() * u;
        EXPECT_LT(max_abs(lhs - rot_weight(spec, StokesPoint(x)).matrix()), 1e-10);
    }
}

TEST(ClosedForms, OptimalConstant) {
    EXPECT_NEAR(c_opt_closed({1.0, 1.0}, 0.0), 9.0, 1e-15);
    for (double r : {0.1, 0.5, 0.9, 0.999}) EXPECT_NEAR(c_opt_closed({1.0, 1.0 / (1 - r * r)}, r), 9.0, 1e-12);
    EXPECT_NEAR(c_opt_closed({1.0, 1.0}, 1.0 - 1e-9), 4.0, 1e-3);
}

TEST(ClosedForms, Anisotropy) {
    EXPECT_NEAR(anisotropy(StokesPoint(Eigen::Vector3d(0, 0.7, 0))), 0.0, 1e-15);
    EXPECT_NEAR(anisotropy(StokesPoint(Eigen::Vector3d(0.3, 0.3, 0.3))), 2.0 / 3.0, 1e-15);
}

TEST(ClosedForms, TomographyLimit) {
    const Eigen::Vector3d v = Eigen::Vector3d::Ones().normalized();
    EXPECT_NEAR(c_tomo_closed({1.0, 1.0}, StokesPoint((1.0 - 1e-9) * v)), 6.0, 1e-6);
}

TEST(ClosedForms, AgreeWithNumeric) { EXPECT_TRUE(verify::check_closed_forms(1, 5).passed); }

TEST(TomoExcess, FormsAgree) {
    Rng rng(13);
    EXPECT_NEAR(tomo_excess({1.0, 1.0}, StokesPoint(Eigen::Vector3d::Zero())), 0.0, 1e-14);
    for (int k = 0; k < 30; ++k) {
        const StokesPoint x(verify::random_in_ball(rng, 0.95));
        const double r = x.radius();
        for (const RotWeightSpec spec : {RotWeightSpec{1.0, 1.0}, RotWeightSpec{1.0, 1.0 / (1 - r * r)},
                                         RotWeightSpec{2.0, 0.5}}) {
            const double direct = c_tomo_closed(spec, x) - c_opt_closed(spec, r);
            EXPECT_NEAR(tomo_excess(spec, x), direct, 1e-9 * (1 + std::abs(direct)));
            EXPECT_NEAR(tomo_excess_form1(spec, x), direct, 1e-9 * (1 + std::abs(direct)));
            EXPECT_NEAR(tomo_excess_form2(spec, x), direct, 1e-9 * (1 + std::abs(direct)));
            EXPECT_GE(tomo_excess(spec, x), -1e-12);
        }
    }
}

TEST(TomoExcess, QfiWeightAlongDiagonal) {
    const Eigen::Vector3d v = Eigen::Vector3d::Ones().normalized();
    for (double r : {0.3, 0.7, 0.95}) {
        const double e = tomo_excess({1.0, 1.0 / (1 - r * r)}, StokesPoint(r * v));
        EXPECT_NEAR(e, 2 * std::pow(r, 4) / (1 - r * r), 1e-10);
    }
}

TEST(GillMassar, Examples) {
    const RMatrix j = qubit_qfi(StokesPoint(kX0));
    const Weight h(eye(3));
    EXPECT_NEAR(gm_lower_bound(j, h, 2), qcr_min_trace(j, h).bound, 1e-12);
    const MubFamily f = mub_bases(3);
    const RMatrix j3 = model_qfi(mub_derivatives({3, RVector::Zero(8)}, f));
    EXPECT_NEAR(gm_lower_bound(j3, Weight(j3), 3), 32.0, 1e-9);
}

TEST(Lemmas, AuxiliaryChecks) {
    EXPECT_TRUE(verify::check_observable_pvm(5, 20).passed);
    EXPECT_TRUE(verify::check_gill_massar(6, 30, 5).passed);
    EXPECT_TRUE(verify::check_convexity(7, 20).passed);
    EXPECT_TRUE(verify::check_lagrange(8, 9).passed);
}

TEST(Indicatrix, UnitCircleAndEllipse) {
    for (const auto &p : indicatrix_points(Weight(eye(3)), {0, 1}, 16)) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
    RMatrix h = eye(3);
    h(0, 0) = 4.0;
    const auto pts = indicatrix_points(Weight(h), {0, 1}, 4);
    EXPECT_NEAR(pts[0][0], 0.5, 1e-14);
    EXPECT_NEAR(pts[1][1], 1.0, 1e-14);
    for (const auto &p : indicatrix_points(Weight(h), {0, 1}, 37))
        EXPECT_NEAR(4 * p[0] * p[0] + p[1] * p[1], 1.0, 1e-12);
    EXPECT_THROW(indicatrix_points(Weight(h), {1, 1}, 4), Error);
}

TEST(Indicatrix, TomographyWeightIsTilted) {
    const Weight h = tomography_weight(StokesPoint(Eigen::Vector3d(0.5, 0.5, 0)));
    EXPECT_GT(std::abs(h.matrix()(0, 1)), 1e-3);
}

TEST(LagrangeOracle, MatchesClosedFormInOneDimension) {
    RMatrix s(1, 1);
    s(0, 0) = 2.5;
    EXPECT_NEAR(verify::lagrange_oracle(s), 2.5, 1e-12);
}
