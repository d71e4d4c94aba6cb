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

#include "qest/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qest/errors.hpp"
#include "qest/estimation.hpp"
#include "qest/simulator.hpp"
#include "qest/state_model.hpp"

namespace qest::verify {

namespace {

CheckResult make(std::string name, double metric, double tolerance, bool passed,
                 std::string detail = {}) {
    return {std::move(name), passed, metric, tolerance, std::move(detail)};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

RMatrix random_orthogonal(Rng &rng, int d) {
    RMatrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
    Eigen::HouseholderQR<RMatrix> qr(a);
    return qr.householderQ() * RMatrix::Identity(d, d);
}

double max_abs(const RMatrix &a) { return a.cwiseAbs().maxCoeff(); }

// Off-axis point: every |x^mu| > 0.05 and the three magnitudes distinct.
Eigen::Vector3d random_off_axis(Rng &rng, double r_max) {
    while (true) {
        const Eigen::Vector3d x = random_in_ball(rng, r_max);
        const Eigen::Vector3d a = x.cwiseAbs();
        if (a.minCoeff() <= 0.05) continue;
        if (std::abs(a[0] - a[1]) < 0.01 || std::abs(a[1] - a[2]) < 0.01 ||
            std::abs(a[0] - a[2]) < 0.01)
            continue;
        return x;
    }
}

}  // namespace

Eigen::Vector3d random_unit(Rng &rng) {
    Eigen::Vector3d v;
    do {
        v = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
    } while (v.norm() < 1e-8);
    return v.normalized();
}

Eigen::Vector3d random_in_ball(Rng &rng, double r_max) {
    return random_unit(rng) * (r_max * std::cbrt(rng.uniform()));
}

Eigen::Matrix3d random_rotation(Rng &rng) {
    Eigen::Matrix3d q = random_orthogonal(rng, 3);
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

RMatrix random_pd(Rng &rng, int d, double lo, double hi) {
    const RMatrix q = random_orthogonal(rng, d);
    RVector eig(d);
    for (int i = 0; i < d; ++i) eig[i] = lo + (hi - lo) * rng.uniform();
    return symmetric_part(q * eig.asDiagonal() * q.transpose());
}

Povm random_povm(Rng &rng, int q, int outcomes, bool rank_one) {
    if (rank_one && outcomes < q) throw Error(ErrorKind::InvalidArgument, "rank-one POVM needs outcomes >= q");
    std::vector<CMatrix> raw;
    CMatrix sum = CMatrix::Zero(q, q);
    for (int k = 0; k < outcomes; ++k) {
        CMatrix b(q, rank_one ? 1 : q);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) b(i, j) = Complex(rng.normal(), rng.normal());
        raw.push_back(b * b.adjoint());
        sum += raw.back();
    }
    const auto eig = hermitian_eig(sum);
    const CMatrix inv_root =
        eig.vectors * eig.values.cwiseSqrt().cwiseInverse().asDiagonal() * eig.vectors.adjoint();
    std::vector<PovmElement> elements;
    for (int k = 0; k < outcomes; ++k) {
        elements.push_back({std::to_string(k), hermitian_part(inv_root * raw[k] * inv_root)});
    }
    return Povm(std::move(elements));
}

RVector random_mub_coords(Rng &rng, const MubFamily &f, double scale) {
    const int n = mub_param_count(f.dim());
    const auto partials = mub_partials(f);
    while (true) {
        RVector c(n);
        for (int i = 0; i < n; ++i) c[i] = scale * (2.0 * rng.uniform() - 1.0);
        CMatrix tau = CMatrix::Identity(f.dim(), f.dim()) / double(f.dim());
        for (int i = 0; i < n; ++i) tau += c[i] * partials[i];
        if (hermitian_eig(tau).values[0] >= 0.2 / f.dim()) return c;
    }
}

double lagrange_oracle(const RMatrix &s, RMatrix *minimizer, int max_iterations) {
    const int d = static_cast<int>(s.rows());
    const RMatrix id = RMatrix::Identity(d, d);
    auto objective = [&](const RMatrix &g) {
        Eigen::LLT<RMatrix> llt(g);
        if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
        return (s * llt.solve(id)).trace();
    };
    auto projected_gradient = [&](const RMatrix &g) {
        const RMatrix inv = Eigen::LLT<RMatrix>(g).solve(id);
        RMatrix grad = -inv * s * inv;
        grad = 0.5 * (grad + grad.transpose());
        return RMatrix(grad - (grad.trace() / d) * id);
    };
    RMatrix g = id / double(d);
    double value = objective(g);
    RMatrix p = projected_gradient(g);
    double step = 0.1;
    for (int it = 0; it < max_iterations; ++it) {
        const double pn2 = p.squaredNorm();
        if (pn2 < 1e-26) break;
        double trial_step = step;
        RMatrix next;
        double next_value = std::numeric_limits<double>::infinity();
        while (trial_step > 1e-20) {
            next = g - trial_step * p;
            next_value = objective(next);
            if (next_value <= value - 1e-4 * trial_step * pn2) break;
            trial_step *= 0.5;
        }
        if (!(next_value < value)) break;
        const RMatrix next_p = projected_gradient(next);
        // Barzilai-Borwein step for the next iteration.
        const RMatrix dg = next - g, dp = next_p - p;
        const double denom = (dg.array() * dp.array()).sum();
        step = denom > 0 ? dg.squaredNorm() / denom : 2.0 * trial_step;
        g = next;
        value = next_value;
        p = next_p;
    }
    if (minimizer) *minimizer = g;
    return value;
}

CheckResult check_closed_forms(std::uint64_t seed, int directions) {
    Rng rng(seed);
    const Povm tomo = qubit_tomography_povm();
    const std::pair<const char *, int> weights[] = {{"I", 0}, {"J", 1}, {"(2,0.5)", 2}};
    double worst = 0.0;
    std::string where;
    for (int dir = 0; dir < directions; ++dir) {
        const Eigen::Vector3d v = random_unit(rng);
        for (int k = 0; k < 20; ++k) {
            const double r = 0.05 * k;
            const StokesPoint x(r * v);
            const RMatrix j = qubit_qfi(x);
            const RMatrix g_tomo = classical_fisher(qubit_slds(x), tomo);
            for (const auto &[label, which] : weights) {
                // f != g has no rotationally symmetric value at the origin.
                if (which == 2 && k == 0) continue;
                RotWeightSpec spec{1.0, 1.0};
                if (which == 1) spec = {1.0, 1.0 / (1.0 - r * r)};
                if (which == 2) spec = {2.0, 0.5};
                const Weight h = rot_weight(spec, x);
                const double e1 = std::abs(c_opt_closed(spec, r) - qcr_min_trace(j, h).bound);
                const double e2 =
                    std::abs(c_tomo_closed(spec, x) - weighted_trace_inverse(h.matrix(), g_tomo));
                if (std::max(e1, e2) > worst) {
                    worst = std::max(e1, e2);
                    where = std::string("H=") + label + " r=" + fmt(r);
                }
            }
        }
    }
    return make("closed-form vs numeric c and c^(T)", worst, 1e-8, worst <= 1e-8,
                "worst at " + where);
}

CheckResult check_radial_limits() {
    const Eigen::Vector3d v = Eigen::Vector3d::Ones().normalized();
    const RotWeightSpec identity{1.0, 1.0};
    const double r_c = 1.0 - 1e-7;
    const StokesPoint near_c(r_c * v);
    const StokesPoint near(0.9999 * v);
    const double c_id = c_opt_closed(identity, r_c);
    const double ct_id = c_tomo_closed(identity, near);
    const double c_id_numeric = qcr_min_trace(qubit_qfi(near_c), rot_weight(identity, near_c)).bound;
    bool ok = c_id >= 4.0 && c_id <= 4.01 && ct_id >= 5.99 && ct_id <= 6.01 &&
              std::abs(c_id_numeric - c_id) <= 1e-6;

    double worst_nine = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double r = 0.01 * k;
        const StokesPoint x(r * v);
        const RotWeightSpec qfi{1.0, 1.0 / (1.0 - r * r)};
        worst_nine = std::max(worst_nine, std::abs(c_opt_closed(qfi, r) - 9.0));
        worst_nine = std::max(worst_nine, std::abs(qcr_min_trace(qubit_qfi(x), Weight(qubit_qfi(x))).bound - 9.0));
    }
    const double r_div = 0.995;
    const double ct_div = c_tomo_closed({1.0, 1.0 / (1.0 - r_div * r_div)}, StokesPoint(r_div * v));
    ok = ok && worst_nine <= 1e-8 && ct_div > 100.0;
    return make("limits along (1,1,1): H=I -> (4, 6); H=J -> 9 and divergence", worst_nine, 1e-8, ok,
                "H=I c(1-1e-7)=" + fmt(c_id) + " numeric " + fmt(c_id_numeric) + " cT(0.9999)=" + fmt(ct_id) + "; H=J max|c-9|=" + fmt(worst_nine) +
                    " cT(0.995)=" + fmt(ct_div));
}

CheckResult check_tomography_optimality(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const Povm tomo = qubit_tomography_povm();
    double worst_equal = 0.0;
    double min_rel_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cases; ++k) {
        const StokesPoint x(random_in_ball(rng, 0.95));
        const RMatrix g = classical_fisher(qubit_slds(x), tomo);
        const Weight h = tomography_weight(x);
        const double bound = qcr_min_trace(qubit_qfi(x), h).bound;
        worst_equal = std::max(worst_equal, std::abs(weighted_trace_inverse(h.matrix(), g) - bound));
    }
    for (int k = 0; k < cases; ++k) {
        const StokesPoint x(random_off_axis(rng, 0.95));
        const RMatrix g = classical_fisher(qubit_slds(x), tomo);
        const Weight h(RMatrix::Identity(3, 3));
        const double bound = qcr_min_trace(qubit_qfi(x), h).bound;
        min_rel_gap = std::min(min_rel_gap, (weighted_trace_inverse(h.matrix(), g) - bound) / bound);
    }
    const bool ok = worst_equal <= 1e-8 && min_rel_gap > 1e-6;
    return make("tomography optimal iff H ~ H^(T)", worst_equal, 1e-8, ok,
                "max |TrHg^-1 - (TrR)^2| for H^(T) = " + fmt(worst_equal) +
                    "; min relative excess for H=I = " + fmt(min_rel_gap));
}

CheckResult check_optimal_attainment(std::uint64_t seed, int cases) {
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < cases; ++k) {
        const StokesPoint x(random_in_ball(rng, 0.95));
        const Weight h(random_pd(rng, 3));
        const auto d = qubit_slds(x);
        const RMatrix j = qubit_qfi(x);
        const auto sol = optimal_measurement(d, j, h);
        worst = std::max(worst, max_abs(classical_fisher(d, *sol.measurement) - sol.fisher_target));
    }
    return make("optimal random measurement attains sqrt(J) R sqrt(J) / Tr R", worst, 1e-8,
                worst <= 1e-8);
}

CheckResult check_observable_pvm(std::uint64_t seed, int cases) {
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < cases; ++k) {
        const StokesPoint x(random_in_ball(rng, 0.95));
        const Eigen::Vector3d v = random_unit(rng);
        const auto d = qubit_slds(x);
        const RMatrix j = qubit_qfi(x);
        const auto sol = qcr_min_trace(j, Weight(random_pd(rng, 3)));
        const RMatrix kmat = sol.u.transpose() * pd_inv_sqrt(j);
        CMatrix lv = CMatrix::Zero(2, 2);
        for (int i = 0; i < 3; ++i)
            for (int s = 0; s < 3; ++s) lv += v[i] * kmat(i, s) * d.slds[s];
        const Povm m = pvm_from_observable(hermitian_part(lv));
        const RMatrix ghat = hat_fisher(classical_fisher(d, m), j, sol.u);
        worst = std::max(worst, max_abs(ghat - v * v.transpose()));
    }
    return make("hat g of the PVM of L_v equals |v><v|", worst, 1e-8, worst <= 1e-8);
}

CheckResult check_gill_massar(std::uint64_t seed, int povms, int points) {
    Rng rng(seed);
    double worst_excess = -std::numeric_limits<double>::infinity();
    std::string detail;
    for (int q : {2, 3, 4}) {
        double dim_max = 0.0;
        for (int pt = 0; pt < points; ++pt) {
            ModelDerivatives d;
            if (q == 2) {
                d = qubit_slds(StokesPoint(random_in_ball(rng, 0.95)));
            } else {
                const MubFamily f = mub_bases(q);
                d = mub_derivatives({q, random_mub_coords(rng, f)}, f);
            }
            const RMatrix j = model_qfi(d);
            const RMatrix u = RMatrix::Identity(j.rows(), j.cols());
            for (int k = 0; k < povms / points + (pt < povms % points ? 1 : 0); ++k) {
                // Alternate full-rank and rank-one POVMs; the latter attain q - 1.
                const bool rank_one = k % 2 == 1;
                const int outcomes = q + static_cast<int>(rng.uniform() * (2 * q * q));
                const RMatrix ghat =
                    hat_fisher(classical_fisher(d, random_povm(rng, q, outcomes, rank_one)), j, u);
                dim_max = std::max(dim_max, ghat.trace());
                worst_excess = std::max(worst_excess, ghat.trace() - (q - 1));
            }
        }
        detail += "q=" + std::to_string(q) + " max Tr ghat=" + fmt(dim_max) + "; ";
    }
    return make("Tr hat g <= dim H - 1 over random POVMs", worst_excess, 1e-9, worst_excess <= 1e-9,
                detail);
}

CheckResult check_convexity(std::uint64_t seed, int cases) {
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < cases; ++k) {
        const int q = k % 2 == 0 ? 2 : 3;
        ModelDerivatives d;
        if (q == 2) {
            d = qubit_slds(StokesPoint(random_in_ball(rng, 0.9)));
        } else {
            const MubFamily f = mub_bases(3);
            d = mub_derivatives({3, random_mub_coords(rng, f)}, f);
        }
        const Povm m1 = random_povm(rng, q, 3 + k % 5);
        const Povm m2 = random_povm(rng, q, 2 + k % 7);
        const double p = rng.uniform();
        const RMatrix lhs = classical_fisher(d, randomize({{p, m1}, {1.0 - p, m2}}));
        const RMatrix rhs = p * classical_fisher(d, m1) + (1.0 - p) * classical_fisher(d, m2);
        worst = std::max(worst, max_abs(lhs - rhs));
    }
    return make("Fisher information is affine under randomization", worst, 1e-10, worst <= 1e-10);
}

CheckResult check_lagrange(std::uint64_t seed, int cases) {
    Rng rng(seed);
    double worst = 0.0, worst_arg = 0.0;
    for (int k = 0; k < cases; ++k) {
        const int d = 1 + k % 3;
        const RMatrix s = random_pd(rng, d);
        RMatrix g;
        const double oracle = lagrange_oracle(s, &g);
        const RMatrix root = psd_sqrt(s);
        const double closed = root.trace() * root.trace();
        worst = std::max(worst, std::abs(oracle - closed));
        worst_arg = std::max(worst_arg, max_abs(g - root / root.trace()));
    }
    return make("min Tr S G^-1 over Tr G = 1 equals (Tr sqrt S)^2", worst, 1e-5,
                worst <= 1e-5 && worst_arg <= 1e-3,
                "max |argmin - sqrt(S)/Tr sqrt(S)| = " + fmt(worst_arg));
}

CheckResult check_tomography_identity(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const Povm tomo = qubit_tomography_povm();
    double worst_trace = 0.0, worst_weight = 0.0;
    for (int k = 0; k < cases; ++k) {
        const StokesPoint x(random_in_ball(rng, 0.95));
        const RMatrix g = classical_fisher(qubit_slds(x), tomo);
        const RMatrix j_inv = RMatrix::Identity(3, 3) - x.vec() * x.vec().transpose();
        worst_trace = std::max(worst_trace, std::abs((j_inv * g).trace() - 1.0));
        worst_weight =
            std::max(worst_weight, max_abs(tomography_weight(x).matrix() - 9.0 * g * j_inv * g));
    }
    return make("Tr J^-1 g(M^(T)) = 1 and H^(T) = 9 g J^-1 g", worst_trace, 1e-10,
                worst_trace <= 1e-10 && worst_weight <= 1e-9,
                "max |H^(T) - 9 g J^-1 g| = " + fmt(worst_weight));
}

CheckResult check_bures_expansion(std::uint64_t seed, int cases) {
    Rng rng(seed);
    double worst_scaled = 0.0;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cases; ++k) {
        const StokesPoint x(random_in_ball(rng, 0.9));
        const Eigen::Vector3d dx = 1e-3 * random_unit(rng);
        const RMatrix j = qubit_qfi(x);
        const double scale = symmetric_eig(j).values.maxCoeff();
        const CMatrix rho = qubit_state(x);
        auto residual = [&](const Eigen::Vector3d &step) {
            const double b = bures_distance(rho, qubit_state(StokesPoint(x.vec() + step)));
            return std::abs(b - 0.5 * step.dot(j * step));
        };
        const double full = residual(dx);
        const double half = residual(0.5 * dx);
        worst_scaled = std::max(worst_scaled, full / (1e-7 * scale));
        min_ratio = std::min(min_ratio, full / half);
    }
    return make("B(tau_x, tau_x+dx) = dx^T J dx / 2 + O(|dx|^3)", worst_scaled, 1.0,
                worst_scaled <= 1.0 && min_ratio >= 6.0,
                "max residual / (1e-7 |J|) = " + fmt(worst_scaled) +
                    "; min halving ratio = " + fmt(min_ratio));
}

CheckResult check_mub_suite() {
    double worst_overlap = 0.0;
    for (int q = 2; q <= 5; ++q) {
        const MubFamily f = mub_bases(q);
        worst_overlap = std::max({worst_overlap, f.unbiasedness_defect(), f.orthonormality_defect()});
    }
    bool ok = worst_overlap <= 1e-9;
    std::string detail = "overlap defect " + fmt(worst_overlap) + "; ";
    const double grid[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999};
    for (int q : {3, 4}) {
        const MubFamily f = mub_bases(q);
        const Povm tomo = mub_tomography_povm(f);
        double prev = -1.0, c99 = 0.0, c999 = 0.0;
        bool rows_ok = true;
        for (double r : grid) {
            RVector coords = RVector::Zero(mub_param_count(q));
            coords[0] = r;
            const auto d = mub_derivatives({q, coords}, f);
            const RMatrix j = model_qfi(d);
            const double ct = weighted_trace_inverse(j, classical_fisher(d, tomo));
            const double cgm = gm_lower_bound(j, Weight(j), q);
            if (ct < cgm * (1.0 - 1e-9)) rows_ok = false;
            if (r > 0.0 && !(ct > prev)) rows_ok = false;
            prev = ct;
            if (r == 0.99) c99 = ct;
            if (r == 0.999) c999 = ct;
        }
        const bool growing = c999 > 5.0 * c99;
        ok = ok && rows_ok && growing;
        detail += "q=" + std::to_string(q) + " cT(0.999)/cT(0.99)=" + fmt(c999 / c99) +
                  (rows_ok ? " rows ok; " : " row violation; ");
    }
    return make("MUB overlaps and radial sweep (cT >= cGM, cT diverges)", worst_overlap, 1e-9, ok,
                detail);
}

std::vector<CheckResult> check_mc_smoke(std::uint64_t seed, int threads) {
    RunConfig cfg;
    cfg.x0 = Eigen::Vector3d(0.55, 0.55, 0.55);
    cfg.weight = WeightSelector::qfi();
    cfg.m_max = 1000;
    cfg.reps = 50;
    cfg.seed = seed;
    const McSummary tomo = monte_carlo(cfg, EstimatorKind::Tomography, threads);
    const McSummary adapt = monte_carlo(cfg, EstimatorKind::Adaptive, threads);
    const double t_mean = tomo.mean_bures.back(), t_se = tomo.se_bures.back();
    const double a_mean = adapt.mean_bures.back(), a_se = adapt.se_bures.back();
    std::vector<CheckResult> out;
    const double t_dev = std::abs(t_mean - tomo.c_tomo) / t_se;
    out.push_back(make("mc-smoke: tomography 2mB near c^(T)", t_dev, 5.0, t_dev <= 5.0,
                       "mean " + fmt(t_mean) + " se " + fmt(t_se) + " c^(T) " + fmt(tomo.c_tomo)));
    const double a_dev = std::abs(a_mean - adapt.c_opt) / a_se;
    out.push_back(make("mc-smoke: adaptive 2mB near c", a_dev, 4.0, a_dev <= 4.0,
                       "mean " + fmt(a_mean) + " se " + fmt(a_se) + " c " + fmt(adapt.c_opt)));
    const double gap = (t_mean - a_mean) / std::hypot(t_se, a_se);
    out.push_back(make("mc-smoke: adaptive beats tomography", gap, 3.0, gap > 3.0,
                       "difference in standard errors"));
    return out;
}

std::vector<CheckResult> run_suite(const std::string &suite, std::uint64_t seed, int threads) {
    std::vector<CheckResult> out;
    const bool all = suite == "all";
    if (!all && suite != "lemmas" && suite != "bounds" && suite != "mc-smoke") {
        throw Error(ErrorKind::InvalidConfig, "unknown suite '" + suite + "'");
    }
    if (all || suite == "lemmas") {
        out.push_back(check_observable_pvm(seed));
        out.push_back(check_gill_massar(seed + 1));
        out.push_back(check_convexity(seed + 2));
        out.push_back(check_lagrange(seed + 3));
        out.push_back(check_tomography_optimality(seed + 4));
        out.push_back(check_tomography_identity(seed + 5));
        out.push_back(check_optimal_attainment(seed + 6));
        out.push_back(check_bures_expansion(seed + 7));
    }
    if (all || suite == "bounds") {
        out.push_back(check_closed_forms(seed + 8));
        out.push_back(check_radial_limits());
        out.push_back(check_mub_suite());
    }
    if (all || suite == "mc-smoke") {
        for (auto &r : check_mc_smoke(seed, threads)) out.push_back(std::move(r));
    }
    return out;
}

std::string report_text(const std::vector<CheckResult> &results) {
    std::ostringstream os;
    int failed = 0;
    for (const auto &r : results) {
        os << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [metric " << fmt(r.metric)
           << ", tol " << fmt(r.tolerance) << "]";
        if (!r.detail.empty()) os << "  " << r.detail;
        os << '\n';
        if (!r.passed) ++failed;
    }
    os << results.size() - failed << "/" << results.size() << " checks passed\n";
    return os.str();
}

std::string report_json(const std::vector<CheckResult> &results, int indent) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto &r : results) {
        arr.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"metric", r.metric},
                       {"tolerance", r.tolerance},
                       {"detail", r.detail}});
        all = all && r.passed;
    }
    return nlohmann::json{{"passed", all}, {"checks", arr}}.dump(indent);
}

}  // namespace qest::verify
