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

#include "qest/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qest/errors.hpp"

namespace qest {

Weight::Weight(RMatrix h) : h_(std::move(h)) {
    if (h_.rows() != h_.cols() || h_.rows() == 0) {
        throw Error(ErrorKind::InvalidArgument, "weight must be a non-empty square matrix");
    }
    if (!h_.allFinite() || symmetry_defect(h_) > 1e-10 * (1.0 + h_.cwiseAbs().maxCoeff())) {
        throw Error(ErrorKind::InvalidArgument, "weight is not symmetric");
    }
    h_ = symmetric_part(h_);
    if (!(symmetric_eig(h_).values[0] > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "weight is not positive definite");
    }
}

RMatrix classical_fisher(const ModelDerivatives &d, const Povm &m) {
    if (d.hilbert_dim() != m.dim()) {
        throw Error(ErrorKind::DimMismatch, "model and POVM differ in Hilbert dimension");
    }
    const int n_params = d.param_count();
    RMatrix g = RMatrix::Zero(n_params, n_params);
    RVector grad(n_params);
    for (const auto &e : m.elements()) {
        const double p = trace_product_re(d.rho, e.op);
        for (int i = 0; i < n_params; ++i) grad[i] = trace_product_re(d.partials[i], e.op);
        if (p < 1e-14) {
            if (grad.squaredNorm() < 1e-20) continue;
            throw Error(ErrorKind::SingularOutcome,
                        "outcome '" + e.label + "' has vanishing probability but nonzero derivative");
        }
        g.noalias() += grad * grad.transpose() / p;
    }
    return symmetric_part(g);
}

RMatrix qubit_tomography_fisher(const StokesPoint &x) {
    RMatrix g = RMatrix::Zero(3, 3);
    for (int mu = 0; mu < 3; ++mu) g(mu, mu) = 1.0 / (3.0 * (1.0 - x[mu] * x[mu]));
    return g;
}

RMatrix hat_fisher(const RMatrix &g, const RMatrix &j, const RMatrix &u) {
    RMatrix inv_root;
    try {
        inv_root = pd_inv_sqrt(j);
    } catch (const Error &) {
        throw Error(ErrorKind::SingularInput, "quantum Fisher matrix is not positive definite");
    }
    return symmetric_part(u.transpose() * inv_root * g * inv_root * u);
}

double weighted_trace_inverse(const RMatrix &h, const RMatrix &g) {
    try {
        return (h * pd_inverse(g)).trace();
    } catch (const Error &) {
        throw Error(ErrorKind::SingularFisher, "Fisher matrix is not invertible");
    }
}

OptimalSolution qcr_min_trace(const RMatrix &j, const Weight &h, int hilbert_dim) {
    if (j.rows() != h.dim()) {
        throw Error(ErrorKind::DimMismatch, "weight and Fisher matrix differ in size");
    }
    RMatrix inv_root;
    try {
        inv_root = pd_inv_sqrt(j);
    } catch (const Error &) {
        throw Error(ErrorKind::SingularInput, "quantum Fisher matrix is not positive definite");
    }
    OptimalSolution sol;
    sol.r = psd_sqrt(symmetric_part(inv_root * h.matrix() * inv_root));
    const double trace_r = sol.r.trace();
    sol.bound = trace_r * trace_r;
    const RMatrix root = psd_sqrt(j);
    sol.fisher_target = symmetric_part(root * sol.r * root / trace_r);
    const auto eig = symmetric_eig(sol.r);
    sol.u = eig.vectors;
    sol.s = eig.values.cwiseMax(0.0);
    sol.probs = sol.s / sol.s.sum();
    sol.attainable = hilbert_dim == 2 && j.rows() <= 3;
    return sol;
}

OptimalSolution optimal_measurement(const ModelDerivatives &d, const RMatrix &j, const Weight &h) {
    if (d.hilbert_dim() != 2) {
        throw Error(ErrorKind::UnsupportedDimension,
                    "optimal measurements are constructed for qubits only");
    }
    const int n_params = d.param_count();
    if (n_params < 1 || n_params > 3 || j.rows() != n_params) {
        throw Error(ErrorKind::UnsupportedDimension, "qubit models have 1 to 3 parameters");
    }
    OptimalSolution sol = qcr_min_trace(j, h, 2);
    const RMatrix k = sol.u.transpose() * pd_inv_sqrt(j);

    std::vector<std::pair<double, Povm>> parts;
    double kept = 0.0;
    for (int i = 0; i < n_params; ++i) {
        CMatrix lhat = CMatrix::Zero(2, 2);
        for (int s = 0; s < n_params; ++s) lhat += k(i, s) * d.slds[s];
        lhat = hermitian_part(lhat);
        sol.rotated_slds.push_back(lhat);
        // S_i == 0 carries no Fisher information; drop the branch.
        if (sol.probs[i] <= 1e-15) continue;
        parts.emplace_back(sol.probs[i], pvm_from_observable(lhat));
        kept += sol.probs[i];
    }
    for (auto &part : parts) part.first /= kept;
    sol.measurement = randomize(parts);
    return sol;
}

std::vector<RVector> lu_estimator(const RVector &x, const ModelDerivatives &d, const Povm &m,
                                  const RMatrix &g) {
    if (x.size() != d.param_count() || g.rows() != d.param_count()) {
        throw Error(ErrorKind::DimMismatch, "parameter point does not match the model");
    }
    RMatrix g_inv;
    try {
        g_inv = pd_inverse(g);
    } catch (const Error &) {
        throw Error(ErrorKind::SingularFisher, "Fisher matrix is not invertible");
    }
    std::vector<RVector> out;
    out.reserve(m.size());
    RVector grad(d.param_count());
    for (const auto &e : m.elements()) {
        const double p = trace_product_re(d.rho, e.op);
        if (!(p > 0.0)) {
            throw Error(ErrorKind::SingularOutcome, "outcome '" + e.label + "' has zero probability");
        }
        for (int i = 0; i < d.param_count(); ++i) grad[i] = trace_product_re(d.partials[i], e.op) / p;
        out.push_back(x + g_inv * grad);
    }
    return out;
}

Weight tomography_weight(const StokesPoint &x) {
    RMatrix h(3, 3);
    for (int a = 0; a < 3; ++a) {
        const double da = 1.0 - x[a] * x[a];
        for (int b = 0; b < 3; ++b) {
            const double db = 1.0 - x[b] * x[b];
            h(a, b) = a == b ? 1.0 / da : -x[a] * x[b] / (da * db);
        }
    }
    return Weight(h);
}

FisherWeight weight_from_fisher(const RMatrix &f, const RMatrix &j, double k) {
    if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale k must be positive");
    RMatrix j_inv;
    try {
        j_inv = pd_inverse(j);
        (void)pd_inverse(f);
    } catch (const Error &) {
        throw Error(ErrorKind::SingularInput, "F and J must be positive definite");
    }
    const double tr = (j_inv * f).trace();
    return {Weight(symmetric_part(k * f * j_inv * f)), std::abs(tr - 1.0) <= 1e-9, tr};
}

Weight rot_weight(const RotWeightSpec &spec, const StokesPoint &x) {
    if (!(spec.f > 0.0) || !(spec.g > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "rotational weight needs f > 0 and g > 0");
    }
    const double r2 = x.vec().squaredNorm();
    RMatrix h = spec.f * RMatrix::Identity(3, 3);
    if (r2 > 0.0) h += (spec.g - spec.f) * x.vec() * x.vec().transpose() / r2;
    return Weight(h);
}

double c_opt_closed(const RotWeightSpec &spec, double r) {
    const double v = 2.0 * std::sqrt(spec.f) + std::sqrt((1.0 - r * r) * spec.g);
    return v * v;
}

double anisotropy(const StokesPoint &x) {
    const double r2 = x.vec().squaredNorm();
    if (r2 == 0.0) return 0.0;
    return 1.0 - x.vec().array().pow(4).sum() / (r2 * r2);
}

double c_tomo_closed(const RotWeightSpec &spec, const StokesPoint &x) {
    const double r2 = x.vec().squaredNorm();
    return 3.0 * (2.0 * spec.f + (1.0 - r2) * spec.g) +
           3.0 * anisotropy(x) * r2 * (spec.g - spec.f);
}

double tomo_excess(const RotWeightSpec &spec, const StokesPoint &x) {
    return c_tomo_closed(spec, x) - c_opt_closed(spec, x.radius());
}

double tomo_excess_form1(const RotWeightSpec &spec, const StokesPoint &x) {
    const double r2 = x.vec().squaredNorm();
    const double a = std::sqrt((1.0 - r2) * spec.g) - std::sqrt(spec.f);
    return 2.0 * a * a + 3.0 * r2 * (spec.g - spec.f) * anisotropy(x);
}

double tomo_excess_form2(const RotWeightSpec &spec, const StokesPoint &x) {
    const double r2 = x.vec().squaredNorm();
    const double a = std::sqrt((1.0 - r2) * spec.f) - std::sqrt(spec.g);
    return 2.0 * a * a + 3.0 * r2 * (spec.f - spec.g) * (2.0 / 3.0 - anisotropy(x));
}

double gm_lower_bound(const RMatrix &j, const Weight &h, int q) {
    if (q < 2) throw Error(ErrorKind::UnsupportedDimension, "Hilbert dimension must be >= 2");
    return qcr_min_trace(j, h, q).bound / double(q - 1);
}

std::vector<Eigen::Vector2d> indicatrix_points(const Weight &h, std::pair<int, int> plane, int n) {
    const auto [a, b] = plane;
    if (a < 0 || b < 0 || a >= h.dim() || b >= h.dim() || a == b) {
        throw Error(ErrorKind::InvalidArgument, "indicatrix plane must name two distinct axes");
    }
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "indicatrix needs n >= 1");
    std::vector<Eigen::Vector2d> out;
    out.reserve(n);
    const RMatrix &m = h.matrix();
    for (int k = 0; k < n; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / n;
        const double c = std::cos(phi), s = std::sin(phi);
        const double quad = c * c * m(a, a) + 2.0 * c * s * m(a, b) + s * s * m(b, b);
        out.emplace_back(c / std::sqrt(quad), s / std::sqrt(quad));
    }
    return out;
}

}  // namespace qest
