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

#include "qest/state_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qest/errors.hpp"
#include "qest/measurement.hpp"

namespace qest {

StokesPoint::StokesPoint(const Eigen::Vector3d &x) : x_(x) {
    if (!x.allFinite() || !(x.norm() < 1.0)) {
        throw Error(ErrorKind::OutOfBall, "|x| = " + std::to_string(x.norm()) + " is not < 1");
    }
}

CMatrix pauli(int mu) {
    using namespace std::complex_literals;
    CMatrix s(2, 2);
    switch (mu) {
        case 0: s << 0.0, 1.0, 1.0, 0.0; break;
        case 1: s << 0.0, -1.0i, 1.0i, 0.0; break;
        case 2: s << 1.0, 0.0, 0.0, -1.0; break;
        default: throw Error(ErrorKind::InvalidArgument, "Pauli index must be 0, 1 or 2");
    }
    return s;
}

ModelDerivatives derivatives_from_partials(CMatrix rho, std::vector<CMatrix> partials) {
    ModelDerivatives d{std::move(rho), std::move(partials), {}};
    d.slds.reserve(d.partials.size());
    for (const auto &p : d.partials) d.slds.push_back(solve_sld(d.rho, p));
    return d;
}

double sld_residual(const ModelDerivatives &d) {
    double worst = 0.0;
    for (std::size_t i = 0; i < d.partials.size(); ++i) {
        const CMatrix lhs = 0.5 * (d.slds[i] * d.rho + d.rho * d.slds[i]);
        worst = std::max(worst, (lhs - d.partials[i]).cwiseAbs().maxCoeff());
    }
    return worst;
}

CMatrix qubit_state(const StokesPoint &x) {
    CMatrix tau = CMatrix::Identity(2, 2);
    for (int mu = 0; mu < 3; ++mu) tau += x[mu] * pauli(mu);
    return 0.5 * tau;
}

ModelDerivatives qubit_slds(const StokesPoint &x) {
    ModelDerivatives d;
    d.rho = qubit_state(x);
    const double det = (1.0 - x.vec().squaredNorm()) / 4.0;
    const CMatrix complement = CMatrix::Identity(2, 2) - d.rho;
    for (int mu = 0; mu < 3; ++mu) {
        d.partials.push_back(0.5 * pauli(mu));
        d.slds.push_back(pauli(mu) - (x[mu] / (2.0 * det)) * complement);
    }
    return d;
}

RMatrix qubit_qfi(const StokesPoint &x) {
    const Eigen::Vector3d &v = x.vec();
    return RMatrix::Identity(3, 3) + v * v.transpose() / (1.0 - v.squaredNorm());
}

RMatrix model_qfi(const ModelDerivatives &d) {
    const int n = d.param_count();
    RMatrix j(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) j(a, b) = trace_product_re(d.partials[a], d.slds[b]);
    }
    return symmetric_part(j);
}

int mub_param_count(int q) { return (q + 1) * (q - 1); }

std::vector<CMatrix> mub_partials(const MubFamily &bases) {
    const int q = bases.dim();
    std::vector<CMatrix> out;
    out.reserve(mub_param_count(q));
    for (int alpha = 0; alpha <= q; ++alpha) {
        for (int i = 0; i < q - 1; ++i) {
            const CVector e = bases.vector(alpha, i);
            out.push_back(e * e.adjoint() - CMatrix::Identity(q, q) / double(q));
        }
    }
    return out;
}

namespace {

CMatrix mub_state_unchecked(const MubModelPoint &p, const std::vector<CMatrix> &partials) {
    CMatrix tau = CMatrix::Identity(p.q, p.q) / double(p.q);
    for (Eigen::Index k = 0; k < p.coords.size(); ++k) tau += p.coords[k] * partials[k];
    return hermitian_part(tau);
}

void check_mub_point(const MubModelPoint &p, const MubFamily &bases) {
    if (p.q != bases.dim() || p.coords.size() != mub_param_count(p.q)) {
        throw Error(ErrorKind::DimMismatch, "MUB coordinates do not match the family");
    }
}

}  // namespace

CMatrix mub_state(const MubModelPoint &p, const MubFamily &bases) {
    check_mub_point(p, bases);
    CMatrix tau = mub_state_unchecked(p, mub_partials(bases));
    const double min_eig = hermitian_eig(tau).values[0];
    if (!(min_eig > 0.0)) {
        throw Error(ErrorKind::NotPositive, "min eigenvalue " + std::to_string(min_eig));
    }
    return tau;
}

ModelDerivatives mub_derivatives(const MubModelPoint &p, const MubFamily &bases) {
    CMatrix rho = mub_state(p, bases);
    return derivatives_from_partials(std::move(rho), mub_partials(bases));
}

void check_state(const CMatrix &a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw Error(ErrorKind::NotState, "state must be a non-empty square matrix");
    }
    if (hermiticity_defect(a) > kHermitianTol) {
        throw Error(ErrorKind::NotState, "state is not Hermitian");
    }
    if (std::abs(a.trace() - 1.0) > 1e-9) {
        throw Error(ErrorKind::NotState, "state does not have unit trace");
    }
    if (hermitian_eig(a).values[0] < -kPsdTol) {
        throw Error(ErrorKind::NotState, "state is not positive semidefinite");
    }
}

double bures_distance(const CMatrix &rho, const CMatrix &sigma) {
    check_state(rho);
    check_state(sigma);
    if (rho.rows() != sigma.rows()) {
        throw Error(ErrorKind::DimMismatch, "states differ in dimension");
    }
    const CMatrix root = psd_sqrt(rho);
    const auto eig = hermitian_eig(hermitian_part(root * sigma * root));
    double fidelity_root = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double v = eig.values[i];
        if (v < -1e-12) {
            throw Error(ErrorKind::NotState, "negative eigenvalue in fidelity operator");
        }
        fidelity_root += std::sqrt(std::max(v, 0.0));
    }
    return std::max(0.0, 4.0 * (1.0 - fidelity_root));
}

}  // namespace qest
