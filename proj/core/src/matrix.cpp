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

#include "qest/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qest/errors.hpp"

namespace qest {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotPsd: return "NotPSD";
        case ErrorKind::SingularState: return "SingularState";
        case ErrorKind::OutOfBall: return "OutOfBall";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotState: return "NotState";
        case ErrorKind::BadDistribution: return "BadDistribution";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::SingularOutcome: return "SingularOutcome";
        case ErrorKind::SingularInput: return "SingularInput";
        case ErrorKind::SingularFisher: return "SingularFisher";
        case ErrorKind::OptFailed: return "OptFailed";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

double hermiticity_defect(const CMatrix &a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::DimMismatch, "matrix is not square");
    }
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double symmetry_defect(const RMatrix &a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::DimMismatch, "matrix is not square");
    }
    if (a.size() == 0) return 0.0;
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix &a) { return 0.5 * (a + a.adjoint()); }

RMatrix symmetric_part(const RMatrix &a) { return 0.5 * (a + a.transpose()); }

namespace {

template <class Matrix>
void check_finite(const Matrix &a) {
    if (!a.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
    }
}

template <class Matrix, class Result>
Result decompose(const Matrix &sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "self-adjoint eigensolver did not converge");
    }
    Result out{solver.eigenvalues(), solver.eigenvectors()};
    const double scale = 1.0 + sym.norm();
    const double err =
        (out.vectors * out.values.asDiagonal() * out.vectors.adjoint() - sym).norm();
    if (!(err <= 1e-9 * scale)) {
        throw Error(ErrorKind::NoConvergence,
                    "eigen reconstruction error " + std::to_string(err));
    }
    return out;
}

template <class Matrix>
Matrix sqrt_from_eig(const Matrix &vectors, const RVector &values) {
    RVector roots(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < -kPsdTol) {
            throw Error(ErrorKind::NotPsd,
                        "eigenvalue " + std::to_string(values[i]) + " is negative");
        }
        roots[i] = std::sqrt(std::max(values[i], 0.0));
    }
    return vectors * roots.asDiagonal() * vectors.adjoint();
}

}  // namespace

HermitianEig hermitian_eig(const CMatrix &a) {
    check_finite(a);
    const double defect = hermiticity_defect(a);
    if (defect > kHermitianTol) {
        throw Error(ErrorKind::NotHermitian, "defect " + std::to_string(defect));
    }
    return decompose<CMatrix, HermitianEig>(hermitian_part(a));
}

SymmetricEig symmetric_eig(const RMatrix &a) {
    check_finite(a);
    const double defect = symmetry_defect(a);
    if (defect > kHermitianTol * (1.0 + a.cwiseAbs().maxCoeff())) {
        throw Error(ErrorKind::NotHermitian, "asymmetry " + std::to_string(defect));
    }
    return decompose<RMatrix, SymmetricEig>(symmetric_part(a));
}

CMatrix psd_sqrt(const CMatrix &a) {
    const auto eig = hermitian_eig(a);
    return hermitian_part(sqrt_from_eig(eig.vectors, eig.values));
}

RMatrix psd_sqrt(const RMatrix &a) {
    const auto eig = symmetric_eig(a);
    return symmetric_part(sqrt_from_eig(eig.vectors, eig.values));
}

RMatrix pd_inv_sqrt(const RMatrix &a) {
    const auto eig = symmetric_eig(a);
    if (eig.values.size() == 0 || eig.values[0] <= 0.0) {
        throw Error(ErrorKind::SingularInput, "matrix is not positive definite");
    }
    const RVector inv_roots = eig.values.cwiseSqrt().cwiseInverse();
    return symmetric_part(eig.vectors * inv_roots.asDiagonal() * eig.vectors.transpose());
}

RMatrix pd_inverse(const RMatrix &a) {
    const auto eig = symmetric_eig(a);
    if (eig.values.size() == 0 || eig.values[0] <= 0.0) {
        throw Error(ErrorKind::SingularInput, "matrix is not positive definite");
    }
    return symmetric_part(eig.vectors * eig.values.cwiseInverse().asDiagonal() *
                          eig.vectors.transpose());
}

CMatrix solve_sld(const CMatrix &rho, const CMatrix &drho) {
    if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
        throw Error(ErrorKind::DimMismatch, "state and derivative differ in size");
    }
    if (hermiticity_defect(drho) > kHermitianTol) {
        throw Error(ErrorKind::NotHermitian, "derivative is not Hermitian");
    }
    if (std::abs(drho.trace()) > kHermitianTol) {
        throw Error(ErrorKind::InvalidArgument, "derivative is not traceless");
    }
    const auto eig = hermitian_eig(rho);
    if (eig.values[0] <= kSingularStateTol) {
        throw Error(ErrorKind::SingularState,
                    "min eigenvalue " + std::to_string(eig.values[0]));
    }
    const CMatrix &u = eig.vectors;
    CMatrix l = u.adjoint() * hermitian_part(drho) * u;
    for (Eigen::Index j = 0; j < l.rows(); ++j) {
        for (Eigen::Index k = 0; k < l.cols(); ++k) {
            l(j, k) *= 2.0 / (eig.values[j] + eig.values[k]);
        }
    }
    return hermitian_part(u * l * u.adjoint());
}

double trace_product_re(const CMatrix &a, const CMatrix &b) {
    // Tr(ab) = sum_ij a_ij b_ji
    return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace qest
