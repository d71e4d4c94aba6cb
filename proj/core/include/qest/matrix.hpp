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

#pragma once

// Small dense linear algebra shared by every module. Dimensions never exceed
// 16 (Hilbert dimension <= 5, parameter count <= 24), so everything lives in
// dynamically sized Eigen matrices.

#include <complex>

#include <Eigen/Dense>

namespace qest {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSingularStateTol = 1e-12;
/// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kClusterGap = 1e-9;

struct HermitianEig {
    RVector values;   // ascending
    CMatrix vectors;  // columns are orthonormal eigenvectors
};

struct SymmetricEig {
    RVector values;   // ascending
    RMatrix vectors;
};

/// Largest entry of |a - a^dagger|.
double hermiticity_defect(const CMatrix &a);
double symmetry_defect(const RMatrix &a);

/// (a + a^dagger) / 2
CMatrix hermitian_part(const CMatrix &a);
RMatrix symmetric_part(const RMatrix &a);

/// Throws NotHermitian when the defect exceeds kHermitianTol. The input is
/// symmetrized before decomposition.
HermitianEig hermitian_eig(const CMatrix &a);
SymmetricEig symmetric_eig(const RMatrix &a);

/// Principal square root of a PSD matrix; eigenvalues in [-1e-10, 0) are
/// clamped to zero, anything more negative throws NotPsd.
CMatrix psd_sqrt(const CMatrix &a);
RMatrix psd_sqrt(const RMatrix &a);

/// Inverse of the principal square root of a positive definite matrix.
RMatrix pd_inv_sqrt(const RMatrix &a);

/// Inverse of a symmetric positive definite matrix via its eigendecomposition.
/// Throws SingularInput when the smallest eigenvalue is not positive.
RMatrix pd_inverse(const RMatrix &a);

/// Symmetric logarithmic derivative: the Hermitian L with
/// (L rho + rho L) / 2 = drho, solved in the eigenbasis of rho.
CMatrix solve_sld(const CMatrix &rho, const CMatrix &drho);

/// Real part of Tr(a b) without forming the product.
double trace_product_re(const CMatrix &a, const CMatrix &b);

}  // namespace qest
