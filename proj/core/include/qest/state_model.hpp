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

#include <vector>

#include <Eigen/Dense>

#include "qest/matrix.hpp"

namespace qest {

class MubFamily;

/// Point of the qubit Stokes model, strictly inside the Bloch ball.
class StokesPoint {
  public:
    StokesPoint() : x_(Eigen::Vector3d::Zero()) {}
    /// Throws OutOfBall unless |x| < 1.
    explicit StokesPoint(const Eigen::Vector3d &x);
    StokesPoint(double x1, double x2, double x3) : StokesPoint(Eigen::Vector3d(x1, x2, x3)) {}

    const Eigen::Vector3d &vec() const { return x_; }
    double operator[](int mu) const { return x_[mu]; }
    double radius() const { return x_.norm(); }

  private:
    Eigen::Vector3d x_;
};

/// Pauli matrix sigma_{mu+1}, mu in {0,1,2}.
CMatrix pauli(int mu);

/// Density matrix, its coordinate derivatives, and the matching SLDs.
struct ModelDerivatives {
    CMatrix rho;
    std::vector<CMatrix> partials;
    std::vector<CMatrix> slds;

    int param_count() const { return static_cast<int>(partials.size()); }
    int hilbert_dim() const { return static_cast<int>(rho.rows()); }
};

/// Builds ModelDerivatives from a state and its partials, solving for each SLD.
ModelDerivatives derivatives_from_partials(CMatrix rho, std::vector<CMatrix> partials);

/// Largest residual |(L rho + rho L)/2 - drho| over all parameters.
double sld_residual(const ModelDerivatives &d);

/// (I + x . sigma) / 2
CMatrix qubit_state(const StokesPoint &x);

/// Closed-form SLDs L_mu = sigma_mu - x^mu (I - tau) / (2 det tau).
ModelDerivatives qubit_slds(const StokesPoint &x);

/// J = I + |x><x| / (1 - r^2), the inverse of I - |x><x|.
RMatrix qubit_qfi(const StokesPoint &x);

/// J_ij = Tr(d_i rho L_j), symmetrized.
RMatrix model_qfi(const ModelDerivatives &d);

/// Affine coordinates x_{alpha,i} (alpha = 0..q, i = 0..q-2) over a full set of
/// mutually unbiased bases. Flattened index = alpha * (q - 1) + i.
struct MubModelPoint {
    int q = 0;
    RVector coords;
};

int mub_param_count(int q);

/// I/q + sum x_{alpha,i} (|e_i^alpha><e_i^alpha| - I/q). Throws NotPositive if
/// the result is not strictly positive.
CMatrix mub_state(const MubModelPoint &p, const MubFamily &bases);

/// The constant partials |e_i^alpha><e_i^alpha| - I/q.
std::vector<CMatrix> mub_partials(const MubFamily &bases);

ModelDerivatives mub_derivatives(const MubModelPoint &p, const MubFamily &bases);

/// 4 (1 - Tr sqrt(sqrt(rho) sigma sqrt(rho))).
double bures_distance(const CMatrix &rho, const CMatrix &sigma);

/// Throws NotState unless a is Hermitian, unit trace and PSD.
void check_state(const CMatrix &a);

}  // namespace qest
