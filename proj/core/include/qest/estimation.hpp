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

// Fisher-information bounds for qubit (and higher-dimensional) estimation:
// classical Fisher information of a POVM, the weighted quantum Cramer-Rao
// minimum (Tr R)^2, the random measurement attaining it, and the closed forms
// for rotationally symmetric weights.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qest/matrix.hpp"
#include "qest/measurement.hpp"
#include "qest/state_model.hpp"

namespace qest {

/// Real symmetric positive-definite d x d weight.
class Weight {
  public:
    /// Throws InvalidArgument if h is not symmetric (1e-10) or not PD.
    explicit Weight(RMatrix h);

    const RMatrix &matrix() const { return h_; }
    int dim() const { return static_cast<int>(h_.rows()); }

  private:
    RMatrix h_;
};

/// g_ij = sum_n (Tr d_i rho M_n)(Tr d_j rho M_n) / Tr rho M_n.
/// Outcomes with p_n < 1e-14 are skipped when their derivatives vanish
/// (|.| < 1e-20 in the numerator); otherwise throws SingularOutcome.
RMatrix classical_fisher(const ModelDerivatives &d, const Povm &m);

/// Closed form of the tomography Fisher matrix, diag(1/(1 - (x^mu)^2)) / 3.
RMatrix qubit_tomography_fisher(const StokesPoint &x);

/// U^T J^{-1/2} g J^{-1/2} U.
RMatrix hat_fisher(const RMatrix &g, const RMatrix &j, const RMatrix &u);

/// Tr H g^{-1}. Throws SingularFisher when g is not PD.
double weighted_trace_inverse(const RMatrix &h, const RMatrix &g);

struct OptimalSolution {
    double bound = 0.0;        // (Tr R)^2
    RMatrix r;                 // sqrt(J^{-1/2} H J^{-1/2})
    RMatrix u;                 // R = U diag(s) U^T
    RVector s;
    RVector probs;             // s / sum(s)
    RMatrix fisher_target;     // sqrt(J) R sqrt(J) / Tr R
    bool attainable = false;   // known to be attained (qubit, d <= 3)
    std::vector<CMatrix> rotated_slds;  // L-hat^i; filled by optimal_measurement
    std::optional<Povm> measurement;
};

/// Bound part of the solution: R, its diagonalization and the target Fisher
/// matrix. attainable is set only for hilbert_dim == 2 and d <= 3.
OptimalSolution qcr_min_trace(const RMatrix &j, const Weight &h, int hilbert_dim = 2);

/// Random measurement p_1 M^(1) (+) ... (+) p_d M^(d) where M^(i) is the PVM of
/// L-hat^i = sum_k (U^T J^{-1/2})_{ik} L_k. Branches with p_i == 0 are dropped.
/// Qubit models only (UnsupportedDimension otherwise).
OptimalSolution optimal_measurement(const ModelDerivatives &d, const RMatrix &j, const Weight &h);

/// Locally unbiased estimator at x saturating g^{-1}:
/// theta(n) = x + g^{-1} grad log p_n. One vector per outcome.
std::vector<RVector> lu_estimator(const RVector &x, const ModelDerivatives &d, const Povm &m,
                                  const RMatrix &g);

/// The unique (up to scale) weight for which tomography is optimal.
Weight tomography_weight(const StokesPoint &x);

struct FisherWeight {
    Weight weight;
    bool feasible;          // |Tr J^{-1} F - 1| <= 1e-9
    double trace_jinv_f;
};

/// k F J^{-1} F, the only weight whose optimal Fisher matrix is F (when feasible).
FisherWeight weight_from_fisher(const RMatrix &f, const RMatrix &j, double k = 1.0);

/// Transverse (f) and radial (g) eigenvalues of a rotationally symmetric weight.
struct RotWeightSpec {
    double f = 1.0;
    double g = 1.0;
};

/// f I + (g - f) |x><x| / r^2; f I at the origin.
Weight rot_weight(const RotWeightSpec &spec, const StokesPoint &x);

/// (2 sqrt(f) + sqrt((1 - r^2) g))^2
double c_opt_closed(const RotWeightSpec &spec, double r);

/// t = 1 - sum (x^mu)^4 / r^4, in [0, 2/3]; 0 at the origin.
double anisotropy(const StokesPoint &x);

/// 3 (2f + (1 - r^2) g) + 3 t r^2 (g - f)
double c_tomo_closed(const RotWeightSpec &spec, const StokesPoint &x);

/// c_tomo_closed - c_opt_closed.
double tomo_excess(const RotWeightSpec &spec, const StokesPoint &x);
/// 2 (sqrt((1-r^2) g) - sqrt(f))^2 + 3 r^2 (g - f) t
double tomo_excess_form1(const RotWeightSpec &spec, const StokesPoint &x);
/// 2 (sqrt((1-r^2) f) - sqrt(g))^2 + 3 r^2 (f - g) (2/3 - t)
double tomo_excess_form2(const RotWeightSpec &spec, const StokesPoint &x);

/// (Tr sqrt(J^{-1/2} H J^{-1/2}))^2 / (q - 1): a lower bound on Tr H g(M)^{-1}
/// over every POVM in dimension q. Equal to the attained minimum for q = 2.
double gm_lower_bound(const RMatrix &j, const Weight &h, int q);

/// Points v = u / sqrt(u^T H u) for u = cos(phi) e_a + sin(phi) e_b,
/// phi = 2 pi k / n. plane holds 0-based axis indices.
std::vector<Eigen::Vector2d> indicatrix_points(const Weight &h, std::pair<int, int> plane, int n);

}  // namespace qest
