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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qest/matrix.hpp"

namespace qest {

struct PovmElement {
    std::string label;
    CMatrix op;
};

/// Which branch of a random measurement an element came from.
struct Provenance {
    int branch = 0;
    double probability = 1.0;
};

/// Finite-outcome POVM. Construction validates completeness (sum = I within
/// 1e-9) and positivity (min eigenvalue >= -1e-10) of every element.
class Povm {
  public:
    explicit Povm(std::vector<PovmElement> elements,
                  std::optional<std::vector<Provenance>> provenance = std::nullopt);

    int dim() const { return dim_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<PovmElement> &elements() const { return elements_; }
    const PovmElement &operator[](std::size_t i) const { return elements_[i]; }
    const std::optional<std::vector<Provenance>> &provenance() const { return provenance_; }

    /// Largest entry of |sum_n M_n - I|.
    double completeness_defect() const;
    /// Smallest eigenvalue over all elements.
    double min_eigenvalue() const;

  private:
    int dim_ = 0;
    std::vector<PovmElement> elements_;
    std::optional<std::vector<Provenance>> provenance_;
};

/// Full set of q + 1 mutually unbiased bases; basis(alpha) holds the vectors
/// as columns.
class MubFamily {
  public:
    MubFamily(int q, std::vector<CMatrix> bases);

    int dim() const { return q_; }
    const std::vector<CMatrix> &bases() const { return bases_; }
    const CMatrix &basis(int alpha) const { return bases_.at(alpha); }
    CVector vector(int alpha, int i) const { return bases_.at(alpha).col(i); }

    /// Largest |<e_i|e_j> - delta_ij| within any basis.
    double orthonormality_defect() const;
    /// Largest ||<e_i^a|e_j^b>|^2 - 1/q| over a != b.
    double unbiasedness_defect() const;

  private:
    int q_;
    std::vector<CMatrix> bases_;
};

/// One projector per eigenvalue cluster, ascending, labelled by the eigenvalue.
Povm pvm_from_observable(const CMatrix &a);

/// p_1 M^(1) (+) ... (+) p_k M^(k): concatenated, scaled elements with provenance.
Povm randomize(const std::vector<std::pair<double, Povm>> &parts);

/// (1/3)(M^(1) (+) M^(2) (+) M^(3)) over the Pauli PVMs, ordered
/// 1+, 1-, 2+, 2-, 3+, 3-.
Povm qubit_tomography_povm();

/// q in {2, 3, 4, 5}; throws UnsupportedDimension otherwise.
MubFamily mub_bases(int q);

/// Uniform random measurement over the q + 1 basis PVMs; labels "alpha:i".
Povm mub_tomography_povm(const MubFamily &f);

/// p_n = Tr(rho M_n), clamped to [0, 1] after rounding noise.
RVector outcome_distribution(const CMatrix &rho, const Povm &m);

}  // namespace qest
