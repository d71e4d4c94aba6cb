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

#include "qest/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "qest/errors.hpp"
#include "qest/state_model.hpp"

namespace qest {

Povm::Povm(std::vector<PovmElement> elements, std::optional<std::vector<Provenance>> provenance)
    : elements_(std::move(elements)), provenance_(std::move(provenance)) {
    if (elements_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "POVM needs at least one element");
    }
    dim_ = static_cast<int>(elements_.front().op.rows());
    for (const auto &e : elements_) {
        if (e.op.rows() != dim_ || e.op.cols() != dim_) {
            throw Error(ErrorKind::DimMismatch, "POVM elements differ in dimension");
        }
    }
    if (provenance_ && provenance_->size() != elements_.size()) {
        throw Error(ErrorKind::DimMismatch, "provenance does not match element count");
    }
    if (const double defect = completeness_defect(); defect > 1e-9) {
        throw Error(ErrorKind::InvalidArgument,
                    "POVM elements do not sum to identity (defect " + std::to_string(defect) + ")");
    }
    if (const double low = min_eigenvalue(); low < -kPsdTol) {
        throw Error(ErrorKind::NotPsd, "POVM element eigenvalue " + std::to_string(low));
    }
}

double Povm::completeness_defect() const {
    CMatrix sum = CMatrix::Zero(dim_, dim_);
    for (const auto &e : elements_) sum += e.op;
    return (sum - CMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
}

double Povm::min_eigenvalue() const {
    double low = std::numeric_limits<double>::infinity();
    for (const auto &e : elements_) low = std::min(low, hermitian_eig(e.op).values[0]);
    return low;
}

MubFamily::MubFamily(int q, std::vector<CMatrix> bases) : q_(q), bases_(std::move(bases)) {
    if (static_cast<int>(bases_.size()) != q_ + 1) {
        throw Error(ErrorKind::DimMismatch, "a full MUB family has q + 1 bases");
    }
    for (const auto &b : bases_) {
        if (b.rows() != q_ || b.cols() != q_) {
            throw Error(ErrorKind::DimMismatch, "basis matrix must be q x q");
        }
    }
    if (orthonormality_defect() > 1e-10) {
        throw Error(ErrorKind::InvalidArgument, "MUB basis is not orthonormal");
    }
    if (unbiasedness_defect() > 1e-9) {
        throw Error(ErrorKind::InvalidArgument, "bases are not mutually unbiased");
    }
}

double MubFamily::orthonormality_defect() const {
    double worst = 0.0;
    for (const auto &b : bases_) {
        const CMatrix gram = b.adjoint() * b;
        worst = std::max(worst, (gram - CMatrix::Identity(q_, q_)).cwiseAbs().maxCoeff());
    }
    return worst;
}

double MubFamily::unbiasedness_defect() const {
    double worst = 0.0;
    for (std::size_t a = 0; a < bases_.size(); ++a) {
        for (std::size_t b = a + 1; b < bases_.size(); ++b) {
            const CMatrix overlap = bases_[a].adjoint() * bases_[b];
            const double dev =
                (overlap.cwiseAbs2().array() - 1.0 / q_).abs().maxCoeff();
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

namespace {

std::string eigenvalue_label(double v) {
    if (std::abs(v) < 5e-10) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.6g", v);
    return buf;
}

}  // namespace

Povm pvm_from_observable(const CMatrix &a) {
    const auto eig = hermitian_eig(a);
    const Eigen::Index n = eig.values.size();
    std::vector<PovmElement> elements;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && eig.values[end] - eig.values[end - 1] < kClusterGap) ++end;
        const CMatrix v = eig.vectors.middleCols(start, end - start);
        double mean = eig.values.segment(start, end - start).mean();
        elements.push_back({eigenvalue_label(mean), hermitian_part(v * v.adjoint())});
        start = end;
    }
    return Povm(std::move(elements));
}

Povm randomize(const std::vector<std::pair<double, Povm>> &parts) {
    if (parts.empty()) {
        throw Error(ErrorKind::BadDistribution, "empty randomization");
    }
    double total = 0.0;
    for (const auto &[p, m] : parts) {
        if (!(p >= 0.0)) throw Error(ErrorKind::BadDistribution, "negative probability");
        if (m.dim() != parts.front().second.dim()) {
            throw Error(ErrorKind::BadDistribution, "POVMs differ in dimension");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::BadDistribution, "probabilities sum to " + std::to_string(total));
    }
    std::vector<PovmElement> elements;
    std::vector<Provenance> provenance;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto &[p, m] = parts[i];
        for (const auto &e : m.elements()) {
            elements.push_back({e.label, p * e.op});
            provenance.push_back({static_cast<int>(i), p});
        }
    }
    return Povm(std::move(elements), std::move(provenance));
}

Povm qubit_tomography_povm() {
    std::vector<PovmElement> elements;
    std::vector<Provenance> provenance;
    const CMatrix id = CMatrix::Identity(2, 2);
    for (int mu = 0; mu < 3; ++mu) {
        const std::string axis = std::to_string(mu + 1);
        elements.push_back({axis + "+", (id + pauli(mu)) / 6.0});
        elements.push_back({axis + "-", (id - pauli(mu)) / 6.0});
        provenance.push_back({mu, 1.0 / 3.0});
        provenance.push_back({mu, 1.0 / 3.0});
    }
    return Povm(std::move(elements), std::move(provenance));
}

namespace {

CMatrix eigenbasis_of(const CMatrix &a) { return hermitian_eig(a).vectors; }

MubFamily qubit_mubs() {
    // sigma_3, sigma_1, sigma_2 eigenbases
    return MubFamily(2, {CMatrix::Identity(2, 2), eigenbasis_of(pauli(0)), eigenbasis_of(pauli(1))});
}

// Computational basis plus the q quadratic-phase bases
// |e_j^a> = q^{-1/2} sum_k w^{a k^2 + j k} |k>, valid for odd prime q.
MubFamily odd_prime_mubs(int q) {
    std::vector<CMatrix> bases{CMatrix::Identity(q, q)};
    const double norm = 1.0 / std::sqrt(double(q));
    for (int a = 0; a < q; ++a) {
        CMatrix b(q, q);
        for (int k = 0; k < q; ++k) {
            for (int j = 0; j < q; ++j) {
                const int phase = (a * k * k + j * k) % q;
                b(k, j) = norm * std::polar(1.0, 2.0 * std::numbers::pi * phase / q);
            }
        }
        bases.push_back(std::move(b));
    }
    return MubFamily(q, std::move(bases));
}

// GF(4) construction: each basis is the common eigenbasis of one class of
// three mutually commuting two-qubit Pauli operators.
MubFamily two_qubit_mubs() {
    const CMatrix id = CMatrix::Identity(2, 2);
    const CMatrix x = pauli(0), y = pauli(1), z = pauli(2);
    auto kron = [](const CMatrix &a, const CMatrix &b) {
        CMatrix out(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
        return out;
    };
    // Two independent generators per class; the third is their product.
    const std::pair<CMatrix, CMatrix> classes[] = {
        {kron(z, id), kron(id, z)},
        {kron(x, id), kron(id, x)},
        {kron(y, id), kron(id, y)},
        {kron(x, z), kron(y, x)},
        {kron(x, y), kron(y, z)},
    };
    std::vector<CMatrix> bases;
    for (const auto &[g1, g2] : classes) {
        // Eigenvalues of g1 + 2 g2 are {-3, -1, 1, 3}: no degeneracy.
        bases.push_back(eigenbasis_of(g1 + 2.0 * g2));
    }
    bases.front() = CMatrix::Identity(4, 4);
    return MubFamily(4, std::move(bases));
}

}  // namespace

MubFamily mub_bases(int q) {
    switch (q) {
        case 2: return qubit_mubs();
        case 3:
        case 5: return odd_prime_mubs(q);
        case 4: return two_qubit_mubs();
        default:
            throw Error(ErrorKind::UnsupportedDimension,
                        "MUB families are available for q in {2,3,4,5}, got " + std::to_string(q));
    }
}

Povm mub_tomography_povm(const MubFamily &f) {
    const int q = f.dim();
    const double weight = 1.0 / (q + 1);
    std::vector<PovmElement> elements;
    std::vector<Provenance> provenance;
    for (int alpha = 0; alpha <= q; ++alpha) {
        for (int i = 0; i < q; ++i) {
            const CVector e = f.vector(alpha, i);
            elements.push_back({std::to_string(alpha + 1) + ":" + std::to_string(i + 1),
                                weight * e * e.adjoint()});
            provenance.push_back({alpha, weight});
        }
    }
    return Povm(std::move(elements), std::move(provenance));
}

RVector outcome_distribution(const CMatrix &rho, const Povm &m) {
    if (rho.rows() != m.dim()) {
        throw Error(ErrorKind::DimMismatch, "state and POVM differ in dimension");
    }
    RVector p(m.size());
    for (std::size_t n = 0; n < m.size(); ++n) {
        p[n] = std::clamp(trace_product_re(rho, m[n].op), 0.0, 1.0);
    }
    return p;
}

}  // namespace qest
