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

// Numerical checks of the estimation theory against independent oracles
// (brute force over random POVMs, a projected-gradient minimizer, closed
// forms). Used by `qest verify` and by the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qest/matrix.hpp"
#include "qest/measurement.hpp"
#include "qest/random.hpp"

namespace qest::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;     // worst observed deviation (or value) for the check
    double tolerance = 0.0;
    std::string detail;
};

Eigen::Vector3d random_unit(Rng &rng);
/// Uniform in the ball of radius r_max.
Eigen::Vector3d random_in_ball(Rng &rng, double r_max);
/// Random SO(3) rotation.
Eigen::Matrix3d random_rotation(Rng &rng);
/// Symmetric PD with eigenvalues in [lo, hi] and a random eigenbasis.
RMatrix random_pd(Rng &rng, int d, double lo = 0.2, double hi = 5.0);
/// POVM S^{-1/2} A_i S^{-1/2}, S = sum A_i, with full-rank A_i or, when
/// rank_one is set, A_i = b_i b_i^* (needs outcomes >= q).
Povm random_povm(Rng &rng, int q, int outcomes, bool rank_one = false);
/// Random MUB-model coordinates whose state has min eigenvalue >= 0.2 / q.
RVector random_mub_coords(Rng &rng, const MubFamily &f, double scale = 0.15);

/// Minimizes Tr S G^{-1} over {G PD, Tr G = 1} by projected gradient descent
/// with Armijo backtracking. Returns the minimum and writes the minimizer.
double lagrange_oracle(const RMatrix &s, RMatrix *minimizer = nullptr, int max_iterations = 200000);

// Individual checks; `cases` scales the number of random instances.
CheckResult check_closed_forms(std::uint64_t seed, int directions = 20);
CheckResult check_radial_limits();
CheckResult check_tomography_optimality(std::uint64_t seed, int cases = 20);
CheckResult check_optimal_attainment(std::uint64_t seed, int cases = 100);
CheckResult check_observable_pvm(std::uint64_t seed, int cases = 50);
CheckResult check_gill_massar(std::uint64_t seed, int povms = 100, int points = 10);
CheckResult check_convexity(std::uint64_t seed, int cases = 50);
CheckResult check_lagrange(std::uint64_t seed, int cases = 20);
CheckResult check_tomography_identity(std::uint64_t seed, int cases = 100);
CheckResult check_bures_expansion(std::uint64_t seed, int cases = 50);
CheckResult check_mub_suite();
/// Reduced Monte Carlo (reps = 50, m = 1000) statistical sanity checks.
std::vector<CheckResult> check_mc_smoke(std::uint64_t seed, int threads = 0);

/// Suites: "lemmas", "bounds", "mc-smoke", "all". Throws InvalidConfig for
/// other names.
std::vector<CheckResult> run_suite(const std::string &suite, std::uint64_t seed, int threads = 0);

std::string report_text(const std::vector<CheckResult> &results);
std::string report_json(const std::vector<CheckResult> &results, int indent = 2);

}  // namespace qest::verify
