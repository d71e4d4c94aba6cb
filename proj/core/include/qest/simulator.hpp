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

// Monte Carlo comparison of qubit tomography against adaptive maximum
// likelihood estimation with per-step optimal random measurements.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qest/estimation.hpp"
#include "qest/measurement.hpp"
#include "qest/random.hpp"
#include "qest/state_model.hpp"

namespace qest {

/// Which weight the adaptive scheme optimizes, resolved at each estimate.
struct WeightSelector {
    enum class Kind { Identity, Qfi, Tomography, Rotational, Custom };

    Kind kind = Kind::Qfi;
    RotWeightSpec rot{};  // Rotational
    RMatrix custom;       // Custom: constant 3x3 PD matrix

    static WeightSelector identity() { return {Kind::Identity, {}, {}}; }
    static WeightSelector qfi() { return {Kind::Qfi, {}, {}}; }
    static WeightSelector tomography() { return {Kind::Tomography, {}, {}}; }
    static WeightSelector rotational(RotWeightSpec spec) { return {Kind::Rotational, spec, {}}; }
    static WeightSelector constant(RMatrix h) { return {Kind::Custom, {}, std::move(h)}; }

    Weight resolve(const StokesPoint &x) const;
    /// Rotationally symmetric weights have closed-form bounds.
    std::optional<RotWeightSpec> rotational_spec(double r) const;
    std::string name() const;
};

struct RunConfig {
    Eigen::Vector3d x0{0.55, 0.55, 0.55};
    WeightSelector weight = WeightSelector::qfi();
    int m_max = 1000;
    int reps = 100;
    std::uint64_t seed = 42;
    int adapt_update_every = 1;
    int mle_restarts = 3;
    int restart_period = 50;
    double eps_ball = 1e-6;
    Eigen::Vector3d x_init = Eigen::Vector3d::Zero();
    int checkpoints_per_decade = 10;

    /// Throws InvalidConfig on out-of-range fields.
    void validate() const;
};

/// Geometric grid 1..m_max with `per_decade` points per decade, always
/// ending at m_max.
std::vector<int> checkpoint_schedule(int m_max, int per_decade);

/// Inverse-CDF draw over the POVM's element order.
std::size_t sample_outcome(const CMatrix &rho, const Povm &m, Rng &rng);

/// x if |x| <= 1 - eps, else x (1 - eps) / |x|.
Eigen::Vector3d clamp_to_ball(const Eigen::Vector3d &x, double eps);

struct TomographyCounts {
    std::array<int, 3> plus{};
    std::array<int, 3> minus{};
};

/// (m+ - m-) / m per axis; 0 for axes never measured. Not clamped.
Eigen::Vector3d tomography_estimate(const TomographyCounts &counts);

struct TomographyResult {
    Eigen::Vector3d estimate;
    TomographyCounts counts;
};

/// m_total i.i.d. applications of the qubit tomography POVM to tau_{x0}.
TomographyResult run_tomography(const StokesPoint &x0, int m_total, Rng &rng);

/// Raw tomography estimates at each checkpoint of one trial.
std::vector<Eigen::Vector3d> tomography_trial(const StokesPoint &x0, std::span<const int> checkpoints,
                                              Rng &rng);

/// Tr(tau(x) E) = a0 + a . x for a fixed 2x2 element E.
struct LikelihoodTerm {
    double a0 = 0.0;
    Eigen::Vector3d a = Eigen::Vector3d::Zero();

    static LikelihoodTerm from_element(const CMatrix &e);
    double probability(const Eigen::Vector3d &x) const { return a0 + a.dot(x); }
};

inline constexpr double kLikelihoodFloor = 1e-12;

/// sum log max(Tr tau(x) E_i, 1e-12)
double log_likelihood(std::span<const LikelihoodTerm> terms, const Eigen::Vector3d &x);

struct MleOptions {
    double eps_ball = 1e-6;
    int restarts = 0;        // extra random starts
    int max_iterations = 200;
};

struct MleResult {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    double log_likelihood = 0.0;
    int iterations = 0;
    bool ok = true;          // false: optimizer failed, x is the initial point
    bool diverged = false;   // restarts disagreed with the warm start by > 1e-5
};

/// Maximizes the (concave) log-likelihood over |x| <= 1 - eps_ball by
/// trust-region Newton steps with backtracking, warm-started at init.
/// Restarts draw from rng (required when opts.restarts > 0).
MleResult mle_maximize(std::span<const LikelihoodTerm> terms, const Eigen::Vector3d &init,
                       const MleOptions &opts, Rng *rng = nullptr);

struct AppliedElement {
    Eigen::Matrix2cd op;
    std::string label;
};

struct TrialRecord {
    std::vector<AppliedElement> applied;
    std::vector<int> checkpoints;
    std::vector<Eigen::Vector3d> estimates;  // one per checkpoint
    int opt_failures = 0;
    int divergences = 0;
};

/// One adaptive estimation run: at each step apply the optimal measurement
/// for the current estimate, record the outcome and refit by MLE.
TrialRecord adaptive_run(const RunConfig &cfg, Rng &rng);

enum class EstimatorKind { Tomography, Adaptive };

std::string to_string(EstimatorKind kind);

struct McSummary {
    EstimatorKind estimator = EstimatorKind::Tomography;
    std::vector<int> checkpoints;
    std::vector<double> mean_bures;  // 2 m B(tau_x0, tau_xhat)
    std::vector<double> se_bures;
    std::vector<double> mean_sq;     // m |x0 - xhat|^2
    std::vector<double> se_sq;
    double c_opt = 0.0;
    double c_tomo = 0.0;
    int reps = 0;
    long opt_failures = 0;
    long steps = 0;
};

/// c and c^(T) for the configured weight at x0.
std::pair<double, double> theoretical_limits(const WeightSelector &w, const StokesPoint &x0);

/// QEST_THREADS if set and positive, else hardware concurrency (>= 1).
int default_thread_count();

/// Runs cfg.reps independent trials; trial i uses Rng::substream(seed, i).
/// threads <= 0 selects default_thread_count().
McSummary monte_carlo(const RunConfig &cfg, EstimatorKind kind, int threads = 0);

}  // namespace qest
