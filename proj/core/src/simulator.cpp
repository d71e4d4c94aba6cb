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

#include "qest/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "qest/errors.hpp"

namespace qest {

Weight WeightSelector::resolve(const StokesPoint &x) const {
    switch (kind) {
        case Kind::Identity: return Weight(RMatrix::Identity(3, 3));
        case Kind::Qfi: return Weight(qubit_qfi(x));
        case Kind::Tomography: return tomography_weight(x);
        case Kind::Rotational: return rot_weight(rot, x);
        case Kind::Custom: return Weight(custom);
    }
    throw Error(ErrorKind::InvalidConfig, "unknown weight selector");
}

std::optional<RotWeightSpec> WeightSelector::rotational_spec(double r) const {
    switch (kind) {
        case Kind::Identity: return RotWeightSpec{1.0, 1.0};
        case Kind::Qfi: return RotWeightSpec{1.0, 1.0 / (1.0 - r * r)};
        case Kind::Rotational: return rot;
        default: return std::nullopt;
    }
}

std::string WeightSelector::name() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Qfi: return "qfi";
        case Kind::Tomography: return "tomography";
        case Kind::Rotational: return "rot";
        case Kind::Custom: return "custom";
    }
    return "unknown";
}

void RunConfig::validate() const {
    if (m_max < 1) throw Error(ErrorKind::InvalidConfig, "m must be >= 1");
    if (reps < 1) throw Error(ErrorKind::InvalidConfig, "reps must be >= 1");
    if (adapt_update_every < 1) throw Error(ErrorKind::InvalidConfig, "adapt-every must be >= 1");
    if (mle_restarts < 0) throw Error(ErrorKind::InvalidConfig, "restarts must be >= 0");
    if (restart_period < 1) throw Error(ErrorKind::InvalidConfig, "restart period must be >= 1");
    if (!(eps_ball > 0.0 && eps_ball < 0.5)) {
        throw Error(ErrorKind::InvalidConfig, "eps must lie in (0, 0.5)");
    }
    if (checkpoints_per_decade < 1) {
        throw Error(ErrorKind::InvalidConfig, "checkpoints per decade must be >= 1");
    }
    if (!(x0.norm() < 1.0)) throw Error(ErrorKind::InvalidConfig, "x0 must lie inside the ball");
    if (!(x_init.norm() < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "initial estimate must lie inside the ball");
    }
    if (weight.kind == WeightSelector::Kind::Custom) {
        if (weight.custom.rows() != 3 || weight.custom.cols() != 3) {
            throw Error(ErrorKind::InvalidConfig, "custom weight must be 3x3");
        }
        try {
            (void)Weight(weight.custom);
        } catch (const Error &e) {
            throw Error(ErrorKind::InvalidConfig, e.what());
        }
    }
    if (weight.kind == WeightSelector::Kind::Rotational && !(weight.rot.f > 0 && weight.rot.g > 0)) {
        throw Error(ErrorKind::InvalidConfig, "rotational weight needs f, g > 0");
    }
}

std::vector<int> checkpoint_schedule(int m_max, int per_decade) {
    std::vector<int> out;
    for (int k = 0;; ++k) {
        const int m = static_cast<int>(std::lround(std::pow(10.0, double(k) / per_decade)));
        if (m >= m_max) break;
        if (out.empty() || m > out.back()) out.push_back(m);
    }
    out.push_back(m_max);
    return out;
}

std::size_t sample_outcome(const CMatrix &rho, const Povm &m, Rng &rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t n = 0; n < m.size(); ++n) {
        const double p = std::clamp(trace_product_re(rho, m[n].op), 0.0, 1.0);
        if (p > 0.0) last_positive = n;
        cumulative += p;
        if (u < cumulative) return n;
    }
    // Rounding left the CDF just short of 1.
    return last_positive;
}

Eigen::Vector3d clamp_to_ball(const Eigen::Vector3d &x, double eps) {
    const double limit = 1.0 - eps;
    const double r = x.norm();
    if (r <= limit) return x;
    return x * (limit / r);
}

Eigen::Vector3d tomography_estimate(const TomographyCounts &counts) {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    for (int mu = 0; mu < 3; ++mu) {
        const int total = counts.plus[mu] + counts.minus[mu];
        if (total > 0) x[mu] = double(counts.plus[mu] - counts.minus[mu]) / total;
    }
    return x;
}

namespace {

void tally(TomographyCounts &counts, std::size_t outcome) {
    // Element order is 1+, 1-, 2+, 2-, 3+, 3-.
    const auto axis = outcome / 2;
    if (outcome % 2 == 0) {
        ++counts.plus[axis];
    } else {
        ++counts.minus[axis];
    }
}

}  // namespace

TomographyResult run_tomography(const StokesPoint &x0, int m_total, Rng &rng) {
    if (m_total < 1) throw Error(ErrorKind::InvalidArgument, "m_total must be >= 1");
    static const Povm tomo = qubit_tomography_povm();
    const CMatrix rho = qubit_state(x0);
    TomographyResult out;
    for (int i = 0; i < m_total; ++i) tally(out.counts, sample_outcome(rho, tomo, rng));
    out.estimate = tomography_estimate(out.counts);
    return out;
}

std::vector<Eigen::Vector3d> tomography_trial(const StokesPoint &x0, std::span<const int> checkpoints,
                                              Rng &rng) {
    static const Povm tomo = qubit_tomography_povm();
    const CMatrix rho = qubit_state(x0);
    TomographyCounts counts;
    std::vector<Eigen::Vector3d> out;
    out.reserve(checkpoints.size());
    int m = 0;
    for (int target : checkpoints) {
        for (; m < target; ++m) tally(counts, sample_outcome(rho, tomo, rng));
        out.push_back(tomography_estimate(counts));
    }
    return out;
}

LikelihoodTerm LikelihoodTerm::from_element(const CMatrix &e) {
    if (e.rows() != 2 || e.cols() != 2) {
        throw Error(ErrorKind::DimMismatch, "likelihood terms need 2x2 elements");
    }
    LikelihoodTerm t;
    t.a0 = 0.5 * e.trace().real();
    for (int mu = 0; mu < 3; ++mu) t.a[mu] = 0.5 * trace_product_re(pauli(mu), e);
    return t;
}

double log_likelihood(std::span<const LikelihoodTerm> terms, const Eigen::Vector3d &x) {
    double f = 0.0;
    for (const auto &t : terms) f += std::log(std::max(t.probability(x), kLikelihoodFloor));
    return f;
}

namespace {

struct Evaluation {
    double f = 0.0;
    Eigen::Vector3d grad = Eigen::Vector3d::Zero();
    Eigen::Matrix3d neg_hess = Eigen::Matrix3d::Zero();
};

Evaluation evaluate(std::span<const LikelihoodTerm> terms, const Eigen::Vector3d &x) {
    Evaluation ev;
    double h00 = 0, h01 = 0, h02 = 0, h11 = 0, h12 = 0, h22 = 0;
    double g0 = 0, g1 = 0, g2 = 0;
    for (const auto &t : terms) {
        const double p = t.probability(x);
        if (!(p >= kLikelihoodFloor)) {
            ev.f += std::log(kLikelihoodFloor);
            continue;
        }
        ev.f += std::log(p);
        const double inv = 1.0 / p;
        const double b0 = t.a[0] * inv, b1 = t.a[1] * inv, b2 = t.a[2] * inv;
        g0 += b0; g1 += b1; g2 += b2;
        h00 += b0 * b0; h01 += b0 * b1; h02 += b0 * b2;
        h11 += b1 * b1; h12 += b1 * b2; h22 += b2 * b2;
    }
    ev.grad << g0, g1, g2;
    ev.neg_hess << h00, h01, h02, h01, h11, h12, h02, h12, h22;
    return ev;
}

// Maximizer of the quadratic model f + g.(y - x) - (y - x)^T N (y - x) / 2 over
// |y| <= radius; N is PSD. Stationarity gives (N + nu I) y = g + N x.
Eigen::Vector3d model_maximizer(const Eigen::Vector3d &x, const Evaluation &ev, double radius) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(ev.neg_hess);
    const Eigen::Vector3d d = es.eigenvalues().cwiseMax(0.0);
    const Eigen::Matrix3d &q = es.eigenvectors();
    const Eigen::Vector3d c = q.transpose() * (ev.grad + ev.neg_hess * x);
    const double tiny = 1e-13 * std::max(1.0, d.maxCoeff());
    auto solve = [&](double nu) {
        Eigen::Vector3d z;
        for (int i = 0; i < 3; ++i) {
            const double denom = d[i] + nu;
            z[i] = denom > tiny ? c[i] / denom : 0.0;
        }
        return Eigen::Vector3d(q * z);
    };
    bool unbounded = false;
    for (int i = 0; i < 3; ++i) {
        if (d[i] <= tiny && std::abs(c[i]) > 1e-13 * (1.0 + c.norm())) unbounded = true;
    }
    if (!unbounded) {
        const Eigen::Vector3d y = solve(0.0);
        if (y.norm() <= radius) return y;
    }
    double lo = 0.0;
    double hi = std::max(1.0, c.norm() / radius);
    while (solve(hi).norm() > radius) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (solve(mid).norm() > radius ? lo : hi) = mid;
    }
    Eigen::Vector3d y = solve(hi);
    if (y.norm() > radius) y *= radius / y.norm();
    return y;
}

MleResult ascend(std::span<const LikelihoodTerm> terms, const Eigen::Vector3d &start,
                 const MleOptions &opts) {
    const double radius = 1.0 - opts.eps_ball;
    MleResult res;
    Eigen::Vector3d x = clamp_to_ball(start, opts.eps_ball);
    Evaluation ev = evaluate(terms, x);
    if (!std::isfinite(ev.f)) {
        res.ok = false;
        res.x = x;
        res.log_likelihood = ev.f;
        return res;
    }
    for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
        const Eigen::Vector3d dir = model_maximizer(x, ev, radius) - x;
        const double slope = ev.grad.dot(dir);
        if (!std::isfinite(slope)) {
            res.ok = false;
            break;
        }
        if (slope <= 1e-15 * (1.0 + std::abs(ev.f))) break;
        double step = 1.0;
        bool accepted = false;
        Evaluation next;
        Eigen::Vector3d xn;
        while (step > 1e-12) {
            xn = x + step * dir;
            if (xn.norm() > radius) xn *= radius / xn.norm();
            next = evaluate(terms, xn);
            if (std::isfinite(next.f) && next.f >= ev.f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No ascent left within rounding: the current point is optimal
            // unless the model still promises a sizeable gain.
            if (slope > 1e-8 * (1.0 + std::abs(ev.f))) res.ok = false;
            break;
        }
        const double moved = (xn - x).norm();
        x = xn;
        ev = next;
        if (moved < 1e-13) break;
    }
    res.x = x;
    res.log_likelihood = ev.f;
    return res;
}

Eigen::Vector3d random_point_in_ball(Rng &rng, double radius) {
    while (true) {
        Eigen::Vector3d v(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0,
                          2.0 * rng.uniform() - 1.0);
        if (v.norm() < 1.0) return v * radius;
    }
}

}  // namespace

MleResult mle_maximize(std::span<const LikelihoodTerm> terms, const Eigen::Vector3d &init,
                       const MleOptions &opts, Rng *rng) {
    if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "likelihood history is empty");
    if (opts.restarts > 0 && rng == nullptr) {
        throw Error(ErrorKind::InvalidArgument, "restarts need a random stream");
    }
    MleResult best = ascend(terms, init, opts);
    const MleResult warm = best;
    for (int k = 0; k < opts.restarts; ++k) {
        const MleResult alt = ascend(terms, random_point_in_ball(*rng, 1.0 - opts.eps_ball), opts);
        if (!alt.ok) continue;
        if (warm.ok && std::abs(alt.log_likelihood - warm.log_likelihood) > 1e-5) {
            best.diverged = true;
        }
        if (!best.ok || alt.log_likelihood > best.log_likelihood) {
            const bool diverged = best.diverged;
            best = alt;
            best.diverged = diverged;
        }
    }
    if (!best.ok) {
        best.x = clamp_to_ball(init, opts.eps_ball);
        best.log_likelihood = log_likelihood(terms, best.x);
    }
    return best;
}

TrialRecord adaptive_run(const RunConfig &cfg, Rng &rng) {
    cfg.validate();
    const CMatrix rho0 = qubit_state(StokesPoint(cfg.x0));
    TrialRecord rec;
    rec.checkpoints = checkpoint_schedule(cfg.m_max, cfg.checkpoints_per_decade);
    rec.applied.reserve(cfg.m_max);
    rec.estimates.reserve(rec.checkpoints.size());
    std::vector<LikelihoodTerm> terms;
    terms.reserve(cfg.m_max);

    Eigen::Vector3d estimate = clamp_to_ball(cfg.x_init, cfg.eps_ball);
    std::optional<Povm> measurement;
    std::size_t next_checkpoint = 0;
    for (int m = 1; m <= cfg.m_max; ++m) {
        if ((m - 1) % cfg.adapt_update_every == 0) {
            const StokesPoint at(estimate);
            measurement = optimal_measurement(qubit_slds(at), qubit_qfi(at), cfg.weight.resolve(at))
                              .measurement;
        }
        const std::size_t n = sample_outcome(rho0, *measurement, rng);
        const auto &element = (*measurement)[n];
        rec.applied.push_back({Eigen::Matrix2cd(element.op), element.label});
        terms.push_back(LikelihoodTerm::from_element(element.op));

        MleOptions opts;
        opts.eps_ball = cfg.eps_ball;
        opts.restarts = m % cfg.restart_period == 0 ? cfg.mle_restarts : 0;
        const MleResult fit = mle_maximize(terms, estimate, opts, &rng);
        if (fit.ok) {
            estimate = fit.x;
        } else {
            ++rec.opt_failures;
        }
        if (fit.diverged) ++rec.divergences;
        if (next_checkpoint < rec.checkpoints.size() && m == rec.checkpoints[next_checkpoint]) {
            rec.estimates.push_back(estimate);
            ++next_checkpoint;
        }
    }
    return rec;
}

std::string to_string(EstimatorKind kind) {
    return kind == EstimatorKind::Tomography ? "tomography" : "adaptive";
}

std::pair<double, double> theoretical_limits(const WeightSelector &w, const StokesPoint &x0) {
    if (const auto spec = w.rotational_spec(x0.radius())) {
        return {c_opt_closed(*spec, x0.radius()), c_tomo_closed(*spec, x0)};
    }
    const Weight h = w.resolve(x0);
    return {qcr_min_trace(qubit_qfi(x0), h).bound,
            weighted_trace_inverse(h.matrix(), qubit_tomography_fisher(x0))};
}

int default_thread_count() {
    if (const char *env = std::getenv("QEST_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 1024));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct TrialMerits {
    std::vector<double> bures;
    std::vector<double> sq;
    int failures = 0;
};

TrialMerits run_trial(const RunConfig &cfg, EstimatorKind kind, const std::vector<int> &checkpoints,
                      std::uint64_t index) {
    Rng rng = Rng::substream(cfg.seed, index);
    const StokesPoint x0(cfg.x0);
    const CMatrix rho0 = qubit_state(x0);
    std::vector<Eigen::Vector3d> estimates;
    TrialMerits out;
    if (kind == EstimatorKind::Tomography) {
        estimates = tomography_trial(x0, checkpoints, rng);
    } else {
        TrialRecord rec = adaptive_run(cfg, rng);
        estimates = std::move(rec.estimates);
        out.failures = rec.opt_failures;
    }
    out.bures.reserve(checkpoints.size());
    out.sq.reserve(checkpoints.size());
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
        const double m = checkpoints[k];
        const StokesPoint clamped(clamp_to_ball(estimates[k], cfg.eps_ball));
        out.bures.push_back(2.0 * m * bures_distance(rho0, qubit_state(clamped)));
        out.sq.push_back(m * (cfg.x0 - estimates[k]).squaredNorm());
    }
    return out;
}

void mean_and_se(const std::vector<TrialMerits> &trials, std::size_t k, bool bures, double &mean,
                 double &se) {
    const double n = static_cast<double>(trials.size());
    double sum = 0.0;
    for (const auto &t : trials) sum += bures ? t.bures[k] : t.sq[k];
    mean = sum / n;
    double ss = 0.0;
    for (const auto &t : trials) {
        const double d = (bures ? t.bures[k] : t.sq[k]) - mean;
        ss += d * d;
    }
    se = trials.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

}  // namespace

McSummary monte_carlo(const RunConfig &cfg, EstimatorKind kind, int threads) {
    cfg.validate();
    McSummary summary;
    summary.estimator = kind;
    summary.reps = cfg.reps;
    summary.checkpoints = checkpoint_schedule(cfg.m_max, cfg.checkpoints_per_decade);
    std::tie(summary.c_opt, summary.c_tomo) = theoretical_limits(cfg.weight, StokesPoint(cfg.x0));

    std::vector<TrialMerits> trials(cfg.reps);
    const int workers = std::clamp(threads > 0 ? threads : default_thread_count(), 1, cfg.reps);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int i = next++; i < cfg.reps; i = next++) {
            try {
                trials[i] = run_trial(cfg, kind, summary.checkpoints, static_cast<std::uint64_t>(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    const std::size_t n_check = summary.checkpoints.size();
    summary.mean_bures.resize(n_check);
    summary.se_bures.resize(n_check);
    summary.mean_sq.resize(n_check);
    summary.se_sq.resize(n_check);
    for (std::size_t k = 0; k < n_check; ++k) {
        mean_and_se(trials, k, true, summary.mean_bures[k], summary.se_bures[k]);
        mean_and_se(trials, k, false, summary.mean_sq[k], summary.se_sq[k]);
    }
    for (const auto &t : trials) summary.opt_failures += t.failures;
    summary.steps = kind == EstimatorKind::Adaptive ? long(cfg.reps) * cfg.m_max : 0;
    return summary;
}

}  // namespace qest
