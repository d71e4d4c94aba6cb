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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "cli/svg.hpp"
#include "qest/errors.hpp"
#include "qest/estimation.hpp"
#include "qest/measurement.hpp"
#include "qest/serialize.hpp"
#include "qest/simulator.hpp"
#include "qest/state_model.hpp"
#include "qest/verify.hpp"

namespace qest::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string csv() const {
        std::string s;
        for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
        s += '\n';
        for (const auto &row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_double(row[i]);
            s += '\n';
        }
        return s;
    }

    std::string json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &row : rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = row[i];
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }

    std::vector<std::pair<double, double>> column_pair(std::size_t a, std::size_t b) const {
        std::vector<std::pair<double, double>> pts;
        for (const auto &row : rows) pts.emplace_back(row[a], row[b]);
        return pts;
    }
};

// Options shared by the data-producing subcommands.
struct OutputOptions {
    std::string path;
    std::string format = "csv";
    bool svg = false;

    void attach(CLI::App *app) {
        app->add_option("--out", path, "Output file (default: stdout)");
        app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        app->add_flag("--svg", svg, "Also write a polyline plot next to --out");
    }

    void validate() const {
        if (svg && path.empty()) throw UsageError("--svg needs --out");
    }

    void write(const std::string &text, std::ostream &out) const {
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + path + "' for writing");
        f << text;
    }

    void write_svg(const std::string &svg_text) const {
        if (!svg) return;
        const std::string target = std::filesystem::path(path).replace_extension(".svg").string();
        std::ofstream f(target, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + target + "' for writing");
        f << svg_text;
    }

    void emit(const Table &t, std::ostream &out) const { write(format == "json" ? t.json() : t.csv(), out); }
};

Eigen::Vector3d vec3(const std::vector<double> &v, const std::string &flag) {
    if (v.size() != 3) throw UsageError(flag + " expects three comma-separated numbers");
    return {v[0], v[1], v[2]};
}

WeightSelector parse_weight(const std::string &name, double f, double g, const std::vector<double> &h) {
    if (name == "identity") return WeightSelector::identity();
    if (name == "qfi") return WeightSelector::qfi();
    if (name == "tomography") return WeightSelector::tomography();
    if (name == "rot" || name == "custom") {
        if (name == "custom" && !h.empty()) {
            if (h.size() != 9) throw UsageError("--matrix expects nine comma-separated numbers");
            RMatrix m(3, 3);
            for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = h[i];
            Weight checked(m);
            return WeightSelector::constant(checked.matrix());
        }
        if (!(f > 0.0) || !(g > 0.0)) throw UsageError("--f and --g must be positive");
        return WeightSelector::rotational({f, g});
    }
    throw UsageError("unknown weight '" + name + "'");
}

// --- bounds ---------------------------------------------------------------

struct BoundsArgs {
    std::string weight = "identity";
    double f = 1.0, g = 1.0;
    std::vector<double> dir{1.0, 1.0, 1.0};
    double rmin = 0.0, rmax = 0.99;
    int steps = 100;
    OutputOptions output;
};

void cmd_bounds(const BoundsArgs &a, std::ostream &out) {
    a.output.validate();
    if (a.weight != "identity" && a.weight != "qfi" && a.weight != "rot" && a.weight != "custom") {
        throw UsageError("bounds supports --weight identity|qfi|rot|custom");
    }
    const WeightSelector w = parse_weight(a.weight, a.f, a.g, {});
    Eigen::Vector3d dir = vec3(a.dir, "--dir");
    if (dir.norm() < 1e-12) throw UsageError("--dir must be nonzero");
    dir.normalize();
    if (!(a.rmin >= 0.0) || !(a.rmax < 1.0) || a.rmin > a.rmax) {
        throw UsageError("radius grid must satisfy 0 <= rmin <= rmax < 1");
    }
    if (a.steps < 1) throw UsageError("--steps must be >= 1");
    if (w.kind == WeightSelector::Kind::Rotational && a.f != a.g && a.rmin == 0.0) {
        throw UsageError("a rotational weight with f != g is undefined at r = 0; use --rmin > 0");
    }

    const Povm tomo = qubit_tomography_povm();
    Table t{{"r", "c", "cT", "discrepancy"}, {}};
    double worst = 0.0;
    for (int k = 0; k <= a.steps; ++k) {
        const double r = a.rmin + (a.rmax - a.rmin) * k / a.steps;
        const StokesPoint x(r * dir);
        const RotWeightSpec spec = *w.rotational_spec(r);
        const Weight h = rot_weight(spec, x);
        const double c = c_opt_closed(spec, r);
        const double ct = c_tomo_closed(spec, x);
        const double c_num = qcr_min_trace(qubit_qfi(x), h).bound;
        const double ct_num = weighted_trace_inverse(h.matrix(), classical_fisher(qubit_slds(x), tomo));
        const double disc = std::max(std::abs(c - c_num), std::abs(ct - ct_num));
        worst = std::max(worst, disc);
        t.rows.push_back({r, c, ct, disc});
        if (a.steps == 0 || a.rmin == a.rmax) break;
    }
    a.output.emit(t, out);
    a.output.write_svg(svg_plot({"c and c^(T) along the direction", "r", "value", false, false},
                                {{"c", t.column_pair(0, 1)}, {"cT", t.column_pair(0, 2)}}));
    if (worst >= 1e-6) {
        throw CheckFailed("closed form and numeric values disagree by " + format_double(worst));
    }
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::vector<double> x0{0.55, 0.55, 0.55};
    std::string weight = "qfi";
    double f = 1.0, g = 1.0;
    std::vector<double> h;
    int m = 1000;
    int reps = 100;
    std::uint64_t seed = 42;
    std::string estimator = "both";
    int adapt_every = 1;
    int restarts = 3;
    double eps = 1e-6;
    int per_decade = 10;
    int threads = 0;
    OutputOptions output;
};

void cmd_simulate(const SimulateArgs &a, std::ostream &out, std::ostream &err) {
    a.output.validate();
    RunConfig cfg;
    cfg.x0 = vec3(a.x0, "--x0");
    if (!(cfg.x0.norm() < 1.0)) throw UsageError("--x0 must lie inside the unit ball");
    cfg.weight = parse_weight(a.weight, a.f, a.g, a.h);
    cfg.m_max = a.m;
    cfg.reps = a.reps;
    cfg.seed = a.seed;
    cfg.adapt_update_every = a.adapt_every;
    cfg.mle_restarts = a.restarts;
    cfg.eps_ball = a.eps;
    cfg.checkpoints_per_decade = a.per_decade;
    cfg.validate();

    std::vector<EstimatorKind> kinds;
    if (a.estimator == "both" || a.estimator == "tomo") kinds.push_back(EstimatorKind::Tomography);
    if (a.estimator == "both" || a.estimator == "adaptive") kinds.push_back(EstimatorKind::Adaptive);

    std::vector<McSummary> summaries;
    for (EstimatorKind kind : kinds) {
        summaries.push_back(monte_carlo(cfg, kind, a.threads));
        const McSummary &s = summaries.back();
        if (s.steps > 0 && s.opt_failures > 0.01 * double(s.steps)) {
            err << "warning: " << s.opt_failures << " of " << s.steps
                << " likelihood maximizations failed (" << to_string(kind) << ")\n";
        }
    }
    a.output.write(a.output.format == "json" ? mc_summary_to_json(summaries, 2) + "\n"
                                             : mc_summary_to_csv(summaries),
                   out);

    std::vector<Series> series;
    for (const auto &s : summaries) {
        Series curve{to_string(s.estimator), {}};
        for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
            curve.points.emplace_back(s.checkpoints[k], s.mean_bures[k]);
        }
        series.push_back(std::move(curve));
    }
    if (!summaries.empty()) {
        const double m_lo = summaries[0].checkpoints.front(), m_hi = summaries[0].checkpoints.back();
        series.push_back({"c", {{m_lo, summaries[0].c_opt}, {m_hi, summaries[0].c_opt}}});
        series.push_back({"cT", {{m_lo, summaries[0].c_tomo}, {m_hi, summaries[0].c_tomo}}});
    }
    a.output.write_svg(svg_plot({"2mB versus m", "m", "2mB", true, false}, series));
}

// --- indicatrix -----------------------------------------------------------

struct IndicatrixArgs {
    std::vector<double> x{0.0, 0.0, 0.0};
    std::string weight = "identity";
    std::vector<int> plane{1, 2};
    int n = 100;
    OutputOptions output;
};

void cmd_indicatrix(const IndicatrixArgs &a, std::ostream &out) {
    a.output.validate();
    const Eigen::Vector3d xv = vec3(a.x, "--x");
    if (!(xv.norm() < 1.0)) throw UsageError("--x must lie inside the unit ball");
    if (a.weight != "identity" && a.weight != "qfi" && a.weight != "tomography") {
        throw UsageError("indicatrix supports --weight identity|qfi|tomography");
    }
    if (a.plane.size() != 2 || a.plane[0] < 1 || a.plane[0] > 3 || a.plane[1] < 1 || a.plane[1] > 3 ||
        a.plane[0] == a.plane[1]) {
        throw UsageError("--plane expects two distinct axes from 1..3, e.g. 1,2");
    }
    if (a.n < 1) throw UsageError("--n must be >= 1");
    const Weight h = parse_weight(a.weight, 1.0, 1.0, {}).resolve(StokesPoint(xv));
    Table t{{"v1", "v2"}, {}};
    for (const auto &p : indicatrix_points(h, {a.plane[0] - 1, a.plane[1] - 1}, a.n)) {
        t.rows.push_back({p[0], p[1]});
    }
    a.output.emit(t, out);
    a.output.write_svg(svg_plot({"indicatrix v^T H v = 1", "v" + std::to_string(a.plane[0]),
                                 "v" + std::to_string(a.plane[1]), false, true},
                                {{a.weight, t.column_pair(0, 1), true}}));
}

// --- mub ------------------------------------------------------------------

struct MubArgs {
    int q = 3;
    bool dump = false;
    bool bounds = false;
    std::vector<double> dir;
    double rmax = 0.999;
    int steps = 50;
    OutputOptions output;
};

void cmd_mub(const MubArgs &a, std::ostream &out, std::ostream &err) {
    a.output.validate();
    if (a.dump == a.bounds) throw UsageError("mub needs exactly one of --dump or --bounds");
    const MubFamily f = mub_bases(a.q);
    if (a.dump) {
        a.output.write(mub_family_to_json(f, 2) + "\n", out);
        return;
    }
    if (a.q < 3) throw UsageError("--bounds needs --q >= 3");
    const int n = mub_param_count(a.q);
    RVector dir = RVector::Zero(n);
    if (a.dir.empty()) {
        dir[0] = 1.0;
    } else {
        if (static_cast<int>(a.dir.size()) != n) {
            throw UsageError("--dir expects " + std::to_string(n) + " comma-separated numbers for q=" +
                             std::to_string(a.q));
        }
        for (int i = 0; i < n; ++i) dir[i] = a.dir[i];
        if (dir.norm() < 1e-12) throw UsageError("--dir must be nonzero");
        dir.normalize();
    }
    if (!(a.rmax >= 0.0) || a.steps < 1) throw UsageError("need rmax >= 0 and steps >= 1");

    const Povm tomo = mub_tomography_povm(f);
    Table t{{"r", "cGM", "cT"}, {}};
    bool ok = true;
    for (int k = 0; k <= a.steps; ++k) {
        const double r = a.rmax * k / a.steps;
        ModelDerivatives d;
        try {
            d = mub_derivatives({a.q, RVector(r * dir)}, f);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::NotPositive) throw;
            err << "note: state leaves the positive cone at r=" << format_double(r) << "; grid truncated\n";
            break;
        }
        const RMatrix j = model_qfi(d);
        const double cgm = gm_lower_bound(j, Weight(j), a.q);
        const double ct = weighted_trace_inverse(j, classical_fisher(d, tomo));
        if (ct < cgm * (1.0 - 1e-9)) ok = false;
        t.rows.push_back({r, cgm, ct});
    }
    a.output.emit(t, out);
    a.output.write_svg(svg_plot({"MUB tomography versus the Gill-Massar bound", "r", "value", false, false},
                                {{"cGM", t.column_pair(0, 1)}, {"cT", t.column_pair(0, 2)}}));
    if (!ok) throw CheckFailed("cT fell below cGM on some row");
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::string report;
    int threads = 0;
};

void cmd_verify(const VerifyArgs &a, std::ostream &out) {
    const auto results = verify::run_suite(a.suite, a.seed, a.threads);
    out << verify::report_text(results);
    if (!a.report.empty()) {
        std::ofstream f(a.report, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + a.report + "' for writing");
        f << verify::report_json(results) << '\n';
    }
    if (!std::all_of(results.begin(), results.end(), [](const auto &r) { return r.passed; })) {
        throw CheckFailed("verification failed");
    }
}

bool usage_kind(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidConfig:
        case ErrorKind::InvalidArgument:
        case ErrorKind::UnsupportedDimension:
        case ErrorKind::OutOfBall:
        case ErrorKind::NotPositive:
        case ErrorKind::BadDistribution:
        case ErrorKind::DimMismatch:
            return true;
        default:
            return false;
    }
}

std::string scalar_text(const nlohmann::json &v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw UsageError("config values must be strings, numbers, booleans or arrays of those");
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    std::vector<std::string> explicit_flags;
    for (const auto &a : args) {
        if (a.rfind("--", 0) == 0 && a != "--config") explicit_flags.push_back(a.substr(0, a.find('=')));
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] != "--config") {
            out.push_back(args[i]);
            continue;
        }
        if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
        std::ifstream f(args[++i]);
        if (!f) throw UsageError("cannot read config '" + args[i] + "'");
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception &e) {
            throw UsageError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!cfg.is_object()) throw UsageError("config must be a JSON object");
        for (const auto &[key, value] : cfg.items()) {
            const std::string flag = "--" + key;
            if (std::find(explicit_flags.begin(), explicit_flags.end(), flag) != explicit_flags.end()) continue;
            if (value.is_boolean()) {
                if (value.get<bool>()) out.push_back(flag);
            } else if (value.is_array()) {
                std::string joined;
                for (const auto &e : value) joined += (joined.empty() ? "" : ",") + scalar_text(e);
                out.push_back(flag);
                out.push_back(joined);
            } else {
                out.push_back(flag);
                out.push_back(scalar_text(value));
            }
        }
    }
    return out;
}

int run_cli(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qest: qubit estimation bounds and tomography simulations", "qest"};
    app.require_subcommand(1);

    BoundsArgs bounds;
    auto *b = app.add_subcommand("bounds", "c and c^(T) along a direction for a rotational weight");
    b->add_option("--weight", bounds.weight, "identity | qfi | rot (with --f, --g)");
    b->add_option("--f", bounds.f, "tangential weight factor");
    b->add_option("--g", bounds.g, "radial weight factor");
    b->add_option("--dir", bounds.dir, "direction x,y,z")->delimiter(',');
    b->add_option("--rmin", bounds.rmin);
    b->add_option("--rmax", bounds.rmax);
    b->add_option("--steps", bounds.steps);
    bounds.output.attach(b);

    SimulateArgs sim;
    auto *s = app.add_subcommand("simulate", "Monte Carlo comparison of tomography and adaptive MLE");
    s->add_option("--x0", sim.x0, "true Stokes vector x,y,z")->delimiter(',');
    s->add_option("--weight", sim.weight, "identity | qfi | tomography | rot | custom");
    s->add_option("--f", sim.f);
    s->add_option("--g", sim.g);
    s->add_option("--matrix", sim.h, "constant weight, nine numbers row-major")->delimiter(',');
    s->add_option("--m", sim.m, "measurements per trial");
    s->add_option("--reps", sim.reps, "trials");
    s->add_option("--seed", sim.seed);
    s->add_option("--estimator", sim.estimator)->check(CLI::IsMember({"both", "tomo", "adaptive"}));
    s->add_option("--adapt-every", sim.adapt_every, "re-derive the measurement every k steps");
    s->add_option("--restarts", sim.restarts, "random likelihood restarts every 50 steps");
    s->add_option("--eps", sim.eps, "ball clamp margin");
    s->add_option("--checkpoints-per-decade", sim.per_decade);
    s->add_option("--threads", sim.threads, "worker threads (0: QEST_THREADS or hardware)");
    sim.output.attach(s);

    IndicatrixArgs ind;
    auto *i = app.add_subcommand("indicatrix", "points of v^T H v = 1 in a coordinate plane");
    i->add_option("--x", ind.x, "Stokes vector x,y,z")->delimiter(',');
    i->add_option("--weight", ind.weight, "identity | qfi | tomography");
    i->add_option("--plane", ind.plane, "two axes, e.g. 1,2")->delimiter(',');
    i->add_option("--n", ind.n);
    ind.output.attach(i);

    MubArgs mub;
    auto *mu = app.add_subcommand("mub", "mutually unbiased bases and their tomography bounds");
    mu->add_option("--q", mub.q, "dimension 2..5")->required();
    mu->add_flag("--dump", mub.dump, "print the bases and the overlap check");
    mu->add_flag("--bounds", mub.bounds, "rows r, cGM, cT along --dir");
    mu->add_option("--dir", mub.dir, "direction in the q^2-1 coordinates (default: first)")->delimiter(',');
    mu->add_option("--rmax", mub.rmax);
    mu->add_option("--steps", mub.steps);
    mub.output.attach(mu);

    VerifyArgs ver;
    auto *v = app.add_subcommand("verify", "numerical checks of the estimation theory");
    v->add_option("--suite", ver.suite)->check(CLI::IsMember({"all", "lemmas", "bounds", "mc-smoke"}));
    v->add_option("--seed", ver.seed);
    v->add_option("--report", ver.report, "JSON report file");
    v->add_option("--threads", ver.threads);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::CallForHelp &e) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::CallForAllHelp &e) {
            out << app.help("", CLI::AppFormatMode::All);
            return kExitOk;
        } catch (const CLI::ParseError &e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        if (b->parsed()) cmd_bounds(bounds, out);
        if (s->parsed()) cmd_simulate(sim, out, err);
        if (i->parsed()) cmd_indicatrix(ind, out);
        if (mu->parsed()) cmd_mub(mub, out, err);
        if (v->parsed()) cmd_verify(ver, out);
        return kExitOk;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CheckFailed &e) {
        err << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return usage_kind(e.kind()) ? kExitUsage : kExitCheckFailed;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace qest::cli
