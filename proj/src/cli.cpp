// Copyright 2026 The qbroadcast Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qbroadcast/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "qbroadcast/reproduction.hpp"
#include "qbroadcast/swap.hpp"

namespace qbroadcast::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json interval_json(const ThresholdInterval &iv) {
    return Json{{"lo", iv.lo},
                {"hi", iv.hi},
                {"tolerance", iv.tolerance},
                {"predicate", iv.predicate_name}};
}

Json intervals_json(const std::vector<ThresholdInterval> &v) {
    Json arr = Json::array();
    for (const auto &iv : v) {
        arr.push_back(interval_json(iv));
    }
    return arr;
}

Branch require_branch(const std::string &text) {
    if (auto b = parse_branch(text)) {
        return *b;
    }
    throw UsageError("unknown branch '" + text + "' (expected Q0Q0, Q0Q1, Q1Q0 or Q1Q1)");
}

/// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    static const std::vector<std::string> kKeys{"tol", "grid", "beta_phase", "seed"};
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                             "'");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

template <typename T> T parse_value(const std::string &key, const std::string &text) {
    std::istringstream is(text);
    T value{};
    if (!(is >> value) || !(is >> std::ws).eof()) {
        throw UsageError("config: bad value '" + text + "' for " + key);
    }
    return value;
}

bool any_given(const std::vector<CLI::Option *> &opts) {
    return std::any_of(opts.begin(), opts.end(),
                       [](const CLI::Option *o) { return o->count() > 0; });
}

std::vector<std::string> split_pairs(const std::string &text) {
    std::vector<std::string> pairs;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) {
                pairs.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    for (const auto &p : pairs) {
        const bool ok = p.size() == 2 && p[0] != p[1] && p[0] >= '1' && p[0] <= '6' &&
                        p[1] >= '1' && p[1] <= '6';
        if (!ok) {
            throw UsageError("bad pair '" + p + "' (two distinct labels from 1-6, e.g. 16)");
        }
    }
    if (pairs.empty()) {
        throw UsageError("--pairs is empty");
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

struct SweepRow {
    double alpha2;
    std::string pair;
    PPTVerdict ppt;
    double concurrence;
    double eof;
};

std::vector<SweepRow> sweep_rows(const std::vector<std::string> &pairs, Branch branch,
                                 double from, double to, std::size_t steps, double phase) {
    if (!(from >= 0.0 && to <= 1.0 && from <= to)) {
        throw UsageError("sweep needs 0 <= --from <= --to <= 1");
    }
    if (steps == 0) {
        throw UsageError("--steps must be at least 1");
    }
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < steps; ++k) {
        const double a2 =
            steps == 1 ? from
                       : from + (to - from) * static_cast<double>(k) /
                                    static_cast<double>(steps - 1);
        const DensityOp six = six_qubit_state(a2, branch, phase);
        for (const auto &p : pairs) {
            const DensityOp rho = partial_trace(six, {std::string(1, p[0]), std::string(1, p[1])});
            const MeasureReport m = entanglement_measures(rho);
            rows.push_back({a2, p, ppt_verdict(rho), m.concurrence, m.eof});
        }
    }
    return rows;
}

std::string render_sweep(const std::vector<SweepRow> &rows, const std::string &format) {
    std::ostringstream os;
    if (format == "csv") {
        os << kSweepHeader << '\n';
        for (const auto &r : rows) {
            os << format_real(r.alpha2) << ',' << r.pair << ','
               << format_real(r.ppt.min_pt_eigenvalue) << ',' << format_real(r.ppt.w3) << ','
               << format_real(r.ppt.w4) << ',' << format_real(r.concurrence) << ','
               << format_real(r.eof) << ',' << (r.ppt.entangled ? 1 : 0) << '\n';
        }
        return os.str();
    }
    Json arr = Json::array();
    for (const auto &r : rows) {
        arr.push_back(Json{{"alpha2", r.alpha2},
                           {"pair", r.pair},
                           {"min_pt_eigenvalue", r.ppt.min_pt_eigenvalue},
                           {"w3", r.ppt.w3},
                           {"w4", r.ppt.w4},
                           {"concurrence", r.concurrence},
                           {"eof", r.eof},
                           {"entangled", r.ppt.entangled ? 1 : 0}});
    }
    return arr.dump(2) + "\n";
}

Json thresholds_json(Branch branch, const ScanOptions &scan, double phase) {
    Json intervals;
    for (const std::string pair : {"16", "14", "23", "35"}) {
        intervals["rho" + pair + "_entangled"] =
            intervals_json(pair_threshold(branch, pair, Predicate::Entangled, scan, phase));
    }
    for (const std::string pair : {"46", "25"}) {
        intervals["rho" + pair + "_entangled"] =
            intervals_json(pair_threshold(branch, pair, Predicate::Entangled, scan, phase));
    }
    for (const std::string pair : {"12", "15", "34", "36"}) {
        intervals["rho" + pair + "_separable"] =
            intervals_json(pair_threshold(branch, pair, Predicate::Separable, scan, phase));
    }
    intervals["broadcast"] = intervals_json(broadcast_intervals(branch, scan, phase));
    return Json{{"branch", to_string(branch)},
                {"beta_phase", phase},
                {"grid", scan.grid},
                {"tol", scan.tol},
                {"intervals", intervals}};
}

Json branches_json(const ScanOptions &scan, double phase) {
    Json arr = Json::array();
    for (Branch b : all_branches()) {
        const BranchReport r = branch_report(b, {scan, phase, 0.5});
        arr.push_back(Json{{"branch", to_string(r.branch)},
                           {"reference_alpha2", r.reference_alpha2},
                           {"probability", r.probability},
                           {"broadcast", intervals_json(r.broadcast_intervals)},
                           {"rho146_closed", intervals_json(r.rho146_closed_intervals)},
                           {"rho325_closed", intervals_json(r.rho325_closed_intervals)}});
    }
    return Json{{"beta_phase", phase}, {"grid", scan.grid}, {"tol", scan.tol}, {"branches", arr}};
}

Json swap_json(double alpha2, Branch branch, PlanSource source, double phase) {
    if (!(alpha2 > 0.0 && alpha2 < 1.0)) {
        throw UsageError("--alpha2 must lie strictly between 0 and 1");
    }
    const DensityOp rho325 = three_party_source(alpha2, branch, phase);
    const auto outcomes = bsm(swap_extend(rho325));
    const auto plans = correction_plans(rho325, source);
    Json arr = Json::array();
    for (const BellOutcome &o : outcomes) {
        const CorrectionPlan &plan = plans.at(o.label);
        arr.push_back(Json{{"label", to_string(o.label)},
                           {"probability", o.probability},
                           {"correction", plan.word},
                           {"fidelity", plan.achieved_fidelity}});
    }
    return Json{{"alpha2", alpha2},
                {"branch", to_string(branch)},
                {"beta_phase", phase},
                {"corrections", to_string(source)},
                {"outcomes", arr}};
}

Json gv_json(std::size_t nbits, gv::EveStrategy eve, const gv::GvConfig &config) {
    if (nbits == 0) {
        throw UsageError("--bits must be at least 1");
    }
    // payload bits come from a stream separate from the channel's
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<int> bits(nbits);
    for (auto &b : bits) {
        b = static_cast<int>(rng() >> 63);
    }
    const gv::GvResult r = gv::transmit_bits(bits, eve, config);
    return Json{{"bits", nbits},
                {"eve", gv::to_string(eve)},
                {"seed", config.seed},
                {"delay", config.delay},
                {"trials", config.trials},
                {"bits_sent", r.bits_sent},
                {"bit_errors", r.bit_errors},
                {"eve_detected", r.eve_detected},
                {"detection_events", r.detection_events},
                {"error_rate", static_cast<double>(r.bit_errors) / static_cast<double>(nbits)},
                {"analytic_error_rate", gv::analytic_detection_rate(eve)},
                {"analytic_session_detection",
                 gv::analytic_session_detection(eve, config.trials)}};
}

Json report_json(const ReproductionReport &report) {
    Json arr = Json::array();
    for (const ReportEntry &e : report.entries) {
        Json j{{"section", e.section}, {"quantity", e.quantity}};
        j["computed"] = e.computed ? Json(*e.computed) : Json(nullptr);
        j["published"] = e.published ? Json(*e.published) : Json(nullptr);
        j["delta"] = e.computed && e.published ? Json(*e.computed - *e.published) : Json(nullptr);
        j["tolerance"] = e.tolerance;
        j["status"] = e.status;
        j["note"] = e.note;
        arr.push_back(std::move(j));
    }
    return Json{{"entries", arr},
                {"summary",
                 {{"pass", report.count("pass")},
                  {"diff", report.count("diff")},
                  {"info", report.count("info")}}}};
}

} // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement broadcasting by local cloning: thresholds, sweeps and reports",
                 "qbroadcast"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value file (keys: tol, grid, beta_phase, seed)");

    double tol = ScanOptions{}.tol;
    std::size_t grid = ScanOptions{}.grid;
    double phase = 0.0;
    std::uint64_t seed = 0;
    std::vector<CLI::Option *> tol_opts, grid_opts, phase_opts, seed_opts;
    const auto scan_flags = [&](CLI::App *sub) {
        tol_opts.push_back(sub->add_option("--tol", tol, "bisection tolerance on alpha^2"));
        grid_opts.push_back(sub->add_option("--grid", grid, "coarse grid points (>= 50)"));
    };
    const auto phase_flag = [&](CLI::App *sub) {
        phase_opts.push_back(sub->add_option("--beta-phase", phase, "phase of beta (radians)"));
    };

    auto *baseline = app.add_subcommand("baseline", "single-stage nonlocal pair window");
    scan_flags(baseline);
    phase_flag(baseline);

    auto *sweep = app.add_subcommand("sweep", "pair measures on an alpha^2 grid");
    std::string pairs_text, branch_text = "Q0Q0", format = "csv", out_path;
    double from = 0.0, to = 1.0;
    std::size_t steps = 0;
    sweep->add_option("--pairs", pairs_text, "comma-separated pairs, e.g. 16,46")->required();
    sweep->add_option("--branch", branch_text, "machine outcome, e.g. Q0Q0");
    sweep->add_option("--from", from, "first alpha^2")->required();
    sweep->add_option("--to", to, "last alpha^2")->required();
    sweep->add_option("--steps", steps, "grid points")->required();
    sweep->add_option("--out", out_path, "write to a file instead of stdout");
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    phase_flag(sweep);

    auto *thresholds = app.add_subcommand("thresholds", "all threshold intervals of a branch");
    thresholds->add_option("--branch", branch_text, "machine outcome, e.g. Q0Q0");
    scan_flags(thresholds);
    phase_flag(thresholds);

    auto *branches = app.add_subcommand("branches", "report for all four machine outcomes");
    scan_flags(branches);
    phase_flag(branches);

    auto *swap = app.add_subcommand("swap", "three-party extension by Bell measurement");
    double alpha2 = 0.0;
    std::string corrections = "derived";
    swap->add_option("--alpha2", alpha2, "alpha^2 of the initial pair")->required();
    swap->add_option("--corrections", corrections, "paper or derived")
        ->check(CLI::IsMember({"paper", "derived"}));
    swap->add_option("--branch", branch_text, "machine outcome of the source state");
    phase_flag(swap);

    auto *gvcmd = app.add_subcommand("gv", "orthogonal-state channel simulation");
    std::size_t nbits = 0;
    std::string eve_text = "none";
    gv::GvConfig gvconf;
    gvcmd->add_option("--bits", nbits, "number of data bits")->required();
    gvcmd->add_option("--eve", eve_text, "none or intercept")
        ->check(CLI::IsMember({"none", "intercept", "intercept_resend"}));
    seed_opts.push_back(gvcmd->add_option("--seed", seed, "RNG seed"));
    gvcmd->add_option("--trials", gvconf.trials, "check pulses per session");
    gvcmd->add_option("--delay", gvconf.delay, "wave-packet separation");

    auto *report = app.add_subcommand("report", "computed values against published ones");
    std::string report_format = "text";
    report->add_option("--format", report_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    scan_flags(report);
    phase_flag(report);

    std::vector<const char *> argv{"qbroadcast"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            for (const auto &[key, value] : read_config(config_path)) {
                if (key == "tol" && !any_given(tol_opts)) {
                    tol = parse_value<double>(key, value);
                } else if (key == "grid" && !any_given(grid_opts)) {
                    grid = parse_value<std::size_t>(key, value);
                } else if (key == "beta_phase" && !any_given(phase_opts)) {
                    phase = parse_value<double>(key, value);
                } else if (key == "seed" && !any_given(seed_opts)) {
                    seed = parse_value<std::uint64_t>(key, value);
                }
            }
        }
        const ScanOptions scan{grid, tol, true};

        if (baseline->parsed()) {
            const ThresholdInterval iv = buzek_baseline(scan, phase);
            const Json j{{"pair", "14"},
                         {"lo", iv.lo},
                         {"hi", iv.hi},
                         {"tolerance", iv.tolerance},
                         {"published_lo", published::baseline_lo()},
                         {"published_hi", published::baseline_hi()},
                         {"delta_lo", iv.lo - published::baseline_lo()},
                         {"delta_hi", iv.hi - published::baseline_hi()}};
            out << j.dump(2) << '\n';
        } else if (sweep->parsed()) {
            const auto rows = sweep_rows(split_pairs(pairs_text), require_branch(branch_text),
                                         from, to, steps, phase);
            const std::string text = render_sweep(rows, format);
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream file(out_path);
                if (!(file << text)) {
                    throw UsageError("cannot write '" + out_path + "'");
                }
            }
        } else if (thresholds->parsed()) {
            out << thresholds_json(require_branch(branch_text), scan, phase).dump(2) << '\n';
        } else if (branches->parsed()) {
            out << branches_json(scan, phase).dump(2) << '\n';
        } else if (swap->parsed()) {
            out << swap_json(alpha2, require_branch(branch_text),
                             *parse_plan_source(corrections), phase)
                       .dump(2)
                << '\n';
        } else if (gvcmd->parsed()) {
            gvconf.seed = seed;
            out << gv_json(nbits, *gv::parse_strategy(eve_text), gvconf).dump(2) << '\n';
        } else if (report->parsed()) {
            const ReproductionReport r = build_report({scan, phase});
            if (report_format == "json") {
                out << report_json(r).dump(2) << '\n';
            } else {
                out << render_text(r);
            }
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError &e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace qbroadcast::cli
