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
#include "qbroadcast/reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qbroadcast/swap.hpp"

namespace qbroadcast {

namespace published {

double baseline_lo() { return 0.5 - std::sqrt(39.0) / 16.0; }
double baseline_hi() { return 0.5 + std::sqrt(39.0) / 16.0; }

} // namespace published

namespace transcribed {

namespace {

CMatrix ket(const std::string &bits) {
    return CMatrix::basis(std::size_t{1} << bits.size(), std::stoul(bits, nullptr, 2));
}

CMatrix psi_plus() { return (ket("01") + ket("10")) * (1.0 / std::sqrt(2.0)); }

CMatrix op(const CMatrix &x, const CMatrix &y) { return outer(x, y); }
CMatrix op(const std::string &x, const std::string &y) { return outer(ket(x), ket(y)); }

double norm_q0q0(double alpha2) { return (3.0 * alpha2 + 1.0) / 9.0; }

DensityOp finish(const std::vector<Label> &labels, CMatrix m, double alpha2) {
    m *= 1.0 / norm_q0q0(alpha2);
    return DensityOp(Register::qubits(labels), std::move(m));
}

} // namespace

DensityOp rho146(double alpha2, double beta_phase) {
    const double a = std::sqrt(alpha2);
    const Complex b = std::polar(std::sqrt(1.0 - alpha2), beta_phase);
    const double b2 = std::norm(b);
    const double r2 = std::sqrt(2.0);
    const CMatrix zp = kron(ket("0"), psi_plus()); // |0>|psi+>
    const CMatrix op_ = kron(ket("1"), psi_plus()); // |1>|psi+>

    CMatrix m = (4.0 * alpha2 / 9.0) *
                ((2.0 / 3.0) * op("000", "000") + (1.0 / 3.0) * op(zp, zp));
    m += (a * std::conj(b) / 9.0) *
         ((r2 / 3.0) * op(ket("000"), op_) + (r2 / 3.0) * op(zp, ket("111")));
    m += (a * b / 9.0) *
         ((r2 / 3.0) * op(ket("111"), zp) + (r2 / 3.0) * op(op_, ket("000")));
    m += (b2 / 36.0) * (2.0 / 3.0) *
         (op("011", "011") + op(zp, zp) + op("000", "000") + op("111", "111") +
          op(op_, op_) + op("100", "100"));
    return finish({"1", "4", "6"}, std::move(m), alpha2);
}

DensityOp rho16(double alpha2) {
    const double a = std::sqrt(alpha2);
    const double b = std::sqrt(1.0 - alpha2);
    CMatrix m = (4.0 * alpha2 / 9.0) *
                ((5.0 / 6.0) * op("00", "00") + (1.0 / 6.0) * op("01", "01"));
    m += (2.0 * a * b / 27.0) * (op("00", "11") + op("11", "00"));
    m += ((1.0 - alpha2) / 36.0) * CMatrix::identity(4);
    return finish({"1", "6"}, std::move(m), alpha2);
}

DensityOp rho46(double alpha2) {
    const CMatrix x = op("01", "01") + op("01", "10") + op("10", "01") + op("10", "10");
    CMatrix m = (4.0 * alpha2 / 9.0) * ((2.0 / 3.0) * op("00", "00") + (1.0 / 6.0) * x);
    m += ((1.0 - alpha2) / 36.0) *
         ((4.0 / 3.0) * op("00", "00") + (4.0 / 3.0) * op("11", "11") + (2.0 / 3.0) * x);
    return finish({"4", "6"}, std::move(m), alpha2);
}

DensityOp rho12(double alpha2) {
    CMatrix m = (4.0 * alpha2 / 9.0) *
                ((5.0 / 6.0) * op("00", "00") + (1.0 / 6.0) * op("01", "01"));
    m += ((1.0 - alpha2) / 36.0) *
         ((1.0 / 3.0) * op("00", "00") + (5.0 / 3.0) * op("01", "01") +
          (4.0 / 3.0) * op("01", "10") + (4.0 / 3.0) * op("10", "01") +
          (5.0 / 3.0) * op("10", "10") + (1.0 / 3.0) * op("11", "11"));
    return finish({"1", "2"}, std::move(m), alpha2);
}

DensityOp rho357_b1plus(double alpha2) {
    const double ab = std::sqrt(alpha2 * (1.0 - alpha2));
    const auto block = [](const std::string &u, const std::string &v) {
        // |u><u| - |u><v| - |v><u| + |v><v|
        return op(u, u) - op(u, v) - op(v, u) + op(v, v);
    };
    CMatrix m = (4.0 * alpha2 / 9.0) *
                ((2.0 / 3.0) * op("001", "001") + (1.0 / 6.0) * block("011", "000"));
    m += (ab / 27.0) *
         (op("001", "111") - op("001", "100") + op("000", "110") - op("011", "110"));
    m += (ab / 27.0) *
         (op("110", "000") - op("110", "011") + op("111", "001") - op("100", "001"));
    m += ((1.0 - alpha2) / 36.0) *
         ((2.0 / 3.0) * (op("010", "010") + op("001", "001") + op("110", "110") +
                         op("101", "101")) +
          (1.0 / 3.0) * (block("011", "000") + block("111", "100")));
    return finish({"3", "5", "7"}, std::move(m), alpha2);
}

} // namespace transcribed

std::vector<TranscriptionCheck> transcription_checks(double alpha2) {
    constexpr double kMatch = 1e-12;
    const Branch q0q0{};
    const DensityOp six = six_qubit_state(alpha2, q0q0);
    const auto outcomes = bsm(swap_extend(partial_trace(six, {"3", "2", "5"})));

    std::vector<TranscriptionCheck> out;
    const auto add = [&](const std::string &name, const DensityOp &derived,
                         const DensityOp &written) {
        const double dev = max_abs_diff(derived.matrix(), written.matrix());
        out.push_back({name, alpha2, dev, dev <= kMatch});
    };
    add("rho146", partial_trace(six, {"1", "4", "6"}), transcribed::rho146(alpha2));
    add("rho16", partial_trace(six, {"1", "6"}), transcribed::rho16(alpha2));
    add("rho46", partial_trace(six, {"4", "6"}), transcribed::rho46(alpha2));
    add("rho12", partial_trace(six, {"1", "2"}), transcribed::rho12(alpha2));
    add("rho357|B1+", outcomes.front().post_state, transcribed::rho357_b1plus(alpha2));
    return out;
}

std::vector<ThresholdInterval> pair_threshold(Branch branch, const std::string &pair,
                                              Predicate predicate,
                                              const ScanOptions &options,
                                              double beta_phase) {
    return scan_threshold(
        [=](double a2) { return pair_marginal(a2, branch, pair, beta_phase); }, predicate,
        options);
}

std::vector<ThresholdInterval> broadcast_intervals(Branch branch, const ScanOptions &options,
                                                   double beta_phase) {
    return scan_threshold(
        [=](double a2) {
            return broadcast_verdict(six_qubit_state(a2, branch, beta_phase)).broadcast;
        },
        "broadcast", options);
}

RangeSummary concurrence_range(const std::string &pair, double lo, double hi,
                               std::size_t samples, double beta_phase) {
    if (!(lo < hi) || samples == 0) {
        throw std::invalid_argument("concurrence_range: need lo < hi and samples > 0");
    }
    RangeSummary s;
    s.c_min = 2.0;
    s.c_max = -1.0;
    for (std::size_t k = 1; k <= samples; ++k) {
        const double a2 = lo + (hi - lo) * static_cast<double>(k) /
                                   static_cast<double>(samples + 1);
        const double c = concurrence(pair_marginal(a2, Branch{}, pair, beta_phase));
        if (c < s.c_min) {
            s.c_min = c;
            s.argmin = a2;
        }
        if (c > s.c_max) {
            s.c_max = c;
            s.argmax = a2;
        }
    }
    s.eof_min = eof(s.c_min);
    s.eof_max = eof(s.c_max);
    return s;
}

std::size_t ReproductionReport::count(const std::string &status) const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [&](const ReportEntry &e) { return e.status == status; }));
}

namespace {

class ReportBuilder {
  public:
    void compare(const std::string &section, const std::string &quantity,
                 std::optional<double> computed, double published, double tolerance,
                 std::string note = {}) {
        ReportEntry e{section, quantity, computed, published, tolerance, "diff", std::move(note)};
        if (computed && std::abs(*computed - published) <= tolerance) {
            e.status = "pass";
        }
        report_.entries.push_back(std::move(e));
    }

    void info(const std::string &section, const std::string &quantity, double computed,
              std::optional<double> published = std::nullopt, std::string note = {}) {
        report_.entries.push_back(
            {section, quantity, computed, published, 0.0, "info", std::move(note)});
    }

    ReproductionReport take() { return std::move(report_); }

  private:
    ReproductionReport report_;
};

std::optional<double> first_lo(const std::vector<ThresholdInterval> &v) {
    return v.empty() ? std::nullopt : std::optional<double>(v.front().lo);
}

std::optional<double> first_hi(const std::vector<ThresholdInterval> &v) {
    return v.empty() ? std::nullopt : std::optional<double>(v.front().hi);
}

std::string describe(const std::vector<ThresholdInterval> &v) {
    if (v.empty()) {
        return "no interval";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s(%.6f, %.6f)", i ? " " : "", v[i].lo, v[i].hi);
        os << buf;
    }
    return os.str();
}

} // namespace

ReproductionReport build_report(const ReportOptions &options) {
    using namespace published;
    const ScanOptions &scan = options.scan;
    const double phase = options.beta_phase;
    const Branch q0q0{};
    ReportBuilder b;

    const ThresholdInterval base = buzek_baseline(scan, phase);
    b.compare("baseline", "rho14 entangled lo", base.lo, baseline_lo(), 0.002);
    b.compare("baseline", "rho14 entangled hi", base.hi, baseline_hi(), 0.002);

    const auto ent = [&](Branch br, const std::string &pair) {
        return pair_threshold(br, pair, Predicate::Entangled, scan, phase);
    };
    const auto r16 = ent(q0q0, "16");
    const auto r46 = ent(q0q0, "46");
    const auto r12 = pair_threshold(q0q0, "12", Predicate::Separable, scan, phase);
    const auto q0q0_bc = broadcast_intervals(q0q0, scan, phase);
    b.compare("Q0Q0", "rho16 entangled lo", first_lo(r16), kNonlocalLo, 0.005, describe(r16));
    b.compare("Q0Q0", "rho14 entangled lo", first_lo(ent(q0q0, "14")), kNonlocalLo, 0.005);
    b.compare("Q0Q0", "rho46 entangled lo", first_lo(r46), kLocalLo, 0.005, describe(r46));
    b.compare("Q0Q0", "rho25 entangled lo", first_lo(ent(q0q0, "25")), kLocalLo, 0.005);
    b.compare("Q0Q0", "rho12 separable lo", first_lo(r12), kSeparableLo, 0.005, describe(r12));
    b.compare("Q0Q0", "broadcast lo", first_lo(q0q0_bc), kBroadcastLo, 0.005,
              describe(q0q0_bc));
    b.compare("Q0Q0", "broadcast hi", first_hi(q0q0_bc), 1.0, 0.005);

    BranchReportOptions bro{scan, phase, 0.5};
    const BranchReport q0q0_report = branch_report(q0q0, bro);
    b.compare("Q0Q0", "rho146 closed lo", first_lo(q0q0_report.rho146_closed_intervals),
              kBroadcastLo, 0.005, describe(q0q0_report.rho146_closed_intervals));
    b.compare("Q0Q0", "rho325 closed lo", first_lo(q0q0_report.rho325_closed_intervals),
              kBroadcastLo, 0.005, describe(q0q0_report.rho325_closed_intervals));

    using M = MachineOutcome;
    const auto q1q1_bc = broadcast_intervals({M::Q1, M::Q1}, scan, phase);
    b.compare("Q1Q1", "broadcast lo", first_lo(q1q1_bc), kQ1Q1Lo, 0.01, describe(q1q1_bc));
    b.compare("Q1Q1", "broadcast hi", first_hi(q1q1_bc), kQ1Q1Hi, 0.01);
    for (Branch br : {Branch{M::Q0, M::Q1}, Branch{M::Q1, M::Q0}}) {
        const auto bc = broadcast_intervals(br, scan, phase);
        b.compare(to_string(br), "broadcast lo (0.60, 1) form", first_lo(bc), kAsymmetricLo,
                  0.01, describe(bc));
        b.compare(to_string(br), "broadcast lo (0.14, 0.40) form", first_lo(bc),
                  kAsymmetricAltLo, 0.01);
        b.compare(to_string(br), "broadcast hi (0.14, 0.40) form", first_hi(bc),
                  kAsymmetricAltHi, 0.01);
    }

    // Branch probabilities at alpha^2 = 1/2 against the squared norms of the
    // published unnormalized branch states.
    const double a2 = 0.5;
    const double probs[] = {(3.0 * a2 + 1.0) / 9.0, 2.0 / 9.0, 2.0 / 9.0,
                            (4.0 - 3.0 * a2) / 9.0};
    const auto branches = all_branches();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        b.compare("branches", "p(" + to_string(branches[i]) + ") at 0.5",
                  branch_probability(a2, branches[i], phase), probs[i], 1e-12);
    }

    if (!q0q0_bc.empty()) {
        const double lo = q0q0_bc.front().lo;
        const double hi = q0q0_bc.front().hi;
        const RangeSummary c16 = concurrence_range("16", lo, hi, 400, phase);
        const RangeSummary c46 = concurrence_range("46", lo, hi, 400, phase);
        b.info("measures", "C(rho16) min", c16.c_min, kC16Min);
        b.info("measures", "C(rho16) max", c16.c_max, kC16Max);
        b.info("measures", "C(rho46) min", c46.c_min, kC46Min);
        b.info("measures", "C(rho46) max", c46.c_max, kC46Max);
        b.info("measures", "EoF(rho16) min", c16.eof_min, kEof16Min);
        b.info("measures", "EoF(rho16) max", c16.eof_max, kEof16Max);
        b.info("measures", "EoF(rho46) min", c46.eof_min, kEof46Min);
        b.info("measures", "EoF(rho46) max", c46.eof_max, kEof46Max,
               "C vanishes as alpha^2 -> 1 (product input)");
    }

    for (double t : {0.3, 0.5, 0.8}) {
        for (const TranscriptionCheck &c : transcription_checks(t)) {
            char q[64];
            std::snprintf(q, sizeof q, "%s deviation at %.1f", c.name.c_str(), t);
            b.compare("transcription", q, c.max_deviation, 0.0, 1e-12);
        }
    }

    const DensityOp source = three_party_source(a2, q0q0, phase);
    for (const BellOutcome &o : bsm(swap_extend(source))) {
        b.info("swap", "p(" + to_string(o.label) + ") at 0.5", o.probability);
    }
    for (PlanSource src : {PlanSource::Derived, PlanSource::Paper}) {
        for (const auto &[label, plan] : correction_plans(source, src)) {
            b.compare("swap", to_string(src) + " " + to_string(label) + " " + plan.word +
                                  " fidelity at 0.5",
                      plan.achieved_fidelity, 1.0, 1e-9);
        }
    }
    return b.take();
}

std::string render_text(const ReproductionReport &report) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-14s %-36s %12s %12s %12s  %-6s %s\n", "section",
                  "quantity", "computed", "published", "delta", "status", "note");
    os << line;
    for (const ReportEntry &e : report.entries) {
        char c[32] = "-", p[32] = "-", d[32] = "-";
        if (e.computed) {
            std::snprintf(c, sizeof c, "%.6g", *e.computed);
        }
        if (e.published) {
            std::snprintf(p, sizeof p, "%.6g", *e.published);
        }
        if (e.computed && e.published) {
            std::snprintf(d, sizeof d, "%+.3g", *e.computed - *e.published);
        }
        std::snprintf(line, sizeof line, "%-14s %-36s %12s %12s %12s  %-6s %s\n",
                      e.section.c_str(), e.quantity.c_str(), c, p, d, e.status.c_str(),
                      e.note.c_str());
        os << line;
    }
    std::snprintf(line, sizeof line, "summary: %zu pass, %zu diff, %zu info\n",
                  report.count("pass"), report.count("diff"), report.count("info"));
    os << line;
    return os.str();
}

} // namespace qbroadcast
