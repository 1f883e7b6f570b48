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
#include "qbroadcast/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "qbroadcast/tolerances.hpp"

namespace qbroadcast {

namespace {

void require_two_qubits(const DensityOp &rho, const char *what) {
    const auto &subs = rho.reg().subsystems();
    if (subs.size() != 2 || subs[0].dim != 2 || subs[1].dim != 2) {
        throw std::invalid_argument(std::string(what) +
                                    ": expected a two-qubit operator");
    }
}

double real_checked(Complex z, const char *what) {
    if (std::abs(z.imag()) > tol::kHermitian) {
        std::ostringstream msg;
        msg << what << ": imaginary residue " << z.imag();
        throw NumericalError(msg.str());
    }
    return z.real();
}

std::vector<bool> evaluate_grid(const Alpha2Predicate &holds,
                                const std::vector<double> &xs, bool parallel) {
    // std::vector<bool> is not safe for concurrent writes to distinct slots.
    std::vector<char> out(xs.size(), 0);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        parallel ? std::min<std::size_t>(hw, xs.size()) : std::size_t{1};
    if (workers <= 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[i] = holds(xs[i]) ? 1 : 0;
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < xs.size(); i += workers) {
                    out[i] = holds(xs[i]) ? 1 : 0;
                }
            });
        }
    }
    return {out.begin(), out.end()};
}

/// Bisects a bracket [inside, outside] (in either order on the line) whose
/// ends disagree on `holds`; returns the bracket midpoint once narrower than tol.
double refine(const Alpha2Predicate &holds, double a, double b, double tol) {
    const bool at_a = holds(a);
    while (std::abs(b - a) > tol) {
        const double mid = 0.5 * (a + b);
        if (holds(mid) == at_a) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

PPTVerdict ppt_verdict(const DensityOp &rho) {
    require_two_qubits(rho, "ppt_verdict");
    const CMatrix pt = partial_transpose(rho, rho.reg().subsystems()[1].label);

    PPTVerdict v;
    v.min_pt_eigenvalue = eigvals_hermitian(pt).front();
    v.w4 = real_checked(det_complex(pt), "ppt_verdict W4");
    CMatrix minor(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            minor(r, c) = pt(r, c);
        }
    }
    v.w3 = real_checked(det_complex(minor), "ppt_verdict W3");
    v.entangled = v.min_pt_eigenvalue < -tol::kPpt;
    return v;
}

std::optional<std::string> determinant_disagreement(const PPTVerdict &v) {
    const bool by_determinant = v.w3 < -tol::kPpt || v.w4 < -tol::kPpt;
    if (by_determinant == v.entangled) {
        return std::nullopt;
    }
    std::ostringstream msg;
    msg.precision(6);
    msg << "eigenvalue test says " << (v.entangled ? "entangled" : "separable")
        << " (min eigenvalue " << v.min_pt_eigenvalue << ") but W3=" << v.w3
        << ", W4=" << v.w4;
    return msg.str();
}

double concurrence(const DensityOp &rho) {
    require_two_qubits(rho, "concurrence");
    const CMatrix yy = kron(pauli_y(), pauli_y());
    const CMatrix root = sqrt_psd(rho.matrix());
    // sqrt(rho~) = (Y x Y) sqrt(rho)* (Y x Y) since Y x Y is a Hermitian unitary.
    const CMatrix root_tilde = yy * root.conj() * yy;
    const auto lambda = singular_values(root * root_tilde);
    const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    return std::clamp(c, 0.0, 1.0);
}

double eof(double c) {
    if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
        throw std::invalid_argument("eof: concurrence outside [0, 1]");
    }
    c = std::clamp(c, 0.0, 1.0);
    if (c == 0.0) {
        return 0.0;
    }
    const double root = std::sqrt(1.0 - c * c);
    const double p = 0.5 * (1.0 + root);
    const double q = 0.5 * (1.0 - root);
    double h = -p * std::log2(p);
    if (q > 0.0) {
        h -= q * std::log2(q);
    }
    return h;
}

MeasureReport entanglement_measures(const DensityOp &rho) {
    const double c = concurrence(rho);
    return {c, eof(c)};
}

std::string to_string(Predicate p) {
    return p == Predicate::Entangled ? "entangled" : "separable";
}

std::vector<ThresholdInterval> scan_threshold(const Alpha2Predicate &holds,
                                              const std::string &predicate_name,
                                              const ScanOptions &options) {
    if (options.grid < 50) {
        throw std::invalid_argument("scan_threshold: grid must be at least 50");
    }
    if (!(options.tol > 0.0 && options.tol < 0.01)) {
        throw std::invalid_argument("scan_threshold: tol must lie in (0, 0.01)");
    }
    const double edge = options.tol;
    std::vector<double> xs(options.grid);
    for (std::size_t k = 0; k < options.grid; ++k) {
        xs[k] = edge + (1.0 - 2.0 * edge) * static_cast<double>(k) /
                           static_cast<double>(options.grid - 1);
    }
    const auto values = evaluate_grid(holds, xs, options.parallel);

    std::vector<ThresholdInterval> intervals;
    std::size_t k = 0;
    while (k < xs.size()) {
        if (!values[k]) {
            ++k;
            continue;
        }
        const std::size_t start = k;
        while (k < xs.size() && values[k]) {
            ++k;
        }
        const std::size_t last = k - 1;
        ThresholdInterval interval;
        interval.tolerance = options.tol;
        interval.predicate_name = predicate_name;
        interval.lo = start == 0 ? 0.0 : refine(holds, xs[start - 1], xs[start], options.tol);
        interval.hi =
            last + 1 == xs.size() ? 1.0 : refine(holds, xs[last], xs[last + 1], options.tol);
        intervals.push_back(interval);
    }
    return intervals;
}

std::vector<ThresholdInterval> scan_threshold(const Alpha2Family &family,
                                              Predicate predicate,
                                              const ScanOptions &options) {
    const bool want_entangled = predicate == Predicate::Entangled;
    return scan_threshold(
        [&](double a2) { return ppt_verdict(family(a2)).entangled == want_entangled; },
        to_string(predicate), options);
}

TripleReport classify_triple(const DensityOp &rho) {
    const auto &subs = rho.reg().subsystems();
    if (subs.size() != 3 ||
        std::any_of(subs.begin(), subs.end(), [](const Subsystem &s) { return s.dim != 2; })) {
        throw std::invalid_argument("classify_triple: expected a three-qubit operator");
    }
    const auto labels = rho.reg().labels();
    const std::array<std::pair<std::size_t, std::size_t>, 3> idx{{{0, 1}, {1, 2}, {0, 2}}};
    TripleReport report;
    report.closed = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto &a = labels[idx[i].first];
        const auto &b = labels[idx[i].second];
        report.pairs[i] = {a, b, ppt_verdict(partial_trace(rho, {a, b}))};
        report.closed = report.closed && report.pairs[i].verdict.entangled;
    }
    return report;
}

namespace {

struct PairRule {
    const char *first;
    const char *second;
    bool entangled;
};

constexpr std::array<PairRule, 10> kBroadcastRules{{
    {"1", "2", false},
    {"1", "5", false},
    {"3", "4", false},
    {"3", "6", false},
    {"2", "5", true},
    {"4", "6", true},
    {"2", "3", true},
    {"3", "5", true},
    {"1", "4", true},
    {"1", "6", true},
}};

template <class Marginal>
BroadcastReport broadcast_from(const Register &reg, Marginal marginal) {
    for (const char *label : {"1", "2", "3", "4", "5", "6"}) {
        if (!reg.contains(label)) {
            throw std::invalid_argument(std::string("broadcast_verdict: missing label ") +
                                        label);
        }
    }
    BroadcastReport report;
    report.broadcast = true;
    for (const auto &rule : kBroadcastRules) {
        BroadcastRequirement req;
        req.first = rule.first;
        req.second = rule.second;
        req.must_be_entangled = rule.entangled;
        req.verdict = ppt_verdict(marginal({req.first, req.second}));
        req.satisfied = req.verdict.entangled == rule.entangled;
        report.broadcast = report.broadcast && req.satisfied;
        report.requirements.push_back(std::move(req));
    }
    return report;
}

} // namespace

BroadcastReport broadcast_verdict(const DensityOp &six_qubit) {
    return broadcast_from(six_qubit.reg(), [&](const std::vector<Label> &keep) {
        return partial_trace(six_qubit, keep);
    });
}

BroadcastReport broadcast_verdict(const PureState &state) {
    return broadcast_from(state.reg(), [&](const std::vector<Label> &keep) {
        return partial_trace(state, keep);
    });
}

} // namespace qbroadcast
