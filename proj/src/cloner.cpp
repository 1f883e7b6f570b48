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
#include "qbroadcast/cloner.hpp"

#include <cmath>

namespace qbroadcast {

std::string to_string(MachineOutcome m) { return m == MachineOutcome::Q0 ? "Q0" : "Q1"; }

std::string to_string(Branch b) { return to_string(b.alice) + to_string(b.bob); }

std::optional<Branch> parse_branch(const std::string &text) {
    for (const Branch &b : all_branches()) {
        if (to_string(b) == text) {
            return b;
        }
    }
    return std::nullopt;
}

std::vector<Branch> all_branches() {
    using M = MachineOutcome;
    return {{M::Q0, M::Q0}, {M::Q0, M::Q1}, {M::Q1, M::Q0}, {M::Q1, M::Q1}};
}

CMatrix bh_isometry() {
    const double big = std::sqrt(2.0 / 3.0);
    const double small = std::sqrt(1.0 / 6.0); // (1/sqrt3) * (1/sqrt2)
    // row = 4 * copy_a + 2 * copy_b + machine
    CMatrix v(8, 2);
    v(0b000, 0) = big;   // |00>|Q0>
    v(0b011, 0) = small; // |01>|Q1>
    v(0b101, 0) = small; // |10>|Q1>
    v(0b111, 1) = big;   // |11>|Q1>
    v(0b010, 1) = small; // |01>|Q0>
    v(0b100, 1) = small; // |10>|Q0>
    return v;
}

PureState clone_subsystem(const PureState &state, const Label &label,
                          const std::pair<Label, Label> &copy_labels,
                          const Label &machine_label) {
    return apply_isometry(state, bh_isometry(), label,
                          {copy_labels.first, copy_labels.second, machine_label});
}

DensityOp clone_subsystem(const DensityOp &rho, const Label &label,
                          const std::pair<Label, Label> &copy_labels,
                          const Label &machine_label) {
    return apply_isometry(rho, bh_isometry(), label,
                          {copy_labels.first, copy_labels.second, machine_label});
}

std::vector<BranchOutcome>
machine_branches(const PureState &state, const std::pair<Label, Label> &machine_labels) {
    std::vector<std::pair<std::string, CMatrix>> projectors;
    for (const Branch &b : all_branches()) {
        const std::size_t index =
            2 * static_cast<std::size_t>(b.alice) + static_cast<std::size_t>(b.bob);
        const CMatrix e = CMatrix::basis(4, index);
        projectors.emplace_back(to_string(b), outer(e, e));
    }
    auto measured = projective_measure(state, projectors,
                                       {machine_labels.first, machine_labels.second});
    std::vector<BranchOutcome> out;
    const auto branches = all_branches();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        out.push_back({branches[i], measured[i].probability, std::move(measured[i].state)});
    }
    return out;
}

PureState entangled_pair(double alpha2, double beta_phase, const Label &first,
                         const Label &second) {
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
        throw std::invalid_argument("alpha^2 must lie in [0, 1]");
    }
    const double alpha = std::sqrt(alpha2);
    const Complex beta = std::polar(std::sqrt(1.0 - alpha2), beta_phase);
    return PureState(Register::qubits({first, second}), {alpha, 0.0, 0.0, beta});
}

DensityOp baseline_nonlocal_pair(double alpha2, double beta_phase) {
    PureState psi = entangled_pair(alpha2, beta_phase, "1", "3");
    psi = clone_subsystem(psi, "1", {"1", "2"}, "A");
    psi = clone_subsystem(psi, "3", {"3", "4"}, "B");
    return partial_trace(psi, {"1", "4"});
}

ThresholdInterval buzek_baseline(const ScanOptions &options, double beta_phase) {
    auto intervals = scan_threshold(
        [beta_phase](double a2) { return baseline_nonlocal_pair(a2, beta_phase); },
        Predicate::Entangled, options);
    if (intervals.size() != 1) {
        throw NumericalError("buzek_baseline: expected one inseparability interval, found " +
                             std::to_string(intervals.size()));
    }
    return intervals.front();
}

} // namespace qbroadcast
