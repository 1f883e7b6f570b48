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
#pragma once

/**
 * @file cloner.hpp
 * The symmetric 1 -> 2 universal (Buzek-Hillery) cloner.
 *
 *   |0> -> sqrt(2/3)|00>|Q0> + sqrt(1/3)|psi+>|Q1>
 *   |1> -> sqrt(2/3)|11>|Q1> + sqrt(1/3)|psi+>|Q0>
 *
 * with |psi+> = (|01> + |10>)/sqrt(2). The machine is a qubit spanned by
 * the orthogonal states |Q0>, |Q1>.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbroadcast/entanglement.hpp"
#include "qbroadcast/qstate.hpp"

namespace qbroadcast {

enum class MachineOutcome { Q0 = 0, Q1 = 1 };

/// Joint machine outcome: Alice's reading, then Bob's.
struct Branch {
    MachineOutcome alice = MachineOutcome::Q0;
    MachineOutcome bob = MachineOutcome::Q0;

    friend bool operator==(const Branch &, const Branch &) = default;
};

/// "Q0Q0", "Q0Q1", "Q1Q0", "Q1Q1"
std::string to_string(Branch b);
std::string to_string(MachineOutcome m);
/// Accepts the strings produced by to_string; nullopt otherwise.
std::optional<Branch> parse_branch(const std::string &text);

/// The four outcomes in the order Q0Q0, Q0Q1, Q1Q0, Q1Q1.
std::vector<Branch> all_branches();

struct BranchOutcome {
    Branch branch;
    double probability = 0.0;
    std::optional<PureState> state; ///< empty for zero-probability outcomes
};

/// 8 x 2 isometry; output rows ordered (copy a, copy b, machine).
CMatrix bh_isometry();

/// Replaces `label` by (copy_labels.first, copy_labels.second, machine_label).
PureState clone_subsystem(const PureState &state, const Label &label,
                          const std::pair<Label, Label> &copy_labels,
                          const Label &machine_label);

DensityOp clone_subsystem(const DensityOp &rho, const Label &label,
                          const std::pair<Label, Label> &copy_labels,
                          const Label &machine_label);

/**
 * @brief Measures Alice's and Bob's machine registers in {|Q0>, |Q1>}.
 *
 * `machine_labels` is (Alice's machine, Bob's machine). Branch states live
 * on the remaining subsystems.
 */
std::vector<BranchOutcome>
machine_branches(const PureState &state, const std::pair<Label, Label> &machine_labels);

/// alpha|00> + beta|11> on (first, second), beta = sqrt(1 - alpha2) e^{i phase}.
/// Endpoints are allowed (product states), so sweeps can include alpha^2 = 0, 1.
/// @throws std::invalid_argument unless 0 <= alpha2 <= 1.
PureState entangled_pair(double alpha2, double beta_phase, const Label &first,
                         const Label &second);

/// Nonlocal pair (1, 4) after one cloning stage on each side of
/// entangled_pair(alpha2, phase, "1", "3"), machines traced out.
DensityOp baseline_nonlocal_pair(double alpha2, double beta_phase = 0.0);

/**
 * @brief alpha^2 interval on which the single-stage nonlocal pair is
 * PPT-entangled.
 *
 * Returns the single interval found by the scan; throws NumericalError if the
 * scan finds none or several.
 */
ThresholdInterval buzek_baseline(const ScanOptions &options = {}, double beta_phase = 0.0);

} // namespace qbroadcast
