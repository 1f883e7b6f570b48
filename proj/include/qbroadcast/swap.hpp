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
 * @file swap.hpp
 * Three-party extension by entanglement swapping.
 *
 * Alice shares the singlet (|01> - |10>)/sqrt(2) on (8, 7) with Carol, who
 * holds 7. A Bell measurement on (2, 8) teleports the role of qubit 2 onto
 * qubit 7, so the recovery target is rho325 with 2 renamed to 7, laid out as
 * (3, 5, 7).
 */

#include <map>
#include <string>
#include <vector>

#include "qbroadcast/cloner.hpp"
#include "qbroadcast/qstate.hpp"

namespace qbroadcast {

/// B1+- = (|00> +- |11>)/sqrt(2), B2+- = (|01> +- |10>)/sqrt(2) on (2, 8).
enum class BellLabel { B1Plus, B1Minus, B2Plus, B2Minus };

std::string to_string(BellLabel b); ///< "B1+", "B1-", "B2+", "B2-"
std::optional<BellLabel> parse_bell_label(const std::string &text);
std::vector<BellLabel> all_bell_labels();

/// Bell vector as a 4x1 column in the (2, 8) basis.
CMatrix bell_vector(BellLabel b);

struct BellOutcome {
    BellLabel label;
    CMatrix projector; ///< 4x4 on (2, 8)
    double probability = 0.0;
    DensityOp post_state; ///< normalized, on (3, 5, 7)
};

/// Three-qubit source state: the (3, 2, 5) marginal of a branch's six-qubit state.
DensityOp three_party_source(double alpha2, Branch branch = {}, double beta_phase = 0.0);

/// rho325 (x) |psi-><psi-| on (8, 7); output register (3, 2, 5, 8, 7).
/// @throws std::invalid_argument unless the input register is exactly {3, 2, 5}.
DensityOp swap_extend(const DensityOp &rho325);

/// Bell measurement on (2, 8) of a state holding labels {3, 2, 5, 8, 7}.
std::vector<BellOutcome> bsm(const DensityOp &joint);

/// rho325 with 2 renamed to 7, ordered (3, 5, 7).
DensityOp recovery_target(const DensityOp &rho325);

/// Tensor product of single-qubit Paulis on (3, 5, 7), e.g. "IIX".
CMatrix pauli_word(const std::string &word);

enum class PlanSource { Paper, Derived };
std::string to_string(PlanSource s);
std::optional<PlanSource> parse_plan_source(const std::string &text);

struct CorrectionPlan {
    BellLabel label;
    CMatrix unitary; ///< 8x8 on (3, 5, 7)
    std::string word;
    PlanSource source = PlanSource::Derived;
    double achieved_fidelity = 0.0;
};

/**
 * @brief The published corrections for each outcome.
 *
 * B1+ -> Z on 5 and X on 7, B1- -> X on 7, B2+ -> Z on 7, B2- -> identity.
 */
std::map<BellLabel, CMatrix> paper_corrections();

/// Pauli word of each published correction, e.g. "IZX".
std::map<BellLabel, std::string> paper_correction_words();

/**
 * @brief Brute-force search over the 64 Pauli words on (3, 5, 7).
 *
 * Picks the word of highest recovery fidelity; words within tol::kEquality
 * of the best tie, and the lexicographically smallest (I < X < Y < Z, qubit
 * order 3, 5, 7) wins. Global phases are ignored.
 */
std::map<BellLabel, CorrectionPlan> derive_corrections(const DensityOp &rho325);

/// Plans from either source with achieved_fidelity filled in.
std::map<BellLabel, CorrectionPlan> correction_plans(const DensityOp &rho325,
                                                     PlanSource source);

/// Recovery fidelity per outcome for the given plan source.
std::map<BellLabel, double> verify_recovery(const DensityOp &rho325, PlanSource source);

/// Post-measurement state after applying `unitary` on (3, 5, 7).
DensityOp corrected_state(const BellOutcome &outcome, const CMatrix &unitary);

} // namespace qbroadcast
