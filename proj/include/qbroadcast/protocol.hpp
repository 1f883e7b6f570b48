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
 * @file protocol.hpp
 * Two-party broadcasting of three-qubit entanglement.
 *
 * Qubit labels: Alice holds 1, 2, 5 and Bob holds 3, 4, 6. The first cloning
 * stage copies 1 -> (1, 2) with machine A1 and 3 -> (3, 4) with machine B1;
 * both machines are measured. The second stage copies 2 -> (2, 5) with A2 and
 * 4 -> (4, 6) with B2; those machines are traced out, never measured.
 */

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qbroadcast/cloner.hpp"
#include "qbroadcast/entanglement.hpp"
#include "qbroadcast/gvchannel.hpp"

namespace qbroadcast {

/// Six-qubit register layout used throughout: Alice's qubits, then Bob's.
inline const std::vector<Label> kSixQubitLabels{"1", "2", "5", "3", "4", "6"};

/// alpha|00> + beta|11> on qubits (1, 3), beta = sqrt(1 - alpha^2) e^{i phase}.
/// @throws std::invalid_argument unless 0 < alpha < 1.
PureState build_initial(double alpha, double beta_phase = 0.0);

struct FirstStage {
    PureState state; ///< register (1, 2, A1, 3, 4, B1)
    std::vector<BranchOutcome> branches;
};

FirstStage run_first_stage(const PureState &psi13);

/// Clones 2 and 4 of a normalized state on (1, 2, 3, 4), traces out both
/// machines and returns the operator on kSixQubitLabels.
DensityOp run_second_stage(const PureState &zeta);

/// Mixed-input variant (the register may also carry first-stage machines,
/// which are traced out along with the second-stage ones).
DensityOp run_second_stage(const DensityOp &zeta);

/// Postselected six-qubit state for one machine branch at alpha^2.
DensityOp six_qubit_state(double alpha2, Branch branch, double beta_phase = 0.0);

/// Six-qubit state with the first-stage machines traced out instead of measured.
DensityOp unmeasured_six_qubit_state(double alpha2, double beta_phase = 0.0);

/// Probability of `branch` at alpha^2.
double branch_probability(double alpha2, Branch branch, double beta_phase = 0.0);

/// Pair names used by extract_marginals, e.g. "12", "46".
inline const std::vector<std::string> kMarginalPairs{"12", "15", "34", "36", "25",
                                                      "46", "23", "35", "14", "16"};

struct Marginals {
    std::map<std::string, DensityOp> pairs;   ///< keyed "12", "15", ...
    std::map<std::string, DensityOp> triples; ///< "146" on (1,4,6), "325" on (3,2,5)
};

Marginals extract_marginals(const DensityOp &six);

/// Two-qubit marginal of the branch state named like "16" (labels in order).
DensityOp pair_marginal(double alpha2, Branch branch, const std::string &pair,
                        double beta_phase = 0.0);

struct BranchReport {
    Branch branch;
    double reference_alpha2 = 0.5;
    double probability = 0.0; ///< branch probability at reference_alpha2
    std::vector<ThresholdInterval> broadcast_intervals;
    std::vector<ThresholdInterval> rho146_closed_intervals;
    std::vector<ThresholdInterval> rho325_closed_intervals;
};

struct BranchReportOptions {
    ScanOptions scan;
    double beta_phase = 0.0;
    double reference_alpha2 = 0.5;
};

BranchReport branch_report(Branch branch, const BranchReportOptions &options = {});

struct MessageEntry {
    std::string sender;
    std::string receiver;
    std::string payload; ///< e.g. "machine outcome Q0 via GV channel"
    gv::DeliveryRecord delivery;
};

enum class BranchPolicy { Fixed, Sampled };

struct ProtocolOptions {
    BranchPolicy policy = BranchPolicy::Fixed;
    Branch fixed_branch{};          ///< used when policy == Fixed
    std::uint64_t seed = 0;         ///< branch sampling and channel seeds
    gv::EveStrategy eve = gv::EveStrategy::None;
    gv::GvConfig channel{};         ///< channel.seed is derived from `seed`
};

struct ProtocolRun {
    double alpha2 = 0.0;
    double beta_phase = 0.0;
    Branch branch;
    double branch_probability = 0.0;
    DensityOp six_qubit_state;
    std::vector<MessageEntry> message_log;
    bool compromised = false;
};

/**
 * @brief Runs the two-party protocol end to end.
 *
 * With the sampled policy the branch is drawn from the machine-outcome
 * distribution using `seed`. The log always holds two transmissions, Alice's
 * outcome to Bob and then Bob's outcome to Alice.
 */
ProtocolRun run_protocol(double alpha2, double beta_phase, const ProtocolOptions &options);

} // namespace qbroadcast
