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
#include "qbroadcast/protocol.hpp"

#include <array>
#include <random>
#include <tuple>

#include "qbroadcast/tolerances.hpp"

namespace qbroadcast {

namespace {

std::size_t branch_index(Branch b) {
    return 2 * static_cast<std::size_t>(b.alice) + static_cast<std::size_t>(b.bob);
}

std::vector<Label> split_pair(const std::string &name) {
    std::vector<Label> labels;
    for (char c : name) {
        labels.emplace_back(1, c);
    }
    return labels;
}

const BranchOutcome &select(const FirstStage &stage, Branch branch) {
    const BranchOutcome &outcome = stage.branches[branch_index(branch)];
    if (!outcome.state) {
        throw NumericalError("branch " + to_string(branch) + " has zero probability");
    }
    return outcome;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    return rng();
}

} // namespace

PureState build_initial(double alpha, double beta_phase) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("build_initial: alpha must lie strictly between 0 and 1");
    }
    return entangled_pair(alpha * alpha, beta_phase, "1", "3");
}

FirstStage run_first_stage(const PureState &psi13) {
    if (psi13.reg().labels() != std::vector<Label>{"1", "3"}) {
        throw std::invalid_argument("run_first_stage: expected a state on qubits (1, 3)");
    }
    PureState state = clone_subsystem(psi13, "1", {"1", "2"}, "A1");
    state = clone_subsystem(state, "3", {"3", "4"}, "B1");
    auto branches = machine_branches(state, {"A1", "B1"});
    return {std::move(state), std::move(branches)};
}

DensityOp run_second_stage(const PureState &zeta) {
    PureState state = clone_subsystem(zeta, "2", {"2", "5"}, "A2");
    state = clone_subsystem(state, "4", {"4", "6"}, "B2");
    return partial_trace(state, kSixQubitLabels);
}

DensityOp run_second_stage(const DensityOp &zeta) {
    DensityOp rho = clone_subsystem(zeta, "2", {"2", "5"}, "A2");
    rho = clone_subsystem(rho, "4", {"4", "6"}, "B2");
    return partial_trace(rho, kSixQubitLabels);
}

DensityOp six_qubit_state(double alpha2, Branch branch, double beta_phase) {
    const FirstStage stage =
        run_first_stage(entangled_pair(alpha2, beta_phase, "1", "3"));
    return run_second_stage(*select(stage, branch).state);
}

DensityOp unmeasured_six_qubit_state(double alpha2, double beta_phase) {
    const FirstStage stage =
        run_first_stage(entangled_pair(alpha2, beta_phase, "1", "3"));
    PureState state = clone_subsystem(stage.state, "2", {"2", "5"}, "A2");
    state = clone_subsystem(state, "4", {"4", "6"}, "B2");
    return partial_trace(state, kSixQubitLabels);
}

double branch_probability(double alpha2, Branch branch, double beta_phase) {
    const FirstStage stage =
        run_first_stage(entangled_pair(alpha2, beta_phase, "1", "3"));
    return stage.branches[branch_index(branch)].probability;
}

Marginals extract_marginals(const DensityOp &six) {
    Marginals m;
    for (const auto &name : kMarginalPairs) {
        m.pairs.emplace(name, partial_trace(six, split_pair(name)));
    }
    m.triples.emplace("146", partial_trace(six, {"1", "4", "6"}));
    m.triples.emplace("325", partial_trace(six, {"3", "2", "5"}));
    return m;
}

DensityOp pair_marginal(double alpha2, Branch branch, const std::string &pair,
                        double beta_phase) {
    return partial_trace(six_qubit_state(alpha2, branch, beta_phase), split_pair(pair));
}

BranchReport branch_report(Branch branch, const BranchReportOptions &options) {
    BranchReport report;
    report.branch = branch;
    report.reference_alpha2 = options.reference_alpha2;
    report.probability =
        branch_probability(options.reference_alpha2, branch, options.beta_phase);

    const double phase = options.beta_phase;
    report.broadcast_intervals = scan_threshold(
        [=](double a2) {
            return broadcast_verdict(six_qubit_state(a2, branch, phase)).broadcast;
        },
        "broadcast", options.scan);
    report.rho146_closed_intervals = scan_threshold(
        [=](double a2) {
            return classify_triple(
                       partial_trace(six_qubit_state(a2, branch, phase), {"1", "4", "6"}))
                .closed;
        },
        "closed", options.scan);
    report.rho325_closed_intervals = scan_threshold(
        [=](double a2) {
            return classify_triple(
                       partial_trace(six_qubit_state(a2, branch, phase), {"3", "2", "5"}))
                .closed;
        },
        "closed", options.scan);
    return report;
}

ProtocolRun run_protocol(double alpha2, double beta_phase, const ProtocolOptions &options) {
    const FirstStage stage =
        run_first_stage(entangled_pair(alpha2, beta_phase, "1", "3"));

    Branch branch = options.fixed_branch;
    if (options.policy == BranchPolicy::Sampled) {
        std::mt19937_64 rng(derive_seed(options.seed, 0));
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0.0;
        for (const auto &outcome : stage.branches) {
            if (outcome.probability < tol::kZeroProbability) {
                continue;
            }
            branch = outcome.branch;
            acc += outcome.probability;
            if (u < acc) {
                break;
            }
        }
    }
    const BranchOutcome &chosen = select(stage, branch);

    ProtocolRun run{alpha2,
                    beta_phase,
                    branch,
                    chosen.probability,
                    run_second_stage(*chosen.state),
                    {},
                    false};

    // Alice measures first and reports to Bob, then Bob reports back.
    const std::array<std::tuple<std::string, std::string, MachineOutcome>, 2> sends{{
        {"Alice", "Bob", branch.alice},
        {"Bob", "Alice", branch.bob},
    }};
    for (std::size_t i = 0; i < sends.size(); ++i) {
        const auto &[from, to, outcome] = sends[i];
        gv::GvConfig channel = options.channel;
        channel.seed = derive_seed(options.seed, i + 1);
        MessageEntry entry{from, to,
                           "machine outcome " + to_string(outcome) + " via GV channel",
                           gv::secure_send(outcome, options.eve, channel, from, to)};
        run.compromised = run.compromised || entry.delivery.compromised;
        run.message_log.push_back(std::move(entry));
    }
    return run;
}

} // namespace qbroadcast
