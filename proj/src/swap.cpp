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
#include "qbroadcast/swap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbroadcast/protocol.hpp"
#include "qbroadcast/tolerances.hpp"

namespace qbroadcast {

namespace {

const std::vector<Label> kSourceLabels{"3", "2", "5"};
const std::vector<Label> kJointLabels{"3", "2", "5", "8", "7"};
const std::vector<Label> kPostLabels{"3", "5", "7"};

bool same_label_set(std::vector<Label> a, std::vector<Label> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

DensityOp checked_source(const DensityOp &rho325) {
    if (!same_label_set(rho325.labels(), kSourceLabels)) {
        throw std::invalid_argument("expected a state on qubits {3, 2, 5}");
    }
    return permute(rho325, kSourceLabels);
}

CMatrix single_pauli(char c) {
    switch (c) {
    case 'I':
        return CMatrix::identity(2);
    case 'X':
        return pauli_x();
    case 'Y':
        return pauli_y();
    case 'Z':
        return pauli_z();
    default:
        throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
    }
}

std::vector<std::string> all_words() {
    static const std::string kLetters = "IXYZ";
    std::vector<std::string> words;
    for (char a : kLetters) {
        for (char b : kLetters) {
            for (char c : kLetters) {
                words.push_back({a, b, c});
            }
        }
    }
    return words;
}

double recovery_fidelity(const BellOutcome &outcome, const CMatrix &unitary,
                         const DensityOp &target) {
    return fidelity(corrected_state(outcome, unitary).matrix(), target.matrix());
}

} // namespace

std::string to_string(BellLabel b) {
    switch (b) {
    case BellLabel::B1Plus:
        return "B1+";
    case BellLabel::B1Minus:
        return "B1-";
    case BellLabel::B2Plus:
        return "B2+";
    case BellLabel::B2Minus:
        return "B2-";
    }
    return "?";
}

std::optional<BellLabel> parse_bell_label(const std::string &text) {
    for (BellLabel b : all_bell_labels()) {
        if (to_string(b) == text) {
            return b;
        }
    }
    return std::nullopt;
}

std::vector<BellLabel> all_bell_labels() {
    return {BellLabel::B1Plus, BellLabel::B1Minus, BellLabel::B2Plus, BellLabel::B2Minus};
}

CMatrix bell_vector(BellLabel b) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (b) {
    case BellLabel::B1Plus:
        return CMatrix::column({h, 0.0, 0.0, h});
    case BellLabel::B1Minus:
        return CMatrix::column({h, 0.0, 0.0, -h});
    case BellLabel::B2Plus:
        return CMatrix::column({0.0, h, h, 0.0});
    case BellLabel::B2Minus:
        return CMatrix::column({0.0, h, -h, 0.0});
    }
    throw std::invalid_argument("bell_vector: unknown label");
}

DensityOp three_party_source(double alpha2, Branch branch, double beta_phase) {
    return partial_trace(six_qubit_state(alpha2, branch, beta_phase), kSourceLabels);
}

DensityOp swap_extend(const DensityOp &rho325) {
    const double h = 1.0 / std::sqrt(2.0);
    const PureState singlet(Register::qubits({"8", "7"}), {0.0, h, -h, 0.0});
    return tensor(checked_source(rho325), DensityOp::from_pure(singlet));
}

std::vector<BellOutcome> bsm(const DensityOp &joint) {
    if (!same_label_set(joint.labels(), kJointLabels)) {
        throw std::invalid_argument("bsm: expected a state on qubits {3, 2, 5, 8, 7}");
    }
    // Layout (2, 8 | 3, 5, 7): row = 8 * bell_index + rest.
    const CMatrix rho = permute(joint, {"2", "8", "3", "5", "7"}).matrix();
    std::vector<BellOutcome> out;
    for (BellLabel label : all_bell_labels()) {
        const CMatrix v = bell_vector(label);
        CMatrix m(8, 8);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                const Complex w = std::conj(v(i, 0)) * v(j, 0);
                if (w == Complex{}) {
                    continue;
                }
                for (std::size_t r = 0; r < 8; ++r) {
                    for (std::size_t c = 0; c < 8; ++c) {
                        m(r, c) += w * rho(8 * i + r, 8 * j + c);
                    }
                }
            }
        }
        const double p = m.trace().real();
        if (p < tol::kZeroProbability) {
            throw NumericalError("bsm: outcome " + to_string(label) + " has zero probability");
        }
        m *= 1.0 / p;
        out.push_back({label, outer(v, v), p,
                       DensityOp(Register::qubits(kPostLabels), hermitian_part(m))});
    }
    return out;
}

DensityOp recovery_target(const DensityOp &rho325) {
    return permute(relabel(checked_source(rho325), {{"2", "7"}}), kPostLabels);
}

CMatrix pauli_word(const std::string &word) {
    if (word.size() != 3) {
        throw std::invalid_argument("pauli_word: expected three letters");
    }
    return kron(kron(single_pauli(word[0]), single_pauli(word[1])), single_pauli(word[2]));
}

std::string to_string(PlanSource s) { return s == PlanSource::Paper ? "paper" : "derived"; }

std::optional<PlanSource> parse_plan_source(const std::string &text) {
    if (text == "paper") {
        return PlanSource::Paper;
    }
    if (text == "derived") {
        return PlanSource::Derived;
    }
    return std::nullopt;
}

std::map<BellLabel, std::string> paper_correction_words() {
    return {{BellLabel::B1Plus, "IZX"},
            {BellLabel::B1Minus, "IIX"},
            {BellLabel::B2Plus, "IIZ"},
            {BellLabel::B2Minus, "III"}};
}

std::map<BellLabel, CMatrix> paper_corrections() {
    std::map<BellLabel, CMatrix> out;
    for (const auto &[label, word] : paper_correction_words()) {
        out.emplace(label, pauli_word(word));
    }
    return out;
}

DensityOp corrected_state(const BellOutcome &outcome, const CMatrix &unitary) {
    return DensityOp(outcome.post_state.reg(),
                     hermitian_part(unitary * outcome.post_state.matrix() * unitary.adjoint()));
}

std::map<BellLabel, CorrectionPlan> derive_corrections(const DensityOp &rho325) {
    const DensityOp target = recovery_target(rho325);
    const auto outcomes = bsm(swap_extend(rho325));
    const auto words = all_words();

    std::map<BellLabel, CorrectionPlan> plans;
    for (const BellOutcome &outcome : outcomes) {
        std::vector<double> fids;
        fids.reserve(words.size());
        for (const auto &w : words) {
            fids.push_back(recovery_fidelity(outcome, pauli_word(w), target));
        }
        const double best = *std::max_element(fids.begin(), fids.end());
        // words are generated in lexicographic order, so the first near-best wins
        std::size_t pick = 0;
        while (fids[pick] < best - tol::kEquality) {
            ++pick;
        }
        plans.emplace(outcome.label, CorrectionPlan{outcome.label, pauli_word(words[pick]),
                                                    words[pick], PlanSource::Derived,
                                                    fids[pick]});
    }
    return plans;
}

std::map<BellLabel, CorrectionPlan> correction_plans(const DensityOp &rho325,
                                                     PlanSource source) {
    if (source == PlanSource::Derived) {
        return derive_corrections(rho325);
    }
    const DensityOp target = recovery_target(rho325);
    const auto words = paper_correction_words();
    std::map<BellLabel, CorrectionPlan> plans;
    for (const BellOutcome &outcome : bsm(swap_extend(rho325))) {
        const std::string &w = words.at(outcome.label);
        const CMatrix u = pauli_word(w);
        plans.emplace(outcome.label,
                      CorrectionPlan{outcome.label, u, w, PlanSource::Paper,
                                     recovery_fidelity(outcome, u, target)});
    }
    return plans;
}

std::map<BellLabel, double> verify_recovery(const DensityOp &rho325, PlanSource source) {
    std::map<BellLabel, double> out;
    for (const auto &[label, plan] : correction_plans(rho325, source)) {
        out.emplace(label, plan.achieved_fidelity);
    }
    return out;
}

} // namespace qbroadcast
