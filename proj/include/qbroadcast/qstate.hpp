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
 * @file qstate.hpp
 * Labeled multi-subsystem states.
 *
 * Tensor layout: the leftmost subsystem of a Register is the most
 * significant factor, so |q0 q1 ... q_{n-1}> has flat index
 * q0 * d1*...*d_{n-1} + ... + q_{n-1}. Ket strings such as |0101> read the
 * register labels left to right.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbroadcast/linalg.hpp"

namespace qbroadcast {

using Label = std::string;

struct Subsystem {
    Label label;
    std::size_t dim = 2;

    friend bool operator==(const Subsystem &, const Subsystem &) = default;
};

/**
 * @brief Ordered list of uniquely labeled subsystems.
 */
class Register {
  public:
    Register() = default;
    explicit Register(std::vector<Subsystem> subsystems);

    /// Register of qubits with the given labels, in order.
    static Register qubits(const std::vector<Label> &labels);

    [[nodiscard]] std::size_t size() const noexcept { return subsystems_.size(); }
    [[nodiscard]] std::size_t total_dim() const noexcept { return total_dim_; }
    [[nodiscard]] const std::vector<Subsystem> &subsystems() const noexcept {
        return subsystems_;
    }
    [[nodiscard]] std::vector<Label> labels() const;
    [[nodiscard]] bool contains(const Label &label) const;
    /// Position of `label`; throws std::invalid_argument if absent.
    [[nodiscard]] std::size_t index_of(const Label &label) const;
    [[nodiscard]] std::size_t dim_of(const Label &label) const;

    /// Multi-index digits of a flat index.
    [[nodiscard]] std::vector<std::size_t> digits(std::size_t flat) const;
    [[nodiscard]] std::size_t flat(const std::vector<std::size_t> &digits) const;

    /// Concatenation; throws std::invalid_argument on a duplicate label.
    [[nodiscard]] Register concat(const Register &other) const;

    friend bool operator==(const Register &, const Register &) = default;

  private:
    std::vector<Subsystem> subsystems_;
    std::size_t total_dim_ = 1;
};

/**
 * @brief Normalized amplitude vector bound to a Register.
 */
class PureState {
  public:
    /// Throws NumericalError unless the vector has unit norm within tol::kNorm.
    PureState(Register reg, std::vector<Complex> amplitudes);

    /// Computational basis state given by one digit per subsystem.
    static PureState basis(Register reg, const std::vector<std::size_t> &digits);

    [[nodiscard]] const Register &reg() const noexcept { return reg_; }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const noexcept {
        return amplitudes_;
    }
    /// Amplitude of the basis state given as a bit string over the register,
    /// e.g. "0101" (qubit registers only).
    [[nodiscard]] Complex amplitude(const std::string &bits) const;
    /// Amplitude with digits given per label (any order, all labels required).
    [[nodiscard]] Complex amplitude(const std::map<Label, std::size_t> &digits) const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] CMatrix ket() const;

  private:
    Register reg_;
    std::vector<Complex> amplitudes_;
};

/**
 * @brief Density operator bound to a Register.
 *
 * Construction checks shape, Hermiticity (tol::kHermitian) and unit trace
 * (tol::kNorm). Positivity costs an eigendecomposition and is checked on
 * demand via validate().
 */
class DensityOp {
  public:
    DensityOp(Register reg, CMatrix matrix);

    static DensityOp from_pure(const PureState &psi);

    [[nodiscard]] const Register &reg() const noexcept { return reg_; }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::vector<Label> labels() const { return reg_.labels(); }

    /// Full state check including PSD within tol::kDensityPsd; throws
    /// NumericalError with a description on failure.
    void validate() const;
    [[nodiscard]] bool is_valid() const noexcept;

  private:
    Register reg_;
    CMatrix matrix_;
};

PureState tensor(const PureState &a, const PureState &b);
DensityOp tensor(const DensityOp &a, const DensityOp &b);
PureState tensor(const std::vector<PureState> &parts);
DensityOp tensor(const std::vector<DensityOp> &parts);

/**
 * @brief Replaces subsystem `target` by `new_labels` through the isometry v.
 *
 * The new subsystems take the target's position in the register, in the
 * order given. `v` must map dim(target) to the product of the new
 * dimensions and satisfy v^dagger v = I within tol::kNorm. A new label may
 * reuse the target's label; it must not collide with any other label.
 */
PureState apply_isometry(const PureState &state, const CMatrix &v,
                         const Label &target, const std::vector<Label> &new_labels);

/// Mixed-state version: rho -> V rho V^dagger with V embedded at `target`.
DensityOp apply_isometry(const DensityOp &rho, const CMatrix &v,
                         const Label &target, const std::vector<Label> &new_labels);

/// Applies a unitary acting on the listed subsystems (in that order).
PureState apply_unitary(const PureState &state, const CMatrix &u,
                        const std::vector<Label> &targets);
DensityOp apply_unitary(const DensityOp &rho, const CMatrix &u,
                        const std::vector<Label> &targets);

/// Reduced operator on `keep`, laid out in the listed order.
DensityOp partial_trace(const DensityOp &rho, const std::vector<Label> &keep);

/// Reduced operator of a pure state, without forming the full projector.
DensityOp partial_trace(const PureState &psi, const std::vector<Label> &keep);

/// Reorders the register; `order` must be a permutation of the labels.
DensityOp permute(const DensityOp &rho, const std::vector<Label> &order);
PureState permute(const PureState &psi, const std::vector<Label> &order);

/// Renames labels (layout unchanged). Labels absent from the map keep their names.
DensityOp relabel(const DensityOp &rho, const std::map<Label, Label> &renames);

/**
 * @brief Partial transpose of a two-subsystem operator over `over`.
 * @throws std::invalid_argument unless the register has exactly two subsystems.
 */
CMatrix partial_transpose(const DensityOp &rho, const Label &over);

struct MeasurementBranch {
    std::string outcome;
    double probability = 0.0;
    std::optional<PureState> state; ///< empty when probability < tol::kZeroProbability
};

/**
 * @brief Projective measurement on the joint space of `targets`.
 *
 * Projectors must be orthogonal and sum to identity within tol::kNorm. For a
 * rank-one projector |m><m| the measured subsystems are removed and the branch
 * state is the normalized <m|psi> on the remaining subsystems; higher-rank
 * projectors keep the full register.
 */
std::vector<MeasurementBranch>
projective_measure(const PureState &state,
                   const std::vector<std::pair<std::string, CMatrix>> &projectors,
                   const std::vector<Label> &targets);

} // namespace qbroadcast
