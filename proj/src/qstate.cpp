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
#include "qbroadcast/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qbroadcast/tolerances.hpp"

namespace qbroadcast {

namespace {

/// Splits every flat index of `reg` into (index within `targets`, index
/// within the remaining subsystems). Both sub-indices follow the usual
/// most-significant-first layout; targets use the order given.
struct IndexSplit {
    std::vector<std::size_t> target_index;
    std::vector<std::size_t> rest_index;
    std::size_t target_dim = 1;
    std::size_t rest_dim = 1;
    std::vector<std::size_t> rest_positions;
};

IndexSplit split_indices(const Register &reg, const std::vector<Label> &targets) {
    IndexSplit split;
    std::vector<std::size_t> target_positions;
    std::set<std::size_t> seen;
    for (const auto &label : targets) {
        const std::size_t pos = reg.index_of(label);
        if (!seen.insert(pos).second) {
            throw std::invalid_argument("duplicate label in selection: " + label);
        }
        target_positions.push_back(pos);
        split.target_dim *= reg.subsystems()[pos].dim;
    }
    for (std::size_t pos = 0; pos < reg.size(); ++pos) {
        if (!seen.contains(pos)) {
            split.rest_positions.push_back(pos);
            split.rest_dim *= reg.subsystems()[pos].dim;
        }
    }

    const std::size_t total = reg.total_dim();
    split.target_index.resize(total);
    split.rest_index.resize(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto d = reg.digits(flat);
        std::size_t t = 0;
        for (std::size_t pos : target_positions) {
            t = t * reg.subsystems()[pos].dim + d[pos];
        }
        std::size_t r = 0;
        for (std::size_t pos : split.rest_positions) {
            r = r * reg.subsystems()[pos].dim + d[pos];
        }
        split.target_index[flat] = t;
        split.rest_index[flat] = r;
    }
    return split;
}

/// Inverse of split_indices: flat index for each (target, rest) pair.
std::vector<std::size_t> compose_table(const IndexSplit &split) {
    std::vector<std::size_t> table(split.target_dim * split.rest_dim);
    for (std::size_t flat = 0; flat < split.target_index.size(); ++flat) {
        table[split.target_index[flat] * split.rest_dim + split.rest_index[flat]] =
            flat;
    }
    return table;
}

/// out = (op on targets) psi, op arbitrary square of size target_dim.
std::vector<Complex> apply_operator(const std::vector<Complex> &psi,
                                    const IndexSplit &split,
                                    const std::vector<std::size_t> &table,
                                    const CMatrix &op) {
    std::vector<Complex> out(psi.size(), Complex{0.0, 0.0});
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        const std::size_t t = split.target_index[flat];
        const std::size_t r = split.rest_index[flat];
        Complex sum{0.0, 0.0};
        for (std::size_t tp = 0; tp < split.target_dim; ++tp) {
            const Complex u = op(t, tp);
            if (u != Complex{0.0, 0.0}) {
                sum += u * psi[table[tp * split.rest_dim + r]];
            }
        }
        out[flat] = sum;
    }
    return out;
}

struct IsometryLayout {
    Register out_reg;
    std::size_t left = 1;  // product of dims before the target
    std::size_t right = 1; // product of dims after the target
    std::size_t in_dim = 1;
    std::size_t out_dim = 1;
};

IsometryLayout isometry_layout(const Register &reg, const CMatrix &v,
                               const Label &target,
                               const std::vector<Label> &new_labels) {
    const std::size_t pos = reg.index_of(target);
    IsometryLayout layout;
    layout.in_dim = reg.subsystems()[pos].dim;
    if (new_labels.empty()) {
        throw std::invalid_argument("apply_isometry: no output subsystems");
    }
    layout.out_dim = std::size_t{1} << new_labels.size();

    if (v.cols() != layout.in_dim || v.rows() != layout.out_dim) {
        throw std::invalid_argument(
            "apply_isometry: isometry shape " + std::to_string(v.rows()) + "x" +
            std::to_string(v.cols()) + " does not map dimension " +
            std::to_string(layout.in_dim) + " onto " + std::to_string(new_labels.size()) +
            " qubits");
    }
    if (max_abs_diff(v.adjoint() * v, CMatrix::identity(v.cols())) > tol::kNorm) {
        throw NumericalError("apply_isometry: v^dagger v differs from identity");
    }

    std::vector<Subsystem> subs;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (i == pos) {
            for (const auto &label : new_labels) {
                subs.push_back({label, 2});
            }
        } else {
            subs.push_back(reg.subsystems()[i]);
        }
        if (i < pos) {
            layout.left *= reg.subsystems()[i].dim;
        } else if (i > pos) {
            layout.right *= reg.subsystems()[i].dim;
        }
    }
    layout.out_reg = Register(std::move(subs)); // rejects label collisions
    return layout;
}

/// Applies I_left (x) v (x) I_right to a vector given by strided access.
template <class Get>
std::vector<Complex> embed_apply(const IsometryLayout &l, const CMatrix &v, Get in) {
    std::vector<Complex> out(l.left * l.out_dim * l.right, Complex{0.0, 0.0});
    for (std::size_t a = 0; a < l.left; ++a) {
        for (std::size_t j = 0; j < l.in_dim; ++j) {
            for (std::size_t b = 0; b < l.right; ++b) {
                const Complex x = in((a * l.in_dim + j) * l.right + b);
                if (x == Complex{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t k = 0; k < l.out_dim; ++k) {
                    out[(a * l.out_dim + k) * l.right + b] += v(k, j) * x;
                }
            }
        }
    }
    return out;
}

std::vector<Complex> normalized(std::vector<Complex> amps) {
    double n2 = 0.0;
    for (const auto &z : amps) {
        n2 += std::norm(z);
    }
    const double n = std::sqrt(n2);
    for (auto &z : amps) {
        z /= n;
    }
    return amps;
}

} // namespace

// --- Register -----------------------------------------------------------

Register::Register(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
    std::set<Label> seen;
    for (const auto &s : subsystems_) {
        if (s.dim < 2) {
            throw std::invalid_argument("Register: subsystem '" + s.label +
                                        "' has dimension < 2");
        }
        if (!seen.insert(s.label).second) {
            throw std::invalid_argument("Register: duplicate label '" + s.label + "'");
        }
        total_dim_ *= s.dim;
    }
}

Register Register::qubits(const std::vector<Label> &labels) {
    std::vector<Subsystem> subs;
    subs.reserve(labels.size());
    for (const auto &l : labels) {
        subs.push_back({l, 2});
    }
    return Register(std::move(subs));
}

std::vector<Label> Register::labels() const {
    std::vector<Label> out;
    out.reserve(subsystems_.size());
    for (const auto &s : subsystems_) {
        out.push_back(s.label);
    }
    return out;
}

bool Register::contains(const Label &label) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem &s) { return s.label == label; });
}

std::size_t Register::index_of(const Label &label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        if (subsystems_[i].label == label) {
            return i;
        }
    }
    throw std::invalid_argument("unknown label '" + label + "'");
}

std::size_t Register::dim_of(const Label &label) const {
    return subsystems_[index_of(label)].dim;
}

std::vector<std::size_t> Register::digits(std::size_t flat) const {
    std::vector<std::size_t> d(subsystems_.size());
    for (std::size_t i = subsystems_.size(); i-- > 0;) {
        d[i] = flat % subsystems_[i].dim;
        flat /= subsystems_[i].dim;
    }
    return d;
}

std::size_t Register::flat(const std::vector<std::size_t> &digits) const {
    if (digits.size() != subsystems_.size()) {
        throw std::invalid_argument("Register::flat: wrong digit count");
    }
    std::size_t f = 0;
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        if (digits[i] >= subsystems_[i].dim) {
            throw std::out_of_range("Register::flat: digit out of range");
        }
        f = f * subsystems_[i].dim + digits[i];
    }
    return f;
}

Register Register::concat(const Register &other) const {
    std::vector<Subsystem> subs = subsystems_;
    subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
    return Register(std::move(subs));
}

// --- PureState -----------------------------------------------------------

PureState::PureState(Register reg, std::vector<Complex> amplitudes)
    : reg_(std::move(reg)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != reg_.total_dim()) {
        throw std::invalid_argument("PureState: amplitude count does not match register");
    }
    if (std::abs(norm() - 1.0) > tol::kNorm) {
        throw NumericalError("PureState: norm " + std::to_string(norm()) + " is not 1");
    }
}

PureState PureState::basis(Register reg, const std::vector<std::size_t> &digits) {
    std::vector<Complex> amps(reg.total_dim(), Complex{0.0, 0.0});
    amps[reg.flat(digits)] = 1.0;
    return PureState(std::move(reg), std::move(amps));
}

Complex PureState::amplitude(const std::string &bits) const {
    if (bits.size() != reg_.size()) {
        throw std::invalid_argument("PureState::amplitude: bit string length mismatch");
    }
    std::vector<std::size_t> d;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("PureState::amplitude: expected 0/1 digits");
        }
        d.push_back(static_cast<std::size_t>(c - '0'));
    }
    return amplitudes_[reg_.flat(d)];
}

Complex PureState::amplitude(const std::map<Label, std::size_t> &digits) const {
    if (digits.size() != reg_.size()) {
        throw std::invalid_argument("PureState::amplitude: every label needs a digit");
    }
    std::vector<std::size_t> d(reg_.size());
    for (const auto &[label, value] : digits) {
        d[reg_.index_of(label)] = value;
    }
    return amplitudes_[reg_.flat(d)];
}

double PureState::norm() const {
    double n2 = 0.0;
    for (const auto &z : amplitudes_) {
        n2 += std::norm(z);
    }
    return std::sqrt(n2);
}

CMatrix PureState::ket() const { return CMatrix::column(amplitudes_); }

// --- DensityOp -----------------------------------------------------------

DensityOp::DensityOp(Register reg, CMatrix matrix)
    : reg_(std::move(reg)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != reg_.total_dim() || matrix_.cols() != reg_.total_dim()) {
        throw std::invalid_argument("DensityOp: matrix shape does not match register");
    }
    if (!matrix_.all_finite()) {
        throw NumericalError("DensityOp: non-finite entries");
    }
    if (!matrix_.is_hermitian(tol::kHermitian)) {
        throw NumericalError("DensityOp: matrix is not Hermitian");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > tol::kNorm) {
        throw NumericalError("DensityOp: trace " + std::to_string(tr.real()) +
                             " is not 1");
    }
}

DensityOp DensityOp::from_pure(const PureState &psi) {
    const CMatrix k = psi.ket();
    return DensityOp(psi.reg(), outer(k, k));
}

void DensityOp::validate() const {
    const auto eig = eigvals_hermitian(matrix_);
    if (eig.front() < -tol::kDensityPsd) {
        throw NumericalError("DensityOp: negative eigenvalue " +
                             std::to_string(eig.front()));
    }
}

bool DensityOp::is_valid() const noexcept {
    try {
        validate();
        return true;
    } catch (...) {
        return false;
    }
}

// --- composition -----------------------------------------------------------

PureState tensor(const PureState &a, const PureState &b) {
    Register reg = a.reg().concat(b.reg());
    std::vector<Complex> amps;
    amps.reserve(reg.total_dim());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return PureState(std::move(reg), std::move(amps));
}

DensityOp tensor(const DensityOp &a, const DensityOp &b) {
    Register reg = a.reg().concat(b.reg());
    return DensityOp(std::move(reg), kron(a.matrix(), b.matrix()));
}

PureState tensor(const std::vector<PureState> &parts) {
    if (parts.empty()) {
        throw std::invalid_argument("tensor: empty list");
    }
    PureState acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = tensor(acc, parts[i]);
    }
    return acc;
}

DensityOp tensor(const std::vector<DensityOp> &parts) {
    if (parts.empty()) {
        throw std::invalid_argument("tensor: empty list");
    }
    DensityOp acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = tensor(acc, parts[i]);
    }
    return acc;
}

// --- evolution -----------------------------------------------------------

PureState apply_isometry(const PureState &state, const CMatrix &v,
                         const Label &target, const std::vector<Label> &new_labels) {
    const IsometryLayout layout = isometry_layout(state.reg(), v, target, new_labels);
    const auto &amps = state.amplitudes();
    auto out = embed_apply(layout, v, [&](std::size_t i) { return amps[i]; });
    return PureState(layout.out_reg, std::move(out));
}

DensityOp apply_isometry(const DensityOp &rho, const CMatrix &v,
                         const Label &target, const std::vector<Label> &new_labels) {
    const IsometryLayout layout = isometry_layout(rho.reg(), v, target, new_labels);
    const CMatrix &m = rho.matrix();
    const std::size_t din = m.rows();
    const std::size_t dout = layout.out_reg.total_dim();

    // W rho, column by column.
    CMatrix half(dout, din);
    for (std::size_t c = 0; c < din; ++c) {
        auto col = embed_apply(layout, v, [&](std::size_t i) { return m(i, c); });
        for (std::size_t r = 0; r < dout; ++r) {
            half(r, c) = col[r];
        }
    }
    // (W rho) W^dagger = (W (W rho)^dagger)^dagger, row by row.
    CMatrix out(dout, dout);
    for (std::size_t r = 0; r < dout; ++r) {
        auto row = embed_apply(layout, v,
                               [&](std::size_t i) { return std::conj(half(r, i)); });
        for (std::size_t c = 0; c < dout; ++c) {
            out(r, c) = std::conj(row[c]);
        }
    }
    return DensityOp(layout.out_reg, hermitian_part(out));
}

PureState apply_unitary(const PureState &state, const CMatrix &u,
                        const std::vector<Label> &targets) {
    const IndexSplit split = split_indices(state.reg(), targets);
    if (u.rows() != split.target_dim || u.cols() != split.target_dim) {
        throw std::invalid_argument("apply_unitary: operator dimension mismatch");
    }
    const auto table = compose_table(split);
    return PureState(state.reg(), apply_operator(state.amplitudes(), split, table, u));
}

DensityOp apply_unitary(const DensityOp &rho, const CMatrix &u,
                        const std::vector<Label> &targets) {
    const IndexSplit split = split_indices(rho.reg(), targets);
    if (u.rows() != split.target_dim || u.cols() != split.target_dim) {
        throw std::invalid_argument("apply_unitary: operator dimension mismatch");
    }
    const auto table = compose_table(split);
    const std::size_t d = rho.reg().total_dim();
    // Build the full operator once; registers here are at most a few qubits.
    CMatrix full(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<Complex> e(d, Complex{0.0, 0.0});
        e[c] = 1.0;
        const auto col = apply_operator(e, split, table, u);
        for (std::size_t r = 0; r < d; ++r) {
            full(r, c) = col[r];
        }
    }
    return DensityOp(rho.reg(), hermitian_part(full * rho.matrix() * full.adjoint()));
}

// --- reduction -----------------------------------------------------------

DensityOp partial_trace(const DensityOp &rho, const std::vector<Label> &keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep list is empty");
    }
    const IndexSplit split = split_indices(rho.reg(), keep);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> buckets(split.rest_dim);
    for (std::size_t flat = 0; flat < split.rest_index.size(); ++flat) {
        buckets[split.rest_index[flat]].emplace_back(split.target_index[flat], flat);
    }
    CMatrix out(split.target_dim, split.target_dim);
    const CMatrix &m = rho.matrix();
    for (const auto &bucket : buckets) {
        for (const auto &[k1, i1] : bucket) {
            for (const auto &[k2, i2] : bucket) {
                out(k1, k2) += m(i1, i2);
            }
        }
    }
    std::vector<Subsystem> subs;
    for (const auto &label : keep) {
        subs.push_back({label, rho.reg().dim_of(label)});
    }
    return DensityOp(Register(std::move(subs)), hermitian_part(out));
}

DensityOp partial_trace(const PureState &psi, const std::vector<Label> &keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep list is empty");
    }
    const IndexSplit split = split_indices(psi.reg(), keep);
    CMatrix block(split.target_dim, split.rest_dim);
    for (std::size_t flat = 0; flat < psi.amplitudes().size(); ++flat) {
        block(split.target_index[flat], split.rest_index[flat]) = psi.amplitudes()[flat];
    }
    std::vector<Subsystem> subs;
    for (const auto &label : keep) {
        subs.push_back({label, psi.reg().dim_of(label)});
    }
    return DensityOp(Register(std::move(subs)), hermitian_part(block * block.adjoint()));
}

namespace {

std::vector<std::size_t> permutation_map(const Register &reg,
                                         const std::vector<Label> &order,
                                         Register &out_reg) {
    if (order.size() != reg.size()) {
        throw std::invalid_argument("permute: order must list every label once");
    }
    std::vector<Subsystem> subs;
    for (const auto &label : order) {
        subs.push_back({label, reg.dim_of(label)});
    }
    out_reg = Register(std::move(subs));
    const IndexSplit split = split_indices(reg, order);
    return split.target_index; // rest is empty, so this is the new flat index
}

} // namespace

DensityOp permute(const DensityOp &rho, const std::vector<Label> &order) {
    Register out_reg;
    const auto map = permutation_map(rho.reg(), order, out_reg);
    const std::size_t d = map.size();
    CMatrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            out(map[r], map[c]) = rho.matrix()(r, c);
        }
    }
    return DensityOp(std::move(out_reg), std::move(out));
}

PureState permute(const PureState &psi, const std::vector<Label> &order) {
    Register out_reg;
    const auto map = permutation_map(psi.reg(), order, out_reg);
    std::vector<Complex> out(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        out[map[i]] = psi.amplitudes()[i];
    }
    return PureState(std::move(out_reg), std::move(out));
}

DensityOp relabel(const DensityOp &rho, const std::map<Label, Label> &renames) {
    for (const auto &entry : renames) {
        (void)rho.reg().index_of(entry.first); // throws on an unknown label
    }
    std::vector<Subsystem> subs = rho.reg().subsystems();
    for (auto &s : subs) {
        if (auto it = renames.find(s.label); it != renames.end()) {
            s.label = it->second;
        }
    }
    return DensityOp(Register(std::move(subs)), rho.matrix());
}

CMatrix partial_transpose(const DensityOp &rho, const Label &over) {
    const Register &reg = rho.reg();
    if (reg.size() != 2) {
        throw std::invalid_argument("partial_transpose: register must have exactly two "
                                    "subsystems, has " +
                                    std::to_string(reg.size()));
    }
    const std::size_t which = reg.index_of(over);
    const std::size_t da = reg.subsystems()[0].dim;
    const std::size_t db = reg.subsystems()[1].dim;
    const CMatrix &m = rho.matrix();
    CMatrix out(da * db, da * db);
    for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
            for (std::size_t ap = 0; ap < da; ++ap) {
                for (std::size_t bp = 0; bp < db; ++bp) {
                    const std::size_t row = a * db + b;
                    const std::size_t col = ap * db + bp;
                    out(row, col) = which == 0 ? m(ap * db + b, a * db + bp)
                                               : m(a * db + bp, ap * db + b);
                }
            }
        }
    }
    return out;
}

// --- measurement -----------------------------------------------------------

std::vector<MeasurementBranch>
projective_measure(const PureState &state,
                   const std::vector<std::pair<std::string, CMatrix>> &projectors,
                   const std::vector<Label> &targets) {
    const IndexSplit split = split_indices(state.reg(), targets);
    const std::size_t dt = split.target_dim;
    if (projectors.empty()) {
        throw std::invalid_argument("projective_measure: no projectors");
    }

    CMatrix sum(dt, dt);
    for (const auto &[name, p] : projectors) {
        if (p.rows() != dt || p.cols() != dt) {
            throw std::invalid_argument("projective_measure: projector '" + name +
                                        "' has the wrong dimension");
        }
        sum += p;
    }
    if (max_abs_diff(sum, CMatrix::identity(dt)) > tol::kNorm) {
        throw NumericalError("projective_measure: projectors do not sum to identity");
    }
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        for (std::size_t j = 0; j < projectors.size(); ++j) {
            const CMatrix prod = projectors[i].second * projectors[j].second;
            const CMatrix expect = i == j ? projectors[i].second : CMatrix(dt, dt);
            if (max_abs_diff(prod, expect) > tol::kNorm) {
                throw NumericalError("projective_measure: projectors are not orthogonal");
            }
        }
    }

    const auto table = compose_table(split);
    std::vector<Subsystem> rest_subs;
    for (std::size_t pos : split.rest_positions) {
        rest_subs.push_back(state.reg().subsystems()[pos]);
    }

    std::vector<MeasurementBranch> branches;
    for (const auto &[name, p] : projectors) {
        const auto projected = apply_operator(state.amplitudes(), split, table, p);
        double prob = 0.0;
        for (const auto &z : projected) {
            prob += std::norm(z);
        }
        MeasurementBranch branch{name, prob, std::nullopt};
        if (prob >= tol::kZeroProbability) {
            const bool rank_one = std::abs(p.trace() - Complex{1.0, 0.0}) < tol::kNorm;
            if (rank_one && !rest_subs.empty()) {
                // P = |m><m|; the best-conditioned column is |m> up to phase.
                std::size_t best = 0;
                double best_norm = -1.0;
                for (std::size_t c = 0; c < dt; ++c) {
                    double n2 = 0.0;
                    for (std::size_t r = 0; r < dt; ++r) {
                        n2 += std::norm(p(r, c));
                    }
                    if (n2 > best_norm) {
                        best_norm = n2;
                        best = c;
                    }
                }
                std::vector<Complex> m(dt);
                for (std::size_t r = 0; r < dt; ++r) {
                    m[r] = p(r, best) / std::sqrt(best_norm);
                }
                std::vector<Complex> reduced(split.rest_dim, Complex{0.0, 0.0});
                for (std::size_t flat = 0; flat < projected.size(); ++flat) {
                    reduced[split.rest_index[flat]] +=
                        std::conj(m[split.target_index[flat]]) * projected[flat];
                }
                branch.state.emplace(Register(rest_subs), normalized(std::move(reduced)));
            } else {
                branch.state.emplace(state.reg(), normalized(projected));
            }
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

} // namespace qbroadcast
