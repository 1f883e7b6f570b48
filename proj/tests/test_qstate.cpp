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
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbroadcast/qstate.hpp"
#include "qbroadcast/tolerances.hpp"
#include "support.hpp"

using namespace qbroadcast;
using qbroadcast::testing::random_pure;
using qbroadcast::testing::random_state;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

PureState phi_plus(const Label &a, const Label &b) {
    return PureState(Register::qubits({a, b}), {kH, 0.0, 0.0, kH});
}

} // namespace

TEST_CASE("Register validation and lookup") {
    CHECK_THROWS_AS(Register::qubits({"1", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(Register({{"q", 1}}), std::invalid_argument);
    const Register r({{"a", 2}, {"b", 3}});
    CHECK(r.total_dim() == 6);
    CHECK(r.index_of("b") == 1);
    CHECK_THROWS_AS((void)r.index_of("z"), std::invalid_argument);
    CHECK(r.flat({1, 2}) == 5);
    CHECK(r.digits(5) == std::vector<std::size_t>{1, 2});
    CHECK_THROWS_AS((void)r.concat(Register::qubits({"a"})), std::invalid_argument);
}

TEST_CASE("PureState checks normalization") {
    CHECK_THROWS_AS(PureState(Register::qubits({"1"}), {1.0, 1.0}), NumericalError);
    CHECK_THROWS_AS(PureState(Register::qubits({"1"}), {1.0}), std::invalid_argument);
    const PureState s = PureState::basis(Register::qubits({"1", "2", "3"}), {1, 0, 1});
    CHECK(s.amplitude("101") == Complex(1.0));
    CHECK(s.amplitude({{"3", 1}, {"1", 1}, {"2", 0}}) == Complex(1.0));
}

TEST_CASE("DensityOp construction checks") {
    const Register q = Register::qubits({"1"});
    CHECK_THROWS_AS(DensityOp(q, CMatrix{{0.5, 0.1}, {0.2, 0.5}}), NumericalError);
    CHECK_THROWS_AS(DensityOp(q, CMatrix{{0.5, 0.0}, {0.0, 0.6}}), NumericalError);
    CHECK_THROWS_AS(DensityOp(q, CMatrix::identity(4) * 0.25), std::invalid_argument);
    // Hermitian, trace one, but not positive
    const DensityOp bad(q, CMatrix{{1.5, 0.0}, {0.0, -0.5}});
    CHECK_FALSE(bad.is_valid());
    CHECK_THROWS_AS(bad.validate(), NumericalError);
    CHECK(DensityOp::from_pure(phi_plus("1", "2")).is_valid());
}

TEST_CASE("tensor keeps the left operand on the most significant digits") {
    const PureState zero = PureState::basis(Register::qubits({"a"}), {0});
    const PureState one = PureState::basis(Register::qubits({"b"}), {1});
    const PureState t = tensor(zero, one);
    CHECK(t.reg().labels() == std::vector<Label>{"a", "b"});
    CHECK(t.amplitude("01") == Complex(1.0));
    CHECK_THROWS_AS(tensor(zero, zero), std::invalid_argument);
}

TEST_CASE("partial trace inverts the tensor product") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityOp a = random_state({"a"}, 2, rng);
        const DensityOp bc = random_state({"b", "c"}, 3, rng);
        const DensityOp joint = tensor(a, bc);
        CHECK(max_abs_diff(partial_trace(joint, {"a"}).matrix(), a.matrix()) < 1e-13);
        CHECK(max_abs_diff(partial_trace(joint, {"b", "c"}).matrix(), bc.matrix()) < 1e-13);
        const DensityOp cb = partial_trace(joint, {"c", "b"});
        CHECK(max_abs_diff(cb.matrix(), permute(bc, {"c", "b"}).matrix()) < 1e-13);
    }
    CHECK_THROWS_AS(partial_trace(DensityOp::from_pure(phi_plus("1", "2")), {"3"}),
                    std::invalid_argument);
}

TEST_CASE("pure-state partial trace agrees with the density route") {
    std::mt19937_64 rng(7);
    const PureState psi = random_pure({"1", "2", "3", "4"}, rng);
    const DensityOp rho = DensityOp::from_pure(psi);
    for (const std::vector<Label> &keep :
         {std::vector<Label>{"2"}, {"4", "1"}, {"1", "3", "4"}, {"3", "2", "1", "4"}}) {
        CHECK(max_abs_diff(partial_trace(psi, keep).matrix(), partial_trace(rho, keep).matrix()) <
              1e-13);
    }
}

TEST_CASE("permute reorders amplitudes") {
    const PureState s = PureState::basis(Register::qubits({"1", "2", "3"}), {1, 1, 0});
    const PureState p = permute(s, {"3", "1", "2"});
    CHECK(p.amplitude("011") == Complex(1.0));
    std::mt19937_64 rng(1);
    const DensityOp r = random_state({"x", "y", "z"}, 4, rng);
    CHECK(max_abs_diff(permute(permute(r, {"z", "x", "y"}), {"x", "y", "z"}).matrix(),
                       r.matrix()) < 1e-15);
    CHECK_THROWS_AS(permute(r, {"x", "y"}), std::invalid_argument);
}

TEST_CASE("relabel renames without moving data") {
    std::mt19937_64 rng(2);
    const DensityOp r = random_state({"2", "5"}, 2, rng);
    const DensityOp s = relabel(r, {{"2", "7"}});
    CHECK(s.labels() == std::vector<Label>{"7", "5"});
    CHECK(s.matrix() == r.matrix());
    CHECK_THROWS_AS(relabel(r, {{"9", "1"}}), std::invalid_argument);
}

TEST_CASE("apply_isometry validates and matches the density form") {
    const CMatrix not_iso = CMatrix{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.5}};
    const PureState psi = phi_plus("1", "2");
    CHECK_THROWS_AS(apply_isometry(psi, not_iso, "1", {"1", "x"}), NumericalError);
    CHECK_THROWS_AS(apply_isometry(psi, CMatrix::identity(4), "1", {"1", "x"}),
                    std::invalid_argument);

    // CNOT-style copy |k> -> |k>|k>
    CMatrix copy(4, 2);
    copy(0, 0) = 1.0;
    copy(3, 1) = 1.0;
    const PureState out = apply_isometry(psi, copy, "1", {"1", "x"});
    CHECK(out.reg().labels() == std::vector<Label>{"1", "x", "2"});
    CHECK(std::abs(out.amplitude("111") - kH) < 1e-15);
    CHECK_THROWS_AS(apply_isometry(psi, copy, "1", {"2", "x"}), std::invalid_argument);

    std::mt19937_64 rng(3);
    const DensityOp rho = random_state({"1", "2"}, 2, rng);
    const DensityOp via_density = apply_isometry(rho, copy, "2", {"2", "x"});
    CHECK(via_density.labels() == std::vector<Label>{"1", "2", "x"});
    CHECK(std::abs(via_density.matrix().trace() - 1.0) < 1e-13);
    CHECK(via_density.is_valid());
}

TEST_CASE("apply_unitary on a subset of subsystems") {
    const PureState s = PureState::basis(Register::qubits({"1", "2", "3"}), {0, 0, 0});
    const PureState t = apply_unitary(s, pauli_x(), {"2"});
    CHECK(t.amplitude("010") == Complex(1.0));
    const DensityOp r = apply_unitary(DensityOp::from_pure(s), kron(pauli_x(), pauli_x()),
                                      {"3", "1"});
    CHECK(r.matrix()(0b101, 0b101) == Complex(1.0));
}

TEST_CASE("partial transpose of the phi+ projector") {
    const DensityOp rho = DensityOp::from_pure(phi_plus("1", "2"));
    const auto w = eigvals_hermitian(partial_transpose(rho, "2"));
    CHECK(w[0] == doctest::Approx(-0.5).epsilon(1e-14));
    for (int k = 1; k < 4; ++k) {
        CHECK(w[k] == doctest::Approx(0.5).epsilon(1e-14));
    }
    // transposing over either side gives the same spectrum
    const auto w1 = eigvals_hermitian(partial_transpose(rho, "1"));
    CHECK(w1[0] == doctest::Approx(-0.5).epsilon(1e-14));
    std::mt19937_64 rng(4);
    CHECK_THROWS_AS(partial_transpose(random_state({"a", "b", "c"}, 1, rng), "a"),
                    std::invalid_argument);
}

TEST_CASE("projective measurement in the Bell basis") {
    // |0>_1 |phi+>_23 measured on (1, 2) in the Bell basis; every outcome 1/4
    const PureState psi =
        tensor(PureState::basis(Register::qubits({"1"}), {0}), phi_plus("2", "3"));
    const double h = kH;
    const std::vector<CMatrix> bell{CMatrix::column({h, 0, 0, h}), CMatrix::column({h, 0, 0, -h}),
                                    CMatrix::column({0, h, h, 0}), CMatrix::column({0, h, -h, 0})};
    std::vector<std::pair<std::string, CMatrix>> proj;
    for (std::size_t k = 0; k < 4; ++k) {
        proj.emplace_back("b" + std::to_string(k), outer(bell[k], bell[k]));
    }
    const auto branches = projective_measure(psi, proj, {"1", "2"});
    double total = 0.0;
    for (const auto &b : branches) {
        CHECK(b.probability == doctest::Approx(0.25).epsilon(1e-14));
        REQUIRE(b.state);
        CHECK(b.state->reg().labels() == std::vector<Label>{"3"});
        total += b.probability;
    }
    CHECK(total == doctest::Approx(1.0));
    // teleported |0> up to a Pauli: outcome b0 leaves |0> on qubit 3
    CHECK(std::norm(branches[0].state->amplitude("0")) == doctest::Approx(1.0));

    proj.pop_back();
    CHECK_THROWS_AS(projective_measure(psi, proj, {"1", "2"}), NumericalError);
}

TEST_CASE("higher-rank projectors keep the register; zero outcomes carry no state") {
    const PureState psi = PureState::basis(Register::qubits({"1", "2"}), {0, 1});
    const CMatrix p0 = outer(CMatrix::basis(2, 0), CMatrix::basis(2, 0));
    const CMatrix p1 = outer(CMatrix::basis(2, 1), CMatrix::basis(2, 1));
    const auto single = projective_measure(psi, {{"0", p0}, {"1", p1}}, {"1"});
    CHECK(single[0].probability == doctest::Approx(1.0));
    CHECK_FALSE(single[1].state.has_value());
    // rank-2 projectors on two qubits: parity measurement
    const CMatrix even = outer(CMatrix::basis(4, 0), CMatrix::basis(4, 0)) +
                         outer(CMatrix::basis(4, 3), CMatrix::basis(4, 3));
    const CMatrix odd = CMatrix::identity(4) - even;
    const auto parity = projective_measure(psi, {{"even", even}, {"odd", odd}}, {"1", "2"});
    REQUIRE(parity[1].state);
    CHECK(parity[1].state->reg().size() == 2);
}
