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

// Seeded generators shared by the unit tests and the acceptance binary.

#include <cmath>
#include <random>

#include "qbroadcast/qstate.hpp"

namespace qbroadcast::testing {

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = Complex(n(rng), n(rng));
        }
    }
    return m;
}

inline CMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    return hermitian_part(random_matrix(n, n, rng));
}

/// Haar-ish random ket (normalized complex Gaussian).
inline CMatrix random_ket(std::size_t n, std::mt19937_64 &rng) {
    CMatrix v = random_matrix(n, 1, rng);
    double norm = 0.0;
    for (const Complex &z : v.entries()) {
        norm += std::norm(z);
    }
    v *= 1.0 / std::sqrt(norm);
    return v;
}

/// Random density matrix of the given rank (Ginibre construction).
inline CMatrix random_density_matrix(std::size_t n, std::size_t rank, std::mt19937_64 &rng) {
    const CMatrix g = random_matrix(n, rank, rng);
    CMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return hermitian_part(rho);
}

inline DensityOp random_state(const std::vector<Label> &labels, std::size_t rank,
                              std::mt19937_64 &rng) {
    const Register reg = Register::qubits(labels);
    return DensityOp(reg, random_density_matrix(reg.total_dim(), rank, rng));
}

inline PureState random_pure(const std::vector<Label> &labels, std::mt19937_64 &rng) {
    const Register reg = Register::qubits(labels);
    const CMatrix v = random_ket(reg.total_dim(), rng);
    return PureState(reg, {v.entries().begin(), v.entries().end()});
}

/// Random single-qubit unitary (QR of a Ginibre matrix via Gram-Schmidt).
inline CMatrix random_unitary2(std::mt19937_64 &rng) {
    const CMatrix a = random_ket(2, rng);
    // orthogonal complement of a in C^2
    const CMatrix b = CMatrix::column({-std::conj(a(1, 0)), std::conj(a(0, 0))});
    return CMatrix{{a(0, 0), b(0, 0)}, {a(1, 0), b(1, 0)}};
}

} // namespace qbroadcast::testing
