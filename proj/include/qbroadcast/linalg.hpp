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
 * @file linalg.hpp
 * Dense complex matrices and the handful of Hermitian routines the
 * simulator needs. Sizes stay below 256, so everything is written for
 * clarity and determinism rather than throughput.
 */

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbroadcast {

using Complex = std::complex<double>;

/// Raised when an input violates a documented numerical precondition
/// (non-Hermitian, not PSD, non-isometric, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Row-major dense complex matrix. Vectors are n x 1 matrices.
 */
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix column(std::vector<Complex> entries);
    static CMatrix diagonal(std::span<const double> values);
    /// |index> in a space of dimension `dim`, as a column.
    static CMatrix basis(std::size_t dim, std::size_t index);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return entries_;
    }
    [[nodiscard]] std::span<Complex> entries() noexcept { return entries_; }

    [[nodiscard]] CMatrix adjoint() const;
    [[nodiscard]] CMatrix transpose() const;
    [[nodiscard]] CMatrix conj() const;
    [[nodiscard]] Complex trace() const;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] bool all_finite() const noexcept;
    [[nodiscard]] bool is_hermitian(double tol) const;

    CMatrix &operator+=(const CMatrix &other);
    CMatrix &operator-=(const CMatrix &other);
    CMatrix &operator*=(Complex scalar);

    friend CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);

    friend bool operator==(const CMatrix &, const CMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise |a - b|; throws std::invalid_argument on shape mismatch.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// |ket><bra| for column vectors.
CMatrix outer(const CMatrix &ket, const CMatrix &bra);

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// (a + a^dagger) / 2
CMatrix hermitian_part(const CMatrix &a);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

struct EigenDecomposition {
    std::vector<double> eigenvalues; ///< ascending
    CMatrix eigenvectors;            ///< unitary, column k pairs with eigenvalues[k]
};

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
 *
 * The input is symmetrized to (A + A^dagger)/2 after the Hermiticity check, so
 * round-off asymmetry below tol::kHermitian is harmless.
 *
 * @throws std::invalid_argument if the matrix is not square.
 * @throws NumericalError if |A - A^dagger| exceeds tol::kHermitian.
 */
EigenDecomposition eig_hermitian(const CMatrix &a);

/// Eigenvalues only, ascending.
std::vector<double> eigvals_hermitian(const CMatrix &a);

/**
 * @brief Principal square root of a Hermitian positive semidefinite matrix.
 *
 * Eigenvalues down to -tol::kPsdError are clamped to zero; anything more
 * negative throws NumericalError.
 */
CMatrix sqrt_psd(const CMatrix &a);

/// Determinant by LU factorization with partial pivoting.
Complex det_complex(const CMatrix &a);

/// Singular values, descending, by one-sided (Hestenes) Jacobi.
std::vector<double> singular_values(const CMatrix &a);

/**
 * @brief Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
 *
 * Evaluated as the squared nuclear norm of sqrt(rho) sqrt(sigma); the singular
 * values come out with absolute rather than square-root accuracy, which keeps
 * F(rho, rho) = 1 to ~1e-15 even for rank-deficient states.
 */
double fidelity(const CMatrix &rho, const CMatrix &sigma);

} // namespace qbroadcast
