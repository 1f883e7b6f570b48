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
#include "qbroadcast/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbroadcast/tolerances.hpp"

namespace qbroadcast {

namespace {

constexpr int kMaxJacobiSweeps = 100;

void require_square(const CMatrix &a, const char *what) {
    if (!a.is_square()) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix must be square, got " +
                                    std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()));
    }
}

void require_same_shape(const CMatrix &a, const CMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
    }
}

double off_diagonal_norm2(const CMatrix &a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                sum += std::norm(a(r, c));
            }
        }
    }
    return sum;
}

double frobenius_norm2(const CMatrix &a) {
    double sum = 0.0;
    for (const auto &z : a.entries()) {
        sum += std::norm(z);
    }
    return sum;
}

} // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols,
                 std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("CMatrix: entry count " +
                                    std::to_string(entries_.size()) +
                                    " does not match " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_));
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("CMatrix: ragged initializer list");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

CMatrix CMatrix::column(std::vector<Complex> entries) {
    const std::size_t n = entries.size();
    return CMatrix(n, 1, std::move(entries));
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

CMatrix CMatrix::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("CMatrix::basis: index out of range");
    }
    CMatrix v(dim, 1);
    v(index, 0) = 1.0;
    return v;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

CMatrix CMatrix::conj() const {
    CMatrix out = *this;
    for (auto &z : out.entries_) {
        z = std::conj(z);
    }
    return out;
}

Complex CMatrix::trace() const {
    require_square(*this, "trace");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double CMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto &z : entries_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

bool CMatrix::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

bool CMatrix::is_hermitian(double tol) const {
    if (!is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

CMatrix &CMatrix::operator+=(const CMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

CMatrix &CMatrix::operator*=(Complex scalar) {
    for (auto &z : entries_) {
        z *= scalar;
    }
    return *this;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimensions differ");
    }
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

CMatrix outer(const CMatrix &ket, const CMatrix &bra) {
    if (ket.cols() != 1 || bra.cols() != 1) {
        throw std::invalid_argument("outer: arguments must be column vectors");
    }
    return ket * bra.adjoint();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

CMatrix hermitian_part(const CMatrix &a) {
    require_square(a, "hermitian_part");
    CMatrix out = a + a.adjoint();
    out *= 0.5;
    return out;
}

CMatrix pauli_x() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

CMatrix pauli_y() {
    return CMatrix{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
}

CMatrix pauli_z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

EigenDecomposition eig_hermitian(const CMatrix &input) {
    require_square(input, "eig_hermitian");
    if (!input.is_hermitian(tol::kHermitian)) {
        throw NumericalError("eig_hermitian: matrix is not Hermitian within " +
                             std::to_string(tol::kHermitian));
    }
    const std::size_t n = input.rows();
    CMatrix a = hermitian_part(input);
    CMatrix v = CMatrix::identity(n);

    const double scale2 = frobenius_norm2(a);
    const double stop = scale2 * 1e-32;

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= stop) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                const Complex phase = apq / g; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition result;
    result.eigenvalues.reserve(n);
    result.eigenvectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        result.eigenvalues.push_back(a(order[k], order[k]).real());
        for (std::size_t r = 0; r < n; ++r) {
            result.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return result;
}

std::vector<double> eigvals_hermitian(const CMatrix &a) {
    return eig_hermitian(a).eigenvalues;
}

CMatrix sqrt_psd(const CMatrix &a) {
    const EigenDecomposition eig = eig_hermitian(a);
    const std::size_t n = a.rows();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.eigenvalues[k];
        if (lambda < -tol::kPsdError) {
            throw NumericalError("sqrt_psd: eigenvalue " + std::to_string(lambda) +
                                 " below -" + std::to_string(tol::kPsdError));
        }
        roots[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    const CMatrix &v = eig.eigenvectors;
    CMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex sum{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                sum += v(r, k) * roots[k] * std::conj(v(c, k));
            }
            out(r, c) = sum;
        }
    }
    return hermitian_part(out);
}

Complex det_complex(const CMatrix &input) {
    require_square(input, "det_complex");
    const std::size_t n = input.rows();
    CMatrix a = input;
    Complex det{1.0, 0.0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (a(pivot, col) == Complex{0.0, 0.0}) {
            return {0.0, 0.0};
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
            }
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
            }
        }
    }
    return det;
}

std::vector<double> singular_values(const CMatrix &input) {
    CMatrix a = input;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma{0.0, 0.0};
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += std::norm(a(k, i));
                    beta += std::norm(a(k, j));
                    gamma += std::conj(a(k, i)) * a(k, j);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const Complex phase = std::conj(gamma / g); // e^{-i phi}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < m; ++k) {
                    const Complex ai = a(k, i);
                    const Complex aj = a(k, j) * phase;
                    a(k, i) = c * ai - s * aj;
                    a(k, j) = s * ai + c * aj;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            sum += std::norm(a(k, j));
        }
        values[j] = std::sqrt(sum);
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

double fidelity(const CMatrix &rho, const CMatrix &sigma) {
    require_same_shape(rho, sigma, "fidelity");
    require_square(rho, "fidelity");
    for (const CMatrix *m : {&rho, &sigma}) {
        if (std::abs(m->trace() - Complex{1.0, 0.0}) > tol::kPsdError) {
            throw NumericalError("fidelity: arguments must have unit trace");
        }
    }
    const CMatrix product = sqrt_psd(rho) * sqrt_psd(sigma);
    double nuclear = 0.0;
    for (double s : singular_values(product)) {
        nuclear += s;
    }
    return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

} // namespace qbroadcast
