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
 * @file tolerances.hpp
 * Numerical tolerances shared by every module. Nothing else in the library
 * hard-codes a comparison threshold.
 */
namespace qbroadcast::tol {

/// Max |A - A^dagger| entry accepted as Hermitian.
inline constexpr double kHermitian = 1e-10;

/// Eigenvalues in [-kPsdError, 0) are clamped to zero by sqrt_psd / fidelity.
inline constexpr double kPsdClamp = 1e-10;

/// Below -kPsdError a matrix is rejected as not positive semidefinite.
inline constexpr double kPsdError = 1e-8;

/// Generic entrywise equality.
inline constexpr double kEquality = 1e-9;

/// Unit norm / unit trace / isometry checks.
inline constexpr double kNorm = 1e-10;

/// Minimum eigenvalue accepted when a density operator is validated.
inline constexpr double kDensityPsd = 1e-9;

/// PPT verdicts: entangled iff the minimal partial-transpose eigenvalue is
/// strictly below -kPpt. Values in [-kPpt, kPpt] count as separable.
inline constexpr double kPpt = 1e-10;

/// Measurement outcomes with probability below this carry no state.
inline constexpr double kZeroProbability = 1e-12;

} // namespace qbroadcast::tol
