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
 * @file entanglement.hpp
 * Two-qubit separability tests, Wootters concurrence, entanglement of
 * formation, and scans of a verdict over the squared amplitude alpha^2.
 */

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbroadcast/qstate.hpp"

namespace qbroadcast {

/**
 * @brief Peres-Horodecki verdict for a two-qubit state.
 *
 * `entangled` comes from the minimal eigenvalue of the partial transpose.
 * `w3` / `w4` are the leading 3x3 minor and the full determinant of the
 * partial transpose (over the second qubit, basis 00, 01, 10, 11); they are
 * kept for cross-checking only.
 */
struct PPTVerdict {
    double min_pt_eigenvalue = 0.0;
    double w3 = 0.0;
    double w4 = 0.0;
    bool entangled = false;
};

/// @throws std::invalid_argument unless rho is a two-qubit operator.
PPTVerdict ppt_verdict(const DensityOp &rho);

/// Non-empty when the determinant form (w3 or w4 negative) disagrees with the
/// eigenvalue verdict; the string describes the mismatch.
std::optional<std::string> determinant_disagreement(const PPTVerdict &v);

/// Wootters concurrence; the lambda_i are the singular values of
/// sqrt(rho) * sqrt(rho~), i.e. square roots of the eigenvalues of
/// sqrt(rho) rho~ sqrt(rho), with rho~ = (Y x Y) rho* (Y x Y).
double concurrence(const DensityOp &rho);

/// Entanglement of formation as a function of concurrence, eof(0) = 0.
/// @throws std::invalid_argument if c is outside [0, 1] by more than 1e-12.
double eof(double c);

struct MeasureReport {
    double concurrence = 0.0;
    double eof = 0.0;
};

MeasureReport entanglement_measures(const DensityOp &rho);

enum class Predicate { Entangled, Separable };

std::string to_string(Predicate p);

/// Open interval (lo, hi) on alpha^2 over which a predicate holds. An end
/// that touches the scanned domain edge is reported as exactly 0 or 1.
struct ThresholdInterval {
    double lo = 0.0;
    double hi = 0.0;
    double tolerance = 0.0;
    std::string predicate_name;
};

struct ScanOptions {
    std::size_t grid = 200; ///< coarse grid points, >= 50
    double tol = 1e-4;      ///< bisection tolerance on alpha^2
    bool parallel = true;   ///< evaluate grid points on worker threads
};

using Alpha2Predicate = std::function<bool(double)>;
using Alpha2Family = std::function<DensityOp(double)>;

/**
 * @brief Finds every maximal alpha^2 interval where `holds` is true.
 *
 * A coarse grid of `grid` points spans [tol, 1 - tol]; each sign change is
 * refined by bisection until the bracket is narrower than `tol` and the
 * endpoint is reported as the bracket midpoint. `holds` must be a pure
 * function; parallel and sequential evaluation give identical results.
 */
std::vector<ThresholdInterval> scan_threshold(const Alpha2Predicate &holds,
                                              const std::string &predicate_name,
                                              const ScanOptions &options = {});

/// Convenience overload: PPT verdict of a two-qubit family.
std::vector<ThresholdInterval> scan_threshold(const Alpha2Family &family,
                                              Predicate predicate,
                                              const ScanOptions &options = {});

struct PairVerdict {
    Label first;
    Label second;
    PPTVerdict verdict;
};

struct TripleReport {
    bool closed = false;
    std::array<PairVerdict, 3> pairs; ///< (0,1), (1,2), (0,2) in register order
};

/// Closed iff all three pairwise marginals are PPT-entangled.
TripleReport classify_triple(const DensityOp &rho);

struct BroadcastRequirement {
    Label first;
    Label second;
    bool must_be_entangled = false;
    PPTVerdict verdict;
    bool satisfied = false;
};

struct BroadcastReport {
    bool broadcast = false;
    std::vector<BroadcastRequirement> requirements;
};

/**
 * @brief Broadcasting test on the six-qubit state with Alice = {1,2,5},
 * Bob = {3,4,6}.
 *
 * Requires 12, 15, 34, 36 separable; 25, 46 entangled; 23, 35, 14, 16
 * entangled.
 *
 * @throws std::invalid_argument if any of the labels 1..6 is missing.
 */
BroadcastReport broadcast_verdict(const DensityOp &six_qubit);

/// Same verdict computed straight from a pure state over labels 1..6 (plus
/// any machine registers, which are traced out).
BroadcastReport broadcast_verdict(const PureState &state);

} // namespace qbroadcast
