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
 * @file reproduction.hpp
 * Published reference values, hand-transcribed closed-form operators and the
 * computed-vs-published comparison document.
 */

#include <optional>
#include <string>
#include <vector>

#include "qbroadcast/protocol.hpp"

namespace qbroadcast {

namespace published {

// Nonlocal-pair inseparability window of a single cloned pair: 1/2 -+ sqrt(39)/16.
double baseline_lo();
double baseline_hi();

// Rounded endpoints as printed.
inline constexpr double kNonlocalLo = 0.18;   // rho16, rho14 entangled above
inline constexpr double kLocalLo = 0.61;      // rho46, rho25 entangled above
inline constexpr double kSeparableLo = 0.27;  // rho12 class separable above
inline constexpr double kBroadcastLo = 0.61;  // Q0Q0 broadcast window
inline constexpr double kQ1Q1Lo = 0.38;
inline constexpr double kQ1Q1Hi = 0.73;
inline constexpr double kAsymmetricLo = 0.60; // one asymmetric branch: (0.60, 1)
inline constexpr double kAsymmetricAltLo = 0.14; // the other: (0.14, 0.40)
inline constexpr double kAsymmetricAltHi = 0.40;

// Entanglement ranges over the Q0Q0 broadcast window.
inline constexpr double kC16Min = 0.17, kC16Max = 0.29;
inline constexpr double kC46Min = 0.08, kC46Max = 0.15;
inline constexpr double kEof16Min = 0.06, kEof16Max = 0.15;
inline constexpr double kEof46Min = 0.01, kEof46Max = 0.03;

} // namespace published

/// Closed forms copied by hand from the published expressions for branch
/// Q0Q0 (beta real unless a phase is given). Used only as a transcription
/// diagnostic; the derived operators are authoritative.
namespace transcribed {

DensityOp rho146(double alpha2, double beta_phase = 0.0); ///< on (1, 4, 6)
DensityOp rho16(double alpha2);                           ///< on (1, 6)
DensityOp rho46(double alpha2);                           ///< on (4, 6)
DensityOp rho12(double alpha2);                           ///< on (1, 2)
DensityOp rho357_b1plus(double alpha2); ///< post-state after B1+, on (3, 5, 7)

} // namespace transcribed

struct TranscriptionCheck {
    std::string name;     ///< "rho146", "rho16", ...
    double alpha2 = 0.0;
    double max_deviation = 0.0;
    bool matches = false; ///< max_deviation <= 1e-12
};

/// Compares each transcription with the derived operator at `alpha2`.
std::vector<TranscriptionCheck> transcription_checks(double alpha2);

/// PPT-predicate intervals of a branch's pair marginal, e.g. ("46", Entangled).
std::vector<ThresholdInterval> pair_threshold(Branch branch, const std::string &pair,
                                              Predicate predicate,
                                              const ScanOptions &options = {},
                                              double beta_phase = 0.0);

/// Intervals on which the broadcasting requirements hold for a branch.
std::vector<ThresholdInterval> broadcast_intervals(Branch branch,
                                                   const ScanOptions &options = {},
                                                   double beta_phase = 0.0);

struct RangeSummary {
    double c_min = 0.0;
    double c_max = 0.0;
    double eof_min = 0.0;
    double eof_max = 0.0;
    double argmin = 0.0; ///< alpha^2 of c_min
    double argmax = 0.0; ///< alpha^2 of c_max
};

/// Concurrence and EoF extremes of a Q0Q0 pair marginal on `samples`
/// evenly spaced interior points of (lo, hi).
RangeSummary concurrence_range(const std::string &pair, double lo, double hi,
                               std::size_t samples = 400, double beta_phase = 0.0);

struct ReportEntry {
    std::string section;
    std::string quantity;
    std::optional<double> computed; ///< empty when nothing was found (e.g. no interval)
    std::optional<double> published;
    double tolerance = 0.0;
    std::string status; ///< "pass", "diff" or "info" (not asserted)
    std::string note;
};

struct ReproductionReport {
    std::vector<ReportEntry> entries;
    [[nodiscard]] std::size_t count(const std::string &status) const;
};

struct ReportOptions {
    ScanOptions scan;
    double beta_phase = 0.0;
};

ReproductionReport build_report(const ReportOptions &options = {});

/// Plain-text rendering, one line per entry.
std::string render_text(const ReproductionReport &report);

} // namespace qbroadcast
