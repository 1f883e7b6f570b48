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

#include <iosfwd>
#include <string>
#include <vector>

namespace qbroadcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Exact CSV header of `sweep --format csv`.
inline constexpr const char *kSweepHeader =
    "alpha2,pair,min_pt_eigenvalue,w3,w4,concurrence,eof,entangled";

/**
 * @brief Runs one command line (without the program name).
 *
 * Subcommands: baseline, sweep, thresholds, branches, swap, gv, report.
 * Results go to `out`; usage text and diagnostics go to `err`.
 *
 * @return 0 on success, 2 on a usage error, 1 when a numerical contract is
 *         violated.
 */
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qbroadcast::cli
