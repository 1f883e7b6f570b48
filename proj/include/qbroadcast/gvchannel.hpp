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
 * @file gvchannel.hpp
 * Event-level model of the Goldenberg-Vaidman orthogonal-state channel used
 * to exchange the machine-measurement results.
 *
 * Model:
 *  - A pulse is one particle in two wave packets, a (sent first) and b (sent
 *    `delay` later). Bit k is carried by |Psi_k> = (|a> + (-1)^k |b>)/sqrt(2);
 *    the two bit states are orthogonal.
 *  - The receiver delays packet a by `delay`, recombines both packets and a
 *    detector reads out the {|Psi_0>, |Psi_1>} basis.
 *  - An intercept-resend eavesdropper has to forward packet a on time, before
 *    packet b has left the sender, so the only measurement open to her is
 *    packet occupancy {|a><a|, |b><b|}. She re-emits what she finds, which
 *    collapses the pulse to |a> or |b>.
 *  - After the data pulses the sender emits `trials` check pulses with
 *    random values and reveals those values once they have been received.
 *    A check pulse decoded wrongly is a detection event.
 *
 * Under intercept-resend every pulse decodes wrongly with probability
 * |<Psi_k|a>|^2 = 1/2 (kInterceptErrorRate), so a session of n check
 * pulses detects the eavesdropper with probability 1 - 2^-n.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbroadcast/cloner.hpp"

namespace qbroadcast::gv {

enum class EveStrategy { None, InterceptResend };

std::string to_string(EveStrategy s);
/// "none" or "intercept" / "intercept_resend".
std::optional<EveStrategy> parse_strategy(const std::string &text);

/// Per-pulse probability that an intercept-resend attack flips the decoded bit.
inline constexpr double kInterceptErrorRate = 0.5;

struct GvConfig {
    double delay = 1.0;       ///< separation of the two wave packets (time units)
    std::size_t trials = 32;  ///< check pulses appended to every session
    std::uint64_t seed = 0;
};

struct GvResult {
    std::size_t bits_sent = 0;  ///< data + check pulses
    std::size_t bit_errors = 0; ///< wrongly decoded data pulses
    bool eve_detected = false;
    std::size_t detection_events = 0; ///< wrongly decoded check pulses
    std::vector<int> received;        ///< decoded data bits

    friend bool operator==(const GvResult &, const GvResult &) = default;
};

/// Analytic per-pulse detection probability for a strategy.
double analytic_detection_rate(EveStrategy strategy);

/// Analytic probability that a session with `check_pulses` detects the strategy.
double analytic_session_detection(EveStrategy strategy, std::size_t check_pulses);

/**
 * @brief Sends `bits` (each 0 or 1) followed by config.trials check pulses.
 *
 * Deterministic for a given config.seed.
 * @throws std::invalid_argument on empty input, a non-binary value, delay <= 0
 *         or trials == 0.
 */
GvResult transmit_bits(const std::vector<int> &bits, EveStrategy strategy,
                       const GvConfig &config);

struct DeliveryRecord {
    std::string sender;
    std::string receiver;
    MachineOutcome sent = MachineOutcome::Q0;
    std::optional<MachineOutcome> delivered; ///< empty when the session was aborted
    bool compromised = false;
    GvResult channel;
};

/// Sends a one-bit machine outcome (Q0 -> 0, Q1 -> 1); aborts delivery and
/// flags the record compromised when the check pulses reveal an eavesdropper.
DeliveryRecord secure_send(MachineOutcome payload, EveStrategy strategy,
                           const GvConfig &config, const std::string &sender = "Alice",
                           const std::string &receiver = "Bob");

} // namespace qbroadcast::gv
