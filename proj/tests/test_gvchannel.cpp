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

#include "qbroadcast/gvchannel.hpp"

using namespace qbroadcast;
using namespace qbroadcast::gv;

namespace {

std::vector<int> random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> bits(n);
    for (auto &b : bits) {
        b = static_cast<int>(rng() & 1U);
    }
    return bits;
}

} // namespace

TEST_CASE("clean channel: no errors and no detections") {
    const auto bits = random_bits(10000, 1);
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const GvResult r = transmit_bits(bits, EveStrategy::None, {1.0, 32, seed});
        CHECK(r.bit_errors == 0);
        CHECK(r.detection_events == 0);
        CHECK_FALSE(r.eve_detected);
        CHECK(r.received == bits);
        CHECK(r.bits_sent == bits.size() + 32);
    }
}

TEST_CASE("intercept-resend error rate matches the analytic value") {
    const std::size_t n = 10000;
    const GvResult r =
        transmit_bits(random_bits(n, 2), EveStrategy::InterceptResend, {1.0, 1000, 7});
    const double p = analytic_detection_rate(EveStrategy::InterceptResend);
    CHECK(p == kInterceptErrorRate);
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(r.bit_errors / double(n) - p) <= 3 * sigma);
    const double sigma_check = std::sqrt(p * (1 - p) / 1000);
    CHECK(std::abs(r.detection_events / 1000.0 - p) <= 3 * sigma_check);
    CHECK(r.eve_detected);
}

TEST_CASE("session detection grows with the number of check pulses") {
    double previous = 0.0;
    for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
        const double analytic = analytic_session_detection(EveStrategy::InterceptResend, n);
        CHECK(analytic == doctest::Approx(1.0 - std::pow(0.5, double(n))));
        CHECK(analytic >= previous);
        previous = analytic;

        const int sessions = 2000;
        int detected = 0;
        for (int s = 0; s < sessions; ++s) {
            detected += transmit_bits({0}, EveStrategy::InterceptResend,
                                      {1.0, n, static_cast<std::uint64_t>(s)})
                            .eve_detected;
        }
        const double sigma = std::sqrt(analytic * (1 - analytic) / sessions);
        CHECK(std::abs(detected / double(sessions) - analytic) <= 3 * sigma + 1e-12);
    }
    CHECK(analytic_session_detection(EveStrategy::None, 100) == 0.0);
}

TEST_CASE("seed determinism") {
    const auto bits = random_bits(500, 3);
    const GvConfig cfg{1.0, 64, 12345};
    CHECK(transmit_bits(bits, EveStrategy::InterceptResend, cfg) ==
          transmit_bits(bits, EveStrategy::InterceptResend, cfg));
    const GvConfig other{1.0, 64, 12346};
    CHECK_FALSE(transmit_bits(bits, EveStrategy::InterceptResend, cfg) ==
                transmit_bits(bits, EveStrategy::InterceptResend, other));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(transmit_bits({}, EveStrategy::None, {}), std::invalid_argument);
    CHECK_THROWS_AS(transmit_bits({0, 2}, EveStrategy::None, {}), std::invalid_argument);
    CHECK_THROWS_AS(transmit_bits({0}, EveStrategy::None, {0.0, 32, 0}), std::invalid_argument);
    CHECK_THROWS_AS(transmit_bits({0}, EveStrategy::None, {1.0, 0, 0}), std::invalid_argument);
    CHECK(parse_strategy("intercept") == EveStrategy::InterceptResend);
    CHECK(parse_strategy("none") == EveStrategy::None);
    CHECK_FALSE(parse_strategy("beamsplit").has_value());
}

TEST_CASE("secure_send") {
    const DeliveryRecord clean = secure_send(MachineOutcome::Q0, EveStrategy::None, {});
    CHECK_FALSE(clean.compromised);
    CHECK(clean.delivered == MachineOutcome::Q0);
    CHECK(clean.sender == "Alice");

    // find a seed where the check pulses catch the attack
    std::optional<DeliveryRecord> caught;
    for (std::uint64_t seed = 0; seed < 20 && !caught; ++seed) {
        const DeliveryRecord r =
            secure_send(MachineOutcome::Q1, EveStrategy::InterceptResend, {1.0, 4, seed}, "Bob",
                        "Alice");
        if (r.channel.eve_detected) {
            caught = r;
        }
    }
    REQUIRE(caught);
    CHECK(caught->compromised);
    CHECK_FALSE(caught->delivered.has_value());
    CHECK(caught->sender == "Bob");
}
