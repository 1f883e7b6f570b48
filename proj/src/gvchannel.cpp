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
#include "qbroadcast/gvchannel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qbroadcast/linalg.hpp"

namespace qbroadcast::gv {

namespace {

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementation.
double uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Two-mode state in the {|a>, |b>} basis.
CMatrix encode(int bit) {
    const double h = 1.0 / std::sqrt(2.0);
    return CMatrix::column({h, bit == 0 ? h : -h});
}

/// Samples a projective measurement given as orthonormal columns; returns the
/// outcome index and replaces `state` with the collapsed vector.
std::size_t measure(CMatrix &state, const std::vector<CMatrix> &basis,
                    std::mt19937_64 &rng) {
    const double u = uniform(rng);
    double acc = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const Complex amp = (basis[k].adjoint() * state)(0, 0);
        acc += std::norm(amp);
        if (u < acc || k + 1 == basis.size()) {
            state = basis[k];
            return k;
        }
    }
    return basis.size() - 1;
}

int send_pulse(int bit, EveStrategy strategy, std::mt19937_64 &rng) {
    static const std::vector<CMatrix> kOccupancy{CMatrix::basis(2, 0), CMatrix::basis(2, 1)};
    static const std::vector<CMatrix> kReadout{encode(0), encode(1)};
    CMatrix pulse = encode(bit);
    if (strategy == EveStrategy::InterceptResend) {
        measure(pulse, kOccupancy, rng);
    }
    return static_cast<int>(measure(pulse, kReadout, rng));
}

} // namespace

std::string to_string(EveStrategy s) {
    return s == EveStrategy::None ? "none" : "intercept_resend";
}

std::optional<EveStrategy> parse_strategy(const std::string &text) {
    if (text == "none") {
        return EveStrategy::None;
    }
    if (text == "intercept" || text == "intercept_resend") {
        return EveStrategy::InterceptResend;
    }
    return std::nullopt;
}

double analytic_detection_rate(EveStrategy strategy) {
    return strategy == EveStrategy::None ? 0.0 : kInterceptErrorRate;
}

double analytic_session_detection(EveStrategy strategy, std::size_t check_pulses) {
    const double p = analytic_detection_rate(strategy);
    return 1.0 - std::pow(1.0 - p, static_cast<double>(check_pulses));
}

GvResult transmit_bits(const std::vector<int> &bits, EveStrategy strategy,
                       const GvConfig &config) {
    if (bits.empty()) {
        throw std::invalid_argument("transmit_bits: no bits to send");
    }
    if (!(config.delay > 0.0)) {
        throw std::invalid_argument("transmit_bits: delay must be positive");
    }
    if (config.trials == 0) {
        throw std::invalid_argument("transmit_bits: at least one check pulse is required");
    }

    std::mt19937_64 rng(config.seed);
    GvResult result;
    result.received.reserve(bits.size());
    for (int bit : bits) {
        if (bit != 0 && bit != 1) {
            throw std::invalid_argument("transmit_bits: bits must be 0 or 1");
        }
        const int got = send_pulse(bit, strategy, rng);
        result.received.push_back(got);
        if (got != bit) {
            ++result.bit_errors;
        }
    }
    for (std::size_t i = 0; i < config.trials; ++i) {
        const int check = uniform(rng) < 0.5 ? 0 : 1;
        if (send_pulse(check, strategy, rng) != check) {
            ++result.detection_events;
        }
    }
    result.bits_sent = bits.size() + config.trials;
    result.eve_detected = result.detection_events > 0;
    return result;
}

DeliveryRecord secure_send(MachineOutcome payload, EveStrategy strategy,
                           const GvConfig &config, const std::string &sender,
                           const std::string &receiver) {
    DeliveryRecord record;
    record.sender = sender;
    record.receiver = receiver;
    record.sent = payload;
    record.channel =
        transmit_bits({payload == MachineOutcome::Q0 ? 0 : 1}, strategy, config);
    record.compromised = record.channel.eve_detected;
    if (!record.compromised) {
        record.delivered = record.channel.received.front() == 0 ? MachineOutcome::Q0
                                                                 : MachineOutcome::Q1;
    }
    return record;
}

} // namespace qbroadcast::gv
