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
#include <set>

#include "qbroadcast/reproduction.hpp"

using namespace qbroadcast;

TEST_CASE("hand-transcribed operators match the derived ones") {
    for (double a2 : {0.05, 0.3, 0.5, 0.6177, 0.8, 0.99}) {
        for (const TranscriptionCheck &c : transcription_checks(a2)) {
            INFO(c.name << " at " << a2 << ": " << c.max_deviation);
            CHECK(c.matches);
        }
    }
}

TEST_CASE("transcribed rho146 with a complex beta") {
    for (double phase : {M_PI / 3, M_PI / 2, 2.5}) {
        const DensityOp derived = partial_trace(six_qubit_state(0.55, Branch{}, phase),
                                                {"1", "4", "6"});
        CHECK(max_abs_diff(derived.matrix(), transcribed::rho146(0.55, phase).matrix()) <
              1e-12);
    }
}

TEST_CASE("transcriptions are valid states") {
    for (double a2 : {0.2, 0.7}) {
        CHECK(transcribed::rho146(a2).is_valid());
        CHECK(transcribed::rho16(a2).is_valid());
        CHECK(transcribed::rho46(a2).is_valid());
        CHECK(transcribed::rho12(a2).is_valid());
        CHECK(transcribed::rho357_b1plus(a2).is_valid());
    }
}

TEST_CASE("published constants") {
    CHECK(published::baseline_lo() == doctest::Approx(0.10969).epsilon(1e-4));
    CHECK(published::baseline_hi() == doctest::Approx(0.89031).epsilon(1e-4));
    CHECK(published::baseline_lo() + published::baseline_hi() == doctest::Approx(1.0));
}

TEST_CASE("concurrence ranges over the broadcast window") {
    const auto bc = broadcast_intervals(Branch{});
    REQUIRE(bc.size() == 1);
    const RangeSummary c16 = concurrence_range("16", bc[0].lo, bc[0].hi, 100);
    const RangeSummary c46 = concurrence_range("46", bc[0].lo, bc[0].hi, 100);
    CHECK(c16.c_min >= 0.0);
    CHECK(c16.c_min <= c16.c_max);
    // rho16 weakens towards the product limit, rho46 strengthens
    CHECK(c16.argmax < c16.argmin);
    CHECK(c46.argmin < c46.argmax);
    CHECK(c16.eof_max == doctest::Approx(eof(c16.c_max)));
    CHECK_THROWS_AS(concurrence_range("16", 0.7, 0.6), std::invalid_argument);
}

TEST_CASE("build_report covers every section") {
    const ReproductionReport r = build_report();
    std::set<std::string> sections;
    for (const ReportEntry &e : r.entries) {
        sections.insert(e.section);
        CHECK((e.status == "pass" || e.status == "diff" || e.status == "info"));
        if (e.status == "pass") {
            REQUIRE(e.computed);
            REQUIRE(e.published);
            CHECK(std::abs(*e.computed - *e.published) <= e.tolerance);
        }
    }
    for (const char *s : {"baseline", "Q0Q0", "Q1Q1", "Q0Q1", "Q1Q0", "branches", "measures",
                          "transcription", "swap"}) {
        CHECK(sections.count(s) == 1);
    }
    CHECK(r.count("pass") + r.count("diff") + r.count("info") == r.entries.size());
    const std::string text = render_text(r);
    CHECK(text.find("summary:") != std::string::npos);
    CHECK(text.find("rho46 entangled lo") != std::string::npos);
}
