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
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qbroadcast/cli.hpp"

using namespace qbroadcast::cli;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        lines.push_back(line);
    }
    return lines;
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("usage errors exit with 2") {
    for (const std::vector<std::string> &args :
         {std::vector<std::string>{}, {"frobnicate"}, {"baseline", "--nope"},
          {"sweep", "--pairs", "16"}, {"thresholds", "--branch", "Q3Q0"},
          {"swap", "--alpha2", "1.5"}, {"gv", "--bits", "10", "--eve", "beamsplit"},
          {"sweep", "--pairs", "17", "--from", "0.1", "--to", "0.2", "--steps", "2"},
          {"sweep", "--pairs", "16", "--from", "0.5", "--to", "0.2", "--steps", "2"},
          {"thresholds", "--grid", "10"}}) {
        const Result r = run(args);
        CHECK(r.code == kExitUsage);
        CHECK_FALSE(r.err.empty());
        CHECK(r.out.empty());
    }
    const Result help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("thresholds") != std::string::npos);
}

TEST_CASE("baseline") {
    const Result r = run({"baseline"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(std::abs(j["lo"].get<double>() - j["published_lo"].get<double>()) < 2e-4);
    CHECK(std::abs(j["hi"].get<double>() - j["published_hi"].get<double>()) < 2e-4);
}

TEST_CASE("thresholds Q0Q0 has a rho46 window near 0.61") {
    const Result r = run({"thresholds", "--branch", "Q0Q0"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    const double lo = j["intervals"]["rho46_entangled"][0]["lo"].get<double>();
    CHECK(std::abs(lo - 0.61) < 0.01);
    CHECK(j["intervals"]["broadcast"].size() == 1);
    CHECK(j["branch"] == "Q0Q0");
    // deterministic bytes
    CHECK(run({"thresholds", "--branch", "Q0Q0"}).out == r.out);
}

TEST_CASE("sweep CSV schema and boundary rows") {
    const Result r =
        run({"sweep", "--pairs", "46,16", "--branch", "Q0Q0", "--from", "0.99", "--to", "1.0",
             "--steps", "2"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == kSweepHeader);
    // ordered by (alpha2, pair)
    CHECK(lines[1].rfind("0.99,16,", 0) == 0);
    CHECK(lines[2].rfind("0.99,46,", 0) == 0);
    CHECK(lines[3].rfind("1,16,", 0) == 0);
    CHECK(lines[4].rfind("1,46,", 0) == 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream is(lines[i]);
        std::string field;
        int n = 0;
        while (std::getline(is, field, ',')) {
            if (n != 1) {
                CHECK(std::isfinite(std::stod(field)));
            }
            ++n;
        }
        CHECK(n == 8);
    }
    // 12 significant digits
    CHECK(r.out.find("-0.00103291022522") != std::string::npos);
}

TEST_CASE("sweep JSON and --out") {
    const std::string path = temp_path("qbroadcast_sweep_test.json");
    const Result r = run({"sweep", "--pairs", "12", "--from", "0.2", "--to", "0.4", "--steps",
                          "3", "--format", "json", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const Json j = Json::parse(in);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["pair"] == "12");
    CHECK(j[0]["entangled"] == 1); // rho12 is entangled below 3/11
    CHECK(j[2]["entangled"] == 0);
    std::remove(path.c_str());
}

TEST_CASE("swap --alpha2 0.8 --corrections derived") {
    const Result r = run({"swap", "--alpha2", "0.8", "--corrections", "derived"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["outcomes"].size() == 4);
    for (const auto &o : j["outcomes"]) {
        CHECK(std::abs(o["probability"].get<double>() - 0.25) <= 1e-9);
        CHECK(std::abs(o["fidelity"].get<double>() - 1.0) <= 1e-9);
    }
    const Json paper = Json::parse(run({"swap", "--alpha2", "0.8", "--corrections", "paper"}).out);
    CHECK(paper["outcomes"][0]["correction"] == "IZX");
}

TEST_CASE("gv output is deterministic per seed") {
    const Result a = run({"gv", "--bits", "2000", "--eve", "intercept", "--seed", "4"});
    const Result b = run({"gv", "--bits", "2000", "--eve", "intercept", "--seed", "4"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK(j["eve_detected"] == true);
    CHECK(j["bits_sent"] == 2032);
    const Json clean = Json::parse(run({"gv", "--bits", "2000", "--eve", "none"}).out);
    CHECK(clean["bit_errors"] == 0);
}

TEST_CASE("config file supplies defaults; flags win") {
    const std::string path = temp_path("qbroadcast_cli_test.cfg");
    {
        std::ofstream cfg(path);
        cfg << "# test config\n tol = 0.001\ngrid=60\nseed=4\n";
    }
    const Json j = Json::parse(run({"thresholds", "--config", path}).out);
    CHECK(j["tol"].get<double>() == 0.001);
    CHECK(j["grid"] == 60);
    const Json k = Json::parse(run({"thresholds", "--config", path, "--grid", "80"}).out);
    CHECK(k["grid"] == 80);
    CHECK(run({"gv", "--bits", "100", "--eve", "intercept", "--config", path}).out ==
          run({"gv", "--bits", "100", "--eve", "intercept", "--seed", "4"}).out);
    {
        std::ofstream cfg(path);
        cfg << "colour=blue\n";
    }
    CHECK(run({"baseline", "--config", path}).code == kExitUsage);
    CHECK(run({"baseline", "--config", temp_path("missing_qbroadcast.cfg")}).code == kExitUsage);
    std::remove(path.c_str());
}

TEST_CASE("branches and report") {
    const Result b = run({"branches"});
    REQUIRE(b.code == 0);
    const Json j = Json::parse(b.out);
    REQUIRE(j["branches"].size() == 4);
    CHECK(j["branches"][3]["branch"] == "Q1Q1");

    const Result r = run({"report", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json rep = Json::parse(r.out);
    CHECK(rep["entries"].size() > 20);
    const Result t = run({"report"});
    CHECK(t.out.find("summary:") != std::string::npos);
}
