// Copyright 2026 The transmonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsim/cli.hpp"
#include "tsim/qcore.hpp"

using namespace tsim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tsim");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("tsim-test-" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("registry") {
    auto names = scenario_names();
    CHECK(names.size() == 13);
    CHECK(std::find(names.begin(), names.end(), "qpt3") != names.end());
}

TEST_CASE("validation catches inconsistent configs") {
    CHECK(validate({{"scenario", "bell-dynamics"}}).ok());
    CHECK_FALSE(validate({{"scenario", "nope"}}).ok());
    CHECK_FALSE(validate(json::object()).ok());
    CHECK_FALSE(validate({{"scenario", "qpt2"}, {"colour", 1}}).ok());

    auto t2 = validate({{"scenario", "qpt2"}, {"noise", {{"t1_us", 10.0}, {"t2_us", 30.0}}}});
    REQUIRE_FALSE(t2.ok());
    CHECK(t2.violations.front().find("gamma_phi") != std::string::npos);

    CHECK_FALSE(validate({{"scenario", "qpt2"}, {"noise", {{"tc_us", 10.0}, {"t1_us", 10.0}}}}).ok());
    CHECK_FALSE(validate({{"scenario", "qpt2"}, {"noise", {{"kappa_mhz", 200.0}}}}).ok());
    CHECK_FALSE(validate({{"scenario", "xgate3-fock"}, {"device", {{"n_fock", 6}}}}).ok());
    CHECK_FALSE(validate({{"scenario", "qpt2"}, {"device", {{"steps_per_period", 4}}}}).ok());
    CHECK_FALSE(validate({{"scenario", "grover2-sweep"}, {"sweep", {{"points", 1}}}}).ok());
    auto warn = validate({{"scenario", "bell-dynamics"}});
    CHECK_FALSE(warn.warnings.empty());
    CHECK(warn.to_json().contains("violations"));
}

TEST_CASE("scenarios are deterministic and write a manifest") {
    for (const char* name : {"cpb-spectrum", "grover-ideal", "dj-demo", "grover2-sweep"}) {
        json cfg = {{"scenario", name}};
        if (std::string(name) == "grover2-sweep") cfg["params"] = {{"master_equation", false}};
        ScenarioOutput a = run_scenario(cfg), b = run_scenario(cfg);
        CHECK(a.files == b.files);
        REQUIRE(a.files.count("manifest.json"));
        json m = json::parse(a.files.at("manifest.json"));
        CHECK(m["scenario"] == name);
        CHECK(m["version"] == kToolkitVersion);
        CHECK(a.files.count("results.json"));
    }
}

TEST_CASE("gate scenario manifest carries the derived conditions") {
    json cfg = {{"scenario", "qpt2"}, {"device", {{"n_fock", 4}}}};
    ScenarioOutput out = run_scenario(cfg);
    json m = json::parse(out.files.at("manifest.json"));
    const json& r = m["resolved"];
    CHECK(r.dump().find("delta_r") != std::string::npos);
    CHECK(r.dump().find("lambda") != std::string::npos);
    CHECK(r.dump().find("t_gate") != std::string::npos);
    CHECK(out.files.count("chi_sim.csv"));
}

TEST_CASE("json output is sorted and newline terminated") {
    std::string s = dump_json({{"b", 1}, {"a", 2}});
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(s.back() == '\n');
}

TEST_CASE("command line exit codes and files") {
    fs::path dir = scratch("dj");
    CHECK(cli({"--scenario", "dj-demo", "--output-dir", dir.string()}) == kExitOk);
    CHECK(fs::exists(dir / "manifest.json"));
    std::string first = slurp(dir / "results.json");
    CHECK(cli({"--scenario", "dj-demo", "--output-dir", dir.string()}) == kExitOk);
    CHECK(slurp(dir / "results.json") == first);

    fs::path bad = scratch("bad");
    CHECK(cli({"--scenario", "unknown-thing", "--output-dir", bad.string()}) == kExitConfig);
    CHECK(fs::exists(bad / "error.json"));

    fs::path cfg = scratch("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"scenario": "grover-ideal", "params": {"n": 2, "marked": 2, "iterations": 1}})";
    }
    fs::path out = scratch("cfg-out");
    CHECK(cli({"--config", cfg.string(), "--output-dir", out.string()}) == kExitOk);
    json res = json::parse(slurp(out / "results.json"));
    CHECK(res.dump().find("\"n\":2") != std::string::npos);

    {
        std::ofstream f(cfg);
        f << "{ not json";
    }
    CHECK(cli({"--config", cfg.string(), "--output-dir", out.string()}) == kExitConfig);
    CHECK(cli({"--list-scenarios"}) == kExitOk);
}

}
