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


#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsim/lindblad.hpp"

namespace tsim {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

std::vector<std::string> scenario_names();

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
    nlohmann::json to_json() const;
};

// Checks a config document without touching the file system.
ValidationReport validate(const nlohmann::json& config);

struct ScenarioOutput {
    std::map<std::string, std::string> files;  // file name -> content, manifest included
    std::vector<std::string> log;
};

// Runs a validated config. Throws ArgumentError on config problems and
// NumericalError on solver failures.
ScenarioOutput run_scenario(const nlohmann::json& config);

// The single-gate setup a gate scenario config resolves to, with its default
// noise, truncation and step density. Sweep axes are not applied.
GateScenario gate_scenario(const nlohmann::json& config);

// Serialized with sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

int run_cli(int argc, char** argv);

}  // namespace tsim
