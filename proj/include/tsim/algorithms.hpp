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

#include <string>
#include <vector>

#include "tsim/lindblad.hpp"
#include "tsim/model.hpp"
#include "tsim/qcore.hpp"

namespace tsim {

enum class Prep { WGates, Hadamard };
std::string to_string(Prep p);
Prep prep_from_string(const std::string& s);

struct GroverRun {
    int n = 0;
    long marked = 0;
    int iterations = 0;
    std::vector<Vec> amplitudes_per_step;  // entry 0 is the prepared state
    std::vector<double> success_prob_per_step;
};

// W prep pairs with the diffusion sigma_x R sigma_x cP sigma_x R; Hadamard prep
// with 2|s><s| - I.
GroverRun grover_ideal(int n, long marked, int iterations, Prep prep = Prep::WGates);
int grover_optimal_iterations(int n);
double grover_geometry(int n, long m_marked);

// Circuit with every W gate replaced by the closed-form one-shot propagator at
// (b, h); oracles ideal. n = 2 runs one iteration, n = 3 runs two.
double grover_noisy_fidelity(int n, long marked, double b, double h);

struct SweepPoint {
    double b = 0.0;
    double h = 0.0;
    std::string oracle;  // marked bit string
    double fidelity = 0.0;
};

// Grid points are evaluated in parallel, results are in (oracle, b) order.
std::vector<SweepPoint> grover_noisy_sweep(int n, const std::vector<long>& marked, const std::vector<double>& b_grid,
                                           double h);
std::string sweep_csv(const std::vector<SweepPoint>& pts);

struct GroverSegment {
    std::string name;
    double t_start = 0.0;
    double duration = 0.0;  // zero for instantaneous ideal gates
    double success_after = 0.0;
    double wall_seconds = 0.0;
};

struct GroverMasterResult {
    double fidelity = 0.0;  // <x| rho_qubits |x> at the end
    double total_time = 0.0;
    std::vector<GroverSegment> segments;
    Trajectory traj;
};

// W gates are interaction-frame Lindblad windows of length t_gate under the
// conditions c (an x2 or x3 family); oracles and sigma_x layers are ideal and
// instantaneous. The resonator starts in vacuum and is carried through.
GroverMasterResult grover_master_equation(int n, long marked, const GateConditions& c, const NoiseSpec& noise,
                                          int n_fock = 12, int steps_per_period = 64);

struct DeutschJozsaResult {
    std::string verdict;  // "constant" or "balanced"
    Vec amplitudes;       // input register, ancilla projected onto |->
    double p_zero = 0.0;
};

// truth[x] for x in [0, 2^n), x read with qubit 1 most significant.
DeutschJozsaResult deutsch_jozsa(int n, const std::vector<int>& truth);

std::string bit_string(long x, int n);

}  // namespace tsim
