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

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsim/model.hpp"
#include "tsim/qcore.hpp"

namespace tsim {

// Rates in 1/us. gamma1 and gamma_phi hold either one value (broadcast to all
// qubits) or one value per qubit; empty means zero.
struct NoiseSpec {
    double kappa = 0.0;
    std::vector<double> gamma1;
    std::vector<double> gamma_phi;

    static NoiseSpec none() { return {}; }
    // gamma1 = 1/T1, gamma_phi = 1/T1 - 1/(2 T2). Rejects a negative gamma_phi.
    static NoiseSpec from_t1_t2(double kappa, double t1, double t2);
    // T1 = T2 = tc.
    static NoiseSpec from_coherence_time(double kappa, double tc) { return from_t1_t2(kappa, tc, tc); }

    double gamma1_of(int qubit) const;
    double gamma_phi_of(int qubit) const;
    bool is_zero() const;
    void validate(int n_qubits) const;
};

struct SolveOptions {
    double t_final = 0.0;
    double dt = 0.0;
    int record_every = 1;
    Frame frame = Frame::Interaction;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<std::pair<std::string, std::vector<double>>> observables;

    long steps = 0;
    double dt = 0.0;
    // Trace of the raw integrated state at the end, before renormalization.
    double final_trace_drift = 0.0;
    // Largest corrections applied to recorded states.
    double max_trace_correction = 0.0;
    double max_hermiticity_correction = 0.0;
    std::vector<std::string> log;

    const std::vector<double>& observable(const std::string& name) const;
    double min_eigenvalue() const;  // over all recorded states
};

std::vector<Operator> collapse_operators(const DeviceSpec& spec, const NoiseSpec& noise);

Mat lindblad_rhs(const Operator& h, const DensityMatrix& rho, const std::vector<Operator>& cs);

struct DivergenceError : NumericalError {
    DivergenceError(const std::string& what, long step) : NumericalError(what), step(step) {}
    long step;
};

// Classical RK4 with H sampled at t, t + dt/2 and t + dt. Integration carries
// the raw state. Recorded copies are Hermitized and trace-normalized.
Trajectory solve(const TimeHamiltonian& h, const DensityMatrix& rho0, const std::vector<Operator>& cs,
                 const SolveOptions& opts);
Trajectory solve(const std::function<Operator(double)>& h_of_t, const DensityMatrix& rho0,
                 const std::vector<Operator>& cs, const SolveOptions& opts);

// Builds the frame Hamiltonian and collapse operators from a device.
Trajectory solve(const DeviceSpec& spec, const NoiseSpec& noise, const DensityMatrix& rho0,
                 const SolveOptions& opts);

// Step size resolving `steps_per_period` samples of the fastest frequency,
// adjusted so that t_final is an integer number of steps.
double choose_dt(const TimeHamiltonian& h, double t_final, int steps_per_period);

// P_label(t) = <label| Tr_resonator rho(t) |label>. Labels are bit strings
// with qubit 1 leftmost. Assumes dims [2, ..., 2, n_fock].
std::vector<std::pair<std::string, std::vector<double>>> occupations(const Trajectory& traj,
                                                                      const std::vector<std::string>& labels);
std::vector<std::string> all_labels(int n_qubits);

// ---------------------------------------------------------------- gate runs

enum class TargetMode { Full, PartialTrace };

struct GateScenario {
    std::string name;
    GateConditions conds;
    DeviceSpec device;
    NoiseSpec noise;
    Frame frame = Frame::Interaction;
    std::optional<StateVector> qubit_input;  // default |0...0>
    int fock_start = 0;
    int steps_per_period = 64;
    TargetMode target_mode = TargetMode::Full;
    int records_per_gate = 50;
};

// Builds a scenario from resolved conditions; omega_q sets the lab-frame carrier.
GateScenario make_gate_scenario(const std::string& name, const GateConditions& conds, const NoiseSpec& noise,
                                int n_fock, Frame frame = Frame::Interaction, double omega_q = kTwoPi * 4800.0);

struct GateRun {
    std::vector<double> fidelity_after_gate;  // one entry per gate
    Trajectory traj;
    DensityMatrix final_state;  // interaction-frame state after the last gate
};

// The ideal gate in the frame of the scenario.
Operator scenario_ideal_gate(const GateScenario& s);
StateVector scenario_input(const GateScenario& s);

GateRun run_gate(const GateScenario& s, int n_gates = 1);
// One gate window from an arbitrary joint qubits (x) resonator state. The
// result is expressed in the interaction frame.
DensityMatrix evolve_gate(const GateScenario& s, const DensityMatrix& rho_joint);
// Fidelity of a full-space state against U^k |in> (x) |fock_start>.
double gate_fidelity(const GateScenario& s, const DensityMatrix& rho_interaction, int k);

std::vector<double> repeated_gate_fidelity(const GateScenario& s, int n_gates, bool with_noise);

// Re-runs one gate at n_fock + 4 and returns the fidelity shift.
double fock_convergence_shift(const GateScenario& s);

// CSV `time,<observables>` with 12 significant digits.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace tsim
