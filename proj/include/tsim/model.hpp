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
#include <utility>
#include <vector>

#include "tsim/qcore.hpp"

namespace tsim {

// Angular frequencies in rad/us, times in us.
struct DeviceSpec {
    int n_qubits = 2;
    int n_fock = 10;
    double omega_r = 0.0;
    double omega_q = 0.0;
    double g = 0.0;
    double omega_d = 0.0;
    double omega_rabi = 0.0;

    double delta_r() const { return omega_r - omega_d; }
    Dims dims() const;
    long dim() const { return dims_product(dims()); }
    void validate() const;
};

enum class Frame { Lab, Interaction, Effective };
std::string to_string(Frame f);
Frame frame_from_string(const std::string& s);

// One term amp * exp(i freq t) * op of a time-dependent Hamiltonian.
struct HamiltonianTerm {
    Operator op;
    cx amp;
    double freq;
};

class TimeHamiltonian {
public:
    explicit TimeHamiltonian(Dims dims) : dims_(std::move(dims)) {}
    void add(const Operator& op, cx amp, double freq = 0.0);
    Operator at(double t) const;
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }
    const Dims& dims() const { return dims_; }
    // Upper bound on ||H(t)|| over all t.
    double norm_bound() const;

private:
    Dims dims_;
    std::vector<HamiltonianTerm> terms_;
};

Operator collective_sx(int n);

TimeHamiltonian lab_hamiltonian_terms(const DeviceSpec& spec);
TimeHamiltonian interaction_hamiltonian_terms(const DeviceSpec& spec);
// H'_i alone.
TimeHamiltonian effective_hamiltonian_terms(const DeviceSpec& spec);
// Generator used for dynamics in the given frame. For Effective this is
// 2 Omega_R S_x + H'_i, the two pieces commute.
TimeHamiltonian frame_hamiltonian_terms(const DeviceSpec& spec, Frame frame);

Operator hamiltonian_lab(const DeviceSpec& spec, double t);
Operator hamiltonian_interaction(const DeviceSpec& spec, double t);
Operator hamiltonian_effective(const DeviceSpec& spec, double t);

// exp(-i H_1 t) with H_1 = omega_r a^dag a + (omega_q / 2) sum sigma_z^j. Maps
// interaction-frame states to the lab frame.
Operator free_evolution(const DeviceSpec& spec, double t);

// exp(-i A S_x^2) exp(-i B S_x a) exp(-i B* S_x a^dag). The resonator factors
// are evaluated in normal order, so the returned entries are those of the
// untruncated operator restricted to the first n_fock levels.
Operator propagator_factorized(const DeviceSpec& spec, double t);
cx factorized_A(double g, double delta, double t);
cx factorized_B(double g, double delta, double t);

// exp(-2i Omega_R S_x t) exp(-2i lambda S_x^2 t) on the qubits; requires
// Delta_r t = 2 pi k.
Operator propagator_qubit(const DeviceSpec& spec, double t);

Operator two_qubit_closed_form(double omega_rabi_t, double lambda_t);
Operator three_qubit_closed_form(double b, double h);

enum class GateFamily { X2, Ent2, X3, Ent3 };
std::string to_string(GateFamily f);
GateFamily family_from_string(const std::string& s);
int family_qubits(GateFamily f);

struct GateConditions {
    GateFamily family = GateFamily::X2;
    int integer_index = 0;
    double g = 0.0;
    double delta_r = 0.0;
    double lambda = 0.0;
    double omega_rabi = 0.0;
    double t_gate = 0.0;
    double b = 0.0;
    double h = 0.0;
};

struct ValidityReport {
    static constexpr double kStrongRatio = 10.0;
    double two_omega_over_g = 0.0;
    double two_omega_over_delta = 0.0;
    bool strong_vs_g = false;
    bool strong_vs_delta = false;
    std::vector<std::string> notes;
};

struct ResolvedConditions {
    GateConditions conds;
    ValidityReport report;
};

// Index conventions (index 0 gives the base solution of each family):
//   x2:   Omega_R = (2n+1) lambda / 2
//   ent2: Omega_R = n g, n >= 1
//   x3:   h = 1/2 + 2j
//   ent3: h = 4m + 3
ResolvedConditions resolve_conditions(GateFamily family, double g, int index);

DeviceSpec device_from_conditions(const GateConditions& c, int n_fock, double omega_q);

// Ideal qubit gate exp(-2i Omega_R S_x t) exp(-2i s lambda S_x^2 t). The
// interaction-frame coupling produces s = -1, the effective
// Hamiltonian s = +1.
Operator ideal_gate(const GateConditions& c, double lambda_sign = 1.0);
double frame_lambda_sign(Frame f);

std::pair<double, double> jc_dressed_energies(double omega_r, double g, double delta, int n);

}  // namespace tsim
