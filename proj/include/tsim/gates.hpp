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

#include "tsim/qcore.hpp"

namespace tsim {

struct GateSpec {
    std::string name;
    std::vector<int> qubits;  // targets, in the order of the matrix factors
    Operator matrix;
    std::vector<double> params;

    GateSpec(std::string name, std::vector<int> qubits, Operator matrix, std::vector<double> params = {});
    GateSpec on(std::vector<int> targets) const;  // same gate, other targets
    int arity() const { return static_cast<int>(qubits.size()); }
};

// Library lookup. Names: I X Y Z H S T Rx Ry Rz CNOT CP SWAP iSWAP sqrtiSWAP
// Toffoli Fredkin. Rotations take one angle.
GateSpec gate(const std::string& name, const std::vector<double>& params = {});
std::vector<std::string> gate_names();

GateSpec w_gate(int n);

// I - 2|marked><marked|.
GateSpec oracle(int n, long marked);

// V2 = I (x) W1 and V3 = I (x) I (x) W1.
Operator v2();
Operator v3();

// Two-qubit oracle cores, keyed by their conventional label.
Operator oracle_core2(const std::string& label);
Operator oracle_core3();

enum class Conjugation { V_U_Vinv, Vinv_U_V };
Operator conjugate(const Operator& v, const Operator& u, Conjugation c);

// cP_ij = V2 U V2^-1 with the U whose conjugate marks ij. The core labels 01
// and 10 are exchanged relative to the qubit-1-most-significant basis order.
GateSpec oracle_decomposed2(const std::string& marked);
// cP_111 = V3 U3 V3^-1 followed by NOT conjugation on the qubits holding 0.
GateSpec oracle_decomposed3(const std::string& marked);

// sigma_x^n R^n sigma_x^n cP_1..1 sigma_x^n R^n with R = R_x(-pi/2).
GateSpec diffusion(int n);
// Three-qubit diffusion built from the one-shot gate, applied in circuit order:
// U_I, cP_111, U_I, then sigma_x on all qubits.
GateSpec diffusion3_one_shot();

// (I - i X^n) / sqrt 2.
GateSpec entangler(int n);

std::vector<GateSpec> bell_circuit();
std::vector<GateSpec> ghz_circuit();

// Exchange evolution with the swap block [[cos, i sin], [i sin, cos]](g t).
GateSpec sqrt_iswap_evolution(double g_qq, double t);

// Full 2^n operator of a gate acting on its target qubits.
Operator expand(const GateSpec& g, int n);
StateVector run_circuit(const std::vector<GateSpec>& circuit, const StateVector& in);

// {"name", "dims", "data": [[re, im], ...] row-major}
std::string gate_json(const GateSpec& g);

}  // namespace tsim
