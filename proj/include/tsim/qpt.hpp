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
#include <string>
#include <utility>
#include <vector>

#include "tsim/lindblad.hpp"
#include "tsim/qcore.hpp"

namespace tsim {

// chi in the Pauli product basis of pauli_basis(n, y), labels from pauli_labels(n).
struct ChiMatrix {
    Mat data;
    int n = 0;
    YConvention y = YConvention::MinusISigmaY;

    const std::vector<std::string>& labels() const;
    cx at(const std::string& row, const std::string& col) const;
    double hermiticity_error() const;
    cx trace() const { return data.trace(); }
    double min_eigenvalue() const;  // of the Hermitian part

private:
    mutable std::vector<std::string> labels_;
};

// {|0>, |1>, |+>, |+i>}^(x)n, first qubit varying slowest.
std::vector<DensityMatrix> tomographic_inputs(int n);
std::vector<StateVector> tomographic_input_states(int n);

struct Channel {
    std::string name;
    int n = 0;
    std::function<DensityMatrix(const DensityMatrix&)> map;
};

Channel unitary_channel(const Operator& u, std::string name = "unitary");
// Embeds the input with the resonator in |fock_start>, runs one gate window and
// traces the resonator out.
Channel lindblad_channel(const GateScenario& s);

DensityMatrix apply_process(const Channel& ch, const DensityMatrix& rho_in);
// All inputs, evaluated in parallel, results in input order.
std::vector<std::pair<DensityMatrix, DensityMatrix>> process_pairs(const Channel& ch,
                                                                   const std::vector<DensityMatrix>& inputs);

ChiMatrix chi_linear_inversion(const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs, int n,
                               YConvention y = YConvention::MinusISigmaY);
// max |rho_out - sum chi_ab A_a rho_in A_b^dag| over the pairs.
double chi_residual(const ChiMatrix& chi, const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs);

ChiMatrix chi_ideal(const Operator& u, YConvention y = YConvention::MinusISigmaY);

double process_fidelity(const ChiMatrix& ideal, const ChiMatrix& sim);
double mean_fidelity(const Operator& u_ideal, const Channel& ch);
// Same average from already computed pairs whose inputs are pure.
double mean_fidelity(const Operator& u_ideal, const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs);

// CSV row_label,col_label,abs_value over the full basis.
std::string chi_bar_csv(const ChiMatrix& chi);
// {"labels": [...], "y_convention": ..., "re": [[...]], "im": [[...]]}
std::string chi_json(const ChiMatrix& chi);

}  // namespace tsim
