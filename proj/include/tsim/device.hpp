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

#include <vector>

#include "tsim/qcore.hpp"

namespace tsim {

// How e_c enters the charge-basis diagonal.
//   SingleElectron: 4 E_C (N - N_g)^2, E_C = e^2 / 2C. Matches alpha ~ -E_C and
//                   the exp(-sqrt(8 E_J / E_C)) dispersion law.
//   CooperPair:     (E_C / 2)(N - N_g)^2, E_C = (2e)^2 / C.
enum class ChargeConvention { SingleElectron, CooperPair };

struct CpbParams {
    double e_c = 1.0;
    double e_j = 0.0;
    double n_g = 0.0;
    int charge_cutoff = 15;
    ChargeConvention convention = ChargeConvention::SingleElectron;

    void validate() const;
};

struct FluxSpec {
    double e_j_max = 1.0;
    double phi_ratio = 0.0;
};

Operator cpb_hamiltonian(const CpbParams& p);
std::vector<double> cpb_spectrum(const CpbParams& p, int k_levels);

// eps_k = E_{k,k+1}(N_g = 0.5) - E_{k,k+1}(N_g = 0); n_g of `p` is ignored.
double charge_dispersion(const CpbParams& p, int k);

// E_Jmax |cos(pi phi)|. The signed cosine only matters for the sign of the
// tunnelling term, which does not change the spectrum.
double ej_of_flux(const FluxSpec& f);

struct Anharmonicity {
    double alpha;          // E_12 - E_01 at N_g = 0.5
    bool transmon_regime;  // E_J / E_C >= 10
};
Anharmonicity anharmonicity(const CpbParams& p);

// P_2 = 2 / (4 + (alpha / Omega_R)^2)
double leakage_estimate(double alpha, double omega_r_drive);

}  // namespace tsim
