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

#include "tsim/device.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace tsim {

void CpbParams::validate() const {
    if (!(e_c > 0.0)) throw ArgumentError("CpbParams: e_c must be > 0");
    if (!(e_j >= 0.0)) throw ArgumentError("CpbParams: e_j must be >= 0");
    if (charge_cutoff < 2) throw ArgumentError("CpbParams: charge_cutoff must be >= 2");
}

Operator cpb_hamiltonian(const CpbParams& p) {
    p.validate();
    const int d = 2 * p.charge_cutoff + 1;
    const double pref = p.convention == ChargeConvention::SingleElectron ? 4.0 * p.e_c : 0.5 * p.e_c;
    Mat h = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        double n = k - p.charge_cutoff - p.n_g;
        h(k, k) = pref * n * n;
        if (k + 1 < d) {
            h(k, k + 1) = -0.5 * p.e_j;
            h(k + 1, k) = -0.5 * p.e_j;
        }
    }
    return Operator(std::move(h));
}

std::vector<double> cpb_spectrum(const CpbParams& p, int k_levels) {
    const int d = 2 * p.charge_cutoff + 1;
    if (k_levels < 1 || k_levels > d) throw ArgumentError("cpb_spectrum: k_levels out of range");
    Eigen::MatrixXd h = cpb_hamiltonian(p).mat().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("cpb_spectrum: eigenvalue solver failed");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + k_levels);
    return out;
}

double charge_dispersion(const CpbParams& p, int k) {
    if (k < 0) throw ArgumentError("charge_dispersion: k must be >= 0");
    CpbParams half = p, zero = p;
    half.n_g = 0.5;
    zero.n_g = 0.0;
    auto eh = cpb_spectrum(half, k + 2);
    auto ez = cpb_spectrum(zero, k + 2);
    return (eh[k + 1] - eh[k]) - (ez[k + 1] - ez[k]);
}

double ej_of_flux(const FluxSpec& f) {
    if (!(f.e_j_max > 0.0)) throw ArgumentError("FluxSpec: e_j_max must be > 0");
    return f.e_j_max * std::abs(std::cos(kPi * f.phi_ratio));
}

Anharmonicity anharmonicity(const CpbParams& p) {
    CpbParams q = p;
    q.n_g = 0.5;
    auto e = cpb_spectrum(q, 3);
    return {(e[2] - e[1]) - (e[1] - e[0]), p.e_j / p.e_c >= 10.0};
}

double leakage_estimate(double alpha, double omega_r_drive) {
    if (alpha == 0.0) throw ArgumentError("leakage_estimate: alpha must be nonzero");
    double r = alpha / omega_r_drive;
    if (!std::isfinite(r)) return 0.0;
    return 2.0 / (4.0 + r * r);
}

}  // namespace tsim
