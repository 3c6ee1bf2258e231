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

#include <algorithm>
#include <cmath>

#include "tsim/device.hpp"

using namespace tsim;

TEST_SUITE("device") {

TEST_CASE("charge-basis Hamiltonian is Hermitian and tridiagonal") {
    CpbParams p{1.0, 7.0, 0.3, 6};
    Operator h = cpb_hamiltonian(p);
    CHECK(h.is_hermitian(1e-15));
    for (long i = 0; i < h.dim(); ++i)
        for (long j = 0; j < h.dim(); ++j)
            if (std::abs(i - j) > 1) CHECK(h(i, j) == cx(0.0));
}

TEST_CASE("zero Josephson energy gives parabolas in both conventions") {
    for (auto conv : {ChargeConvention::SingleElectron, ChargeConvention::CooperPair}) {
        const double pref = conv == ChargeConvention::SingleElectron ? 4.0 : 0.5;
        CpbParams p{1.3, 0.0, 0.2, 5, conv};
        std::vector<double> ref;
        for (int n = -5; n <= 5; ++n) ref.push_back(pref * 1.3 * (n - 0.2) * (n - 0.2));
        std::sort(ref.begin(), ref.end());
        auto e = cpb_spectrum(p, 4);
        for (int k = 0; k < 4; ++k) CHECK(e[k] == doctest::Approx(ref[k]).epsilon(1e-12));
    }
}

TEST_CASE("small Josephson energy opens a gap E_J at the degeneracy point") {
    CpbParams p{1.0, 1e-3, 0.5, 10};
    auto e = cpb_spectrum(p, 2);
    CHECK((e[1] - e[0]) == doctest::Approx(1e-3).epsilon(1e-4));
}

TEST_CASE("spectrum is periodic and symmetric in the gate charge") {
    CpbParams a{1.0, 3.0, 0.17, 15}, b = a, c = a;
    b.n_g = 1.17;
    c.n_g = 1.0 - 0.17;
    auto ea = cpb_spectrum(a, 3), eb = cpb_spectrum(b, 3), ec = cpb_spectrum(c, 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(ea[k] == doctest::Approx(eb[k]).epsilon(1e-10));
        CHECK(ea[k] == doctest::Approx(ec[k]).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalues are continuous in the gate charge") {
    CpbParams a{1.0, 2.0, 0.31, 15}, b = a;
    b.n_g += 1e-6;
    auto ea = cpb_spectrum(a, 3), eb = cpb_spectrum(b, 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ea[k] - eb[k]) < 1e-4);
}

TEST_CASE("charge cutoff 10 is converged against 20") {
    for (double r : {1.0, 10.0, 50.0}) {
        CpbParams a{1.0, r, 0.5, 10}, b = a;
        b.charge_cutoff = 20;
        auto ea = cpb_spectrum(a, 3), eb = cpb_spectrum(b, 3);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(ea[k] - eb[k]) <= 1e-10 * std::max(1.0, std::abs(eb[k])));
    }
}

TEST_CASE("transmon limit against the harmonic estimate") {
    const double r = 50.0;
    CpbParams p{1.0, r, 0.5, 15};
    auto e = cpb_spectrum(p, 2);
    const double e01 = std::sqrt(8.0 * r) - 1.0;
    CHECK((e[1] - e[0]) == doctest::Approx(e01).epsilon(0.02));
    Anharmonicity an = anharmonicity(p);
    CHECK(an.alpha < 0.0);
    CHECK(an.transmon_regime);
    CHECK_FALSE(anharmonicity(CpbParams{1.0, 5.0, 0.5, 15}).transmon_regime);
}

TEST_CASE("charge dispersion shrinks with E_J / E_C") {
    double prev = 1e300;
    for (double r : {10.0, 20.0, 30.0, 40.0, 50.0}) {
        double e0 = std::abs(charge_dispersion(CpbParams{1.0, r, 0.0, 15}, 0));
        CHECK(e0 < prev);
        prev = e0;
    }
    // higher levels are more charge sensitive
    CpbParams p{1.0, 20.0, 0.0, 15};
    CHECK(std::abs(charge_dispersion(p, 1)) > std::abs(charge_dispersion(p, 0)));
}

TEST_CASE("flux tuning and leakage") {
    CHECK(ej_of_flux({2.0, 0.0}) == doctest::Approx(2.0));
    CHECK(ej_of_flux({2.0, 0.5}) == doctest::Approx(0.0));
    CHECK(ej_of_flux({2.0, 1.0 / 3.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ej_of_flux({0.0, 0.1}), ArgumentError);
    CHECK(leakage_estimate(-2.0, 1.0) == doctest::Approx(0.25));
    CHECK(leakage_estimate(-1e9, 1.0) < 1e-17);
    CHECK_THROWS_AS(leakage_estimate(0.0, 1.0), ArgumentError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(cpb_hamiltonian(CpbParams{0.0, 1.0, 0.0, 5}), ArgumentError);
    CHECK_THROWS_AS(cpb_hamiltonian(CpbParams{1.0, -1.0, 0.0, 5}), ArgumentError);
    CHECK_THROWS_AS(cpb_hamiltonian(CpbParams{1.0, 1.0, 0.0, 1}), ArgumentError);
    CHECK_THROWS_AS(cpb_spectrum(CpbParams{1.0, 1.0, 0.0, 2}, 6), ArgumentError);
}

}
