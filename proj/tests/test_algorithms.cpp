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

#include <cmath>

#include "tsim/algorithms.hpp"

using namespace tsim;

TEST_SUITE("algorithms") {

TEST_CASE("ideal Grover probabilities are the same for every marked state") {
    for (int n = 2; n <= 4; ++n) {
        GroverRun ref = grover_ideal(n, 0, 3);
        for (long x = 1; x < (1L << n); ++x) {
            GroverRun r = grover_ideal(n, x, 3);
            for (size_t k = 0; k < r.success_prob_per_step.size(); ++k)
                CHECK(std::abs(r.success_prob_per_step[k] - ref.success_prob_per_step[k]) < 1e-12);
        }
    }
}

TEST_CASE("Grover probabilities follow the rotation geometry") {
    for (int n = 2; n <= 4; ++n) {
        const double theta = grover_geometry(n, 1);
        CHECK(std::sin(theta / 2) == doctest::Approx(std::pow(2.0, -0.5 * n)));
        GroverRun r = grover_ideal(n, 1, 3);
        REQUIRE(r.success_prob_per_step.size() == 4);
        for (int k = 0; k <= 3; ++k) {
            double s = std::sin((2 * k + 1) * theta / 2);
            CHECK(std::abs(r.success_prob_per_step[k] - s * s) < 1e-12);
        }
    }
    CHECK(grover_optimal_iterations(2) == 1);
    CHECK(grover_optimal_iterations(3) == 2);
    CHECK(grover_optimal_iterations(4) == 3);
    CHECK_THROWS_AS(grover_geometry(2, 5), ArgumentError);
}

TEST_CASE("W and Hadamard preparations give the same probabilities") {
    for (long x = 0; x < 8; ++x) {
        GroverRun w = grover_ideal(3, x, 3, Prep::WGates);
        GroverRun h = grover_ideal(3, x, 3, Prep::Hadamard);
        for (size_t k = 0; k < w.success_prob_per_step.size(); ++k)
            CHECK(std::abs(w.success_prob_per_step[k] - h.success_prob_per_step[k]) < 1e-12);
    }
    CHECK(prep_from_string(to_string(Prep::Hadamard)) == Prep::Hadamard);
    CHECK_THROWS_AS(prep_from_string("qft"), ArgumentError);
}

TEST_CASE("noisy Grover reduces to the ideal circuit at the operating point") {
    for (long x = 0; x < 4; ++x) CHECK(grover_noisy_fidelity(2, x, kPi, 13.5) == doctest::Approx(1.0).epsilon(1e-12));
    for (long x = 0; x < 8; ++x)
        CHECK(grover_noisy_fidelity(3, x, kPi, 8.5) == doctest::Approx(121.0 / 128.0).epsilon(1e-12));
}

TEST_CASE("sweep is continuous in b and ordered") {
    const double d = 1e-4;
    std::vector<double> grid = {kPi - d, kPi, kPi + d, 1.05 * kPi, 1.05 * kPi + d};
    auto pts = grover_noisy_sweep(2, {0, 1, 2, 3}, grid, 13.5);
    REQUIRE(pts.size() == 20);
    for (size_t o = 0; o < 4; ++o) {
        const auto* p = &pts[o * grid.size()];
        CHECK(p[0].oracle == bit_string(static_cast<long>(o), 2));
        CHECK(std::abs(p[1].fidelity - p[0].fidelity) < 10 * d);
        CHECK(std::abs(p[2].fidelity - p[1].fidelity) < 10 * d);
        CHECK(p[3].b == doctest::Approx(1.05 * kPi));
    }
    std::string csv = sweep_csv(pts);
    CHECK(csv.rfind("b,h,oracle,fidelity\n", 0) == 0);
}

TEST_CASE("Deutsch-Jozsa") {
    auto c = deutsch_jozsa(3, {1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(c.verdict == "constant");
    CHECK(c.p_zero == doctest::Approx(1.0));
    auto b = deutsch_jozsa(2, {0, 1, 1, 0});
    CHECK(b.verdict == "balanced");
    CHECK(b.p_zero < 1e-12);
    CHECK(std::norm(b.amplitudes(3)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(deutsch_jozsa(2, {0, 0, 0, 1}), ArgumentError);
    CHECK_THROWS_AS(deutsch_jozsa(2, {0, 1}), ArgumentError);
}

TEST_CASE("master-equation Grover without noise matches the closed-form circuit in the strong-drive limit") {
    // very strong drive keeps the interaction frame close to the ideal W gate
    GateConditions c = resolve_conditions(GateFamily::X2, kTwoPi * 20.0, 199).conds;
    GroverMasterResult r = grover_master_equation(2, 3, c, NoiseSpec::none(), 8, 64);
    CHECK(r.fidelity > 0.99);
    CHECK(r.total_time == doctest::Approx(3 * c.t_gate));
    CHECK(r.segments.front().name == "X");
}

TEST_CASE("bit strings") {
    CHECK(bit_string(5, 3) == "101");
    CHECK(bit_string(0, 2) == "00");
}

}
