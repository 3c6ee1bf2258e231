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

#include <json.hpp>

#include "tsim/gates.hpp"
#include "tsim/qpt.hpp"

using namespace tsim;

namespace {

ChiMatrix reconstruct(const Channel& ch) {
    return chi_linear_inversion(process_pairs(ch, tomographic_inputs(ch.n)), ch.n);
}

// Amplitude damping with Kraus operators K0 = diag(1, sqrt(1-p)), K1 = sqrt(p)|0><1|.
Channel damping(double p) {
    return {"damping", 1, [p](const DensityMatrix& r) {
                Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
                k0(0, 0) = 1.0;
                k0(1, 1) = std::sqrt(1.0 - p);
                k1(0, 1) = std::sqrt(p);
                Mat out = k0 * r.mat() * k0.adjoint() + k1 * r.mat() * k1.adjoint();
                return DensityMatrix(Operator(out, r.dims()));
            }};
}

}  // namespace

TEST_SUITE("qpt") {

TEST_CASE("tomographic inputs span the operator space with a good Gram matrix") {
    for (int n = 1; n <= 2; ++n) {
        auto in = tomographic_inputs(n);
        const long m = static_cast<long>(in.size());
        REQUIRE(m == (1L << (2 * n)));
        Mat g(m, m);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j) g(i, j) = (in[i].mat() * in[j].mat()).trace();
        Eigen::SelfAdjointEigenSolver<Mat> es(g);
        Eigen::VectorXd ev = es.eigenvalues();
        CHECK(ev.minCoeff() > 1e-6);
        // The product set gives cond(G_n) = cond(G_1)^n, about 108 for n = 2. The
        // inversion itself works with the input matrix, whose condition is the root.
        double cond = ev.maxCoeff() / ev.minCoeff();
        if (n == 1) CHECK(cond == doctest::Approx(10.4039).epsilon(1e-4));
        if (n == 2) {
            CHECK(cond == doctest::Approx(10.4039 * 10.4039).epsilon(1e-4));
            CHECK(std::sqrt(cond) < 100.0);
        }
    }
    auto s = tomographic_input_states(1);
    CHECK(std::abs(s[3][1] - cx(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("ideal chi of the entanglers") {
    for (int n = 2; n <= 3; ++n) {
        ChiMatrix chi = chi_ideal(entangler(n).matrix);
        std::string id(static_cast<size_t>(n), 'I'), xx(static_cast<size_t>(n), 'X');
        CHECK(std::abs(chi.at(id, id) - 0.5) < 1e-12);
        CHECK(std::abs(chi.at(xx, xx) - 0.5) < 1e-12);
        CHECK(std::abs(chi.at(id, xx) - cx(0.0, 0.5)) < 1e-12);
        CHECK(std::abs(chi.at(xx, id) - cx(0.0, -0.5)) < 1e-12);
        CHECK(chi.data.cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(process_fidelity(chi, chi) == doctest::Approx(1.0));
    }
    CHECK_THROWS(chi_ideal(entangler(2).matrix).at("QQ", "II"));
}

TEST_CASE("Y convention changes only the Y entries") {
    Operator y = gate("Y").matrix;
    ChiMatrix a = chi_ideal(y, YConvention::Standard), b = chi_ideal(y, YConvention::MinusISigmaY);
    CHECK(std::abs(a.at("Y", "Y") - 1.0) < 1e-12);
    CHECK(std::abs(b.at("Y", "Y") - 1.0) < 1e-12);
    ChiMatrix s = chi_ideal(gate("S").matrix, YConvention::MinusISigmaY);
    CHECK(std::abs(s.at("I", "I") - 0.5) < 1e-12);
    CHECK(process_fidelity(chi_ideal(gate("X").matrix), chi_ideal(gate("X").matrix)) == doctest::Approx(1.0));
}

TEST_CASE("linear inversion recovers unitary channels") {
    std::vector<Operator> us;
    for (const auto& name : gate_names()) {
        GateSpec g = (name == "Rx" || name == "Ry" || name == "Rz") ? gate(name, {0.9}) : gate(name);
        if (g.arity() == 2) us.push_back(g.matrix);
    }
    us.push_back(entangler(3).matrix);
    for (const auto& u : us) {
        int n = u.dim() == 4 ? 2 : 3;
        ChiMatrix rec = reconstruct(unitary_channel(u));
        ChiMatrix ref = chi_ideal(u);
        CHECK((rec.data - ref.data).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(rec.n == n);
    }
}

TEST_CASE("amplitude damping chi and fidelities") {
    const double p = 0.3;
    auto pairs = process_pairs(damping(p), tomographic_inputs(1));
    ChiMatrix chi = chi_linear_inversion(pairs, 1, YConvention::Standard);
    const double s = std::sqrt(1.0 - p);
    CHECK(chi.at("I", "I").real() == doctest::Approx((1 + s) * (1 + s) / 4).epsilon(1e-12));
    CHECK(chi.at("Z", "Z").real() == doctest::Approx((1 - s) * (1 - s) / 4).epsilon(1e-12));
    CHECK(chi.at("X", "X").real() == doctest::Approx(p / 4).epsilon(1e-12));
    CHECK(chi.hermiticity_error() < 1e-8);
    CHECK(chi.min_eigenvalue() > -1e-6);
    CHECK(std::abs(chi.trace() - 1.0) < 1e-12);
    CHECK(chi_residual(chi, pairs) < 1e-12);
    double pf = process_fidelity(chi_ideal(ops::id(2), YConvention::Standard), chi);
    CHECK(pf == doctest::Approx((1 + s) * (1 + s) / 4));
    double mf = mean_fidelity(ops::id(2), pairs);
    CHECK(mf == doctest::Approx(mean_fidelity(ops::id(2), damping(p))));
    CHECK(mf >= pf - 0.02);
}

TEST_CASE("rank-deficient inputs and mismatches are rejected") {
    auto in = tomographic_inputs(1);
    in.pop_back();
    auto pairs = process_pairs(unitary_channel(gate("X").matrix), in);
    CHECK_THROWS_AS(chi_linear_inversion(pairs, 1), NumericalError);
    CHECK_THROWS_AS(process_fidelity(chi_ideal(gate("X").matrix), chi_ideal(gate("CNOT").matrix)), ArgumentError);
    CHECK_THROWS_AS(process_fidelity(chi_ideal(gate("X").matrix, YConvention::Standard), chi_ideal(gate("X").matrix)),
                    ArgumentError);
}

TEST_CASE("master-equation channel is CPTP-like") {
    GateConditions c = resolve_conditions(GateFamily::Ent2, kTwoPi * 40.0, 5).conds;
    GateScenario s = make_gate_scenario("e2", c, NoiseSpec::from_coherence_time(kTwoPi * 1.5, 20.0), 5);
    auto pairs = process_pairs(lindblad_channel(s), tomographic_inputs(2));
    ChiMatrix chi = chi_linear_inversion(pairs, 2);
    CHECK(chi.hermiticity_error() < 1e-8);
    CHECK(chi.min_eigenvalue() > -1e-6);
    CHECK(std::abs(chi.trace() - 1.0) < 1e-9);
    Operator u = scenario_ideal_gate(s);
    CHECK(mean_fidelity(u, pairs) >= process_fidelity(chi_ideal(u), chi) - 0.02);
}

TEST_CASE("chi export") {
    ChiMatrix chi = chi_ideal(gate("X").matrix);
    std::string csv = chi_bar_csv(chi);
    CHECK(csv.rfind("row_label,col_label,abs_value\n", 0) == 0);
    CHECK(csv.find("X,X,1.00000000000\n") != std::string::npos);
    auto j = nlohmann::json::parse(chi_json(chi));
    CHECK(j["labels"].size() == 4);
    CHECK(j["re"][1][1].get<double>() == doctest::Approx(1.0));
}

}
