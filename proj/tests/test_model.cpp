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

#include <random>

#include "oracles.hpp"
#include "tsim/gates.hpp"
#include "tsim/model.hpp"

using namespace tsim;

namespace {

DeviceSpec small_device(int nq, int nf) {
    DeviceSpec d;
    d.n_qubits = nq;
    d.n_fock = nf;
    d.omega_q = kTwoPi * 30.0;
    d.omega_d = d.omega_q;
    d.omega_r = d.omega_q + kTwoPi * 10.0;
    d.g = kTwoPi * 2.0;
    d.omega_rabi = kTwoPi * 3.0;
    return d;
}

std::vector<oracle::SparseTerm> to_terms(const TimeHamiltonian& h) {
    std::vector<oracle::SparseTerm> out;
    for (const auto& t : h.terms()) {
        cx amp = t.amp;
        double f = t.freq;
        out.push_back({oracle::sparse(t.op.mat()), [amp, f](double s) { return amp * std::exp(I * (f * s)); }});
    }
    return out;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("Hamiltonians are Hermitian at sampled times") {
    DeviceSpec d = small_device(2, 4);
    for (double t : {0.0, 0.013, 0.21, 1.7}) {
        CHECK(hamiltonian_lab(d, t).is_hermitian(1e-12));
        CHECK(hamiltonian_interaction(d, t).is_hermitian(1e-12));
        CHECK(hamiltonian_effective(d, t).is_hermitian(1e-12));
        CHECK(frame_hamiltonian_terms(d, Frame::Effective).at(t).is_hermitian(1e-12));
    }
}

TEST_CASE("collective spin") {
    Operator sx = collective_sx(2);
    Eigen::SelfAdjointEigenSolver<Mat> es(sx.mat());
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));
    CHECK((sx.mat() - oracle::collective_sx(2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((collective_sx(3).mat() - oracle::collective_sx(3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("lab frame equals the interaction frame after free evolution") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int trial = 0; trial < 3; ++trial) {
        DeviceSpec d = small_device(trial == 2 ? 1 : 2, 4);
        d.g *= u(rng);
        d.omega_rabi *= u(rng);
        d.omega_r = d.omega_q + kTwoPi * 10.0 * u(rng);
        const double t = 0.15 * u(rng);
        Mat psi0 = Mat::Zero(d.dim(), 1);
        psi0(1, 0) = 0.6;
        psi0(d.n_fock, 0) = cx(0.0, 0.8);
        Mat lab = oracle::propagate(to_terms(lab_hamiltonian_terms(d)), psi0, t, 20000);
        Mat inter = oracle::propagate(to_terms(interaction_hamiltonian_terms(d)), psi0, t, 20000);
        Mat back = free_evolution(d, t).mat() * inter;
        double f = std::norm((lab.adjoint() * back)(0, 0));
        CHECK(f > 1.0 - 1e-6);
    }
}

TEST_CASE("interaction frame requires a resonant drive") {
    DeviceSpec d = small_device(2, 4);
    d.omega_d *= 1.01;
    CHECK_THROWS_AS(interaction_hamiltonian_terms(d), PreconditionError);
    DeviceSpec bad = small_device(2, 1);
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("factorized propagator matches a padded time-ordered integration") {
    const int nf = 6, pad = 30;
    DeviceSpec d = small_device(2, nf);
    d.g = kTwoPi * 40.0;
    d.omega_r = d.omega_q + kTwoPi * 150.0;
    const double dr = d.omega_r - d.omega_q;
    const double t = 2.7 / dr;
    Mat sx = oracle::collective_sx(2);
    Mat a = oracle::annihilation(pad);
    std::vector<oracle::SparseTerm> terms = {
        {oracle::sparse(oracle::kron(sx, Mat(a.adjoint()))), [&](double s) { return d.g * std::exp(-I * (dr * s)); }},
        {oracle::sparse(oracle::kron(sx, a)), [&](double s) { return d.g * std::exp(I * (dr * s)); }}};
    Mat cols = Mat::Zero(4 * pad, 4 * nf);
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < nf; ++n) cols(q * pad + n, q * nf + n) = 1.0;
    Mat out = oracle::propagate(terms, cols, t, 4000);
    Mat ref(4 * nf, 4 * nf);
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < nf; ++n) ref.row(q * nf + n) = out.row(q * pad + n);
    Operator u = propagator_factorized(d, t);
    CHECK((u.mat() - ref).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("factorized propagator disentangles at full periods") {
    DeviceSpec d = small_device(2, 5);
    const double dr = d.omega_r - d.omega_q;
    const double t = 2.0 * kTwoPi / dr;
    CHECK(std::abs(factorized_B(d.g, dr, t)) < 1e-12);
    Operator u = propagator_factorized(d, t);
    const double a = factorized_A(d.g, dr, t).real();
    Operator sx = collective_sx(2);
    Operator ref = kron(matexp(sx * sx, cx(0.0, -a)), ops::id(5));
    CHECK((u.mat() - ref.mat()).cwiseAbs().maxCoeff() < 1e-10);
    d.omega_r = d.omega_q;
    CHECK_THROWS_AS(propagator_factorized(d, t), PreconditionError);
}

TEST_CASE("qubit propagator") {
    DeviceSpec d = small_device(2, 4);
    const double dr = d.omega_r - d.omega_q;
    const double t = kTwoPi / dr;
    Operator u = propagator_qubit(d, t);
    const double lambda = d.g * d.g / (2.0 * dr);
    CHECK(phase_distance(u, two_qubit_closed_form(d.omega_rabi * t, lambda * t)) < 1e-10);
    Operator s2 = collective_sx(2) * collective_sx(2);
    CHECK(((u * s2).mat() - (s2 * u).mat()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(propagator_qubit(d, 0.7 * t), PreconditionError);
}

TEST_CASE("closed forms are unitary on a grid and match the exponentials") {
    Operator sx2 = collective_sx(2), sx3 = collective_sx(3);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            double b = 4.0 * kPi * i / 19.0, h = 12.0 * j / 19.0;
            Operator u2 = two_qubit_closed_form(0.5 * b * h, 0.5 * b);
            Operator u3 = three_qubit_closed_form(b, h);
            CHECK(u2.is_unitary(1e-10));
            CHECK(u3.is_unitary(1e-10));
            if (i % 5 == 0 && j % 5 == 0) {
                Operator e2 = matexp(sx2, cx(0.0, -b * h)) * matexp(sx2 * sx2, cx(0.0, -b));
                Operator e3 = matexp(sx3, cx(0.0, -b * h)) * matexp(sx3 * sx3, cx(0.0, -b));
                CHECK(phase_distance(u2, e2) < 1e-10);
                CHECK(phase_distance(u3, e3) < 1e-10);
            }
        }
}

TEST_CASE("resolved conditions satisfy their defining relations") {
    const double g = kTwoPi * 60.0;
    for (auto fam : {GateFamily::X2, GateFamily::Ent2, GateFamily::X3, GateFamily::Ent3})
        for (int idx : {1, 2, 5}) {
            GateConditions c = resolve_conditions(fam, g, idx).conds;
            CHECK(c.delta_r * c.t_gate == doctest::Approx(kTwoPi));
            CHECK(c.lambda == doctest::Approx(g * g / (2.0 * c.delta_r)));
            CHECK(c.b == doctest::Approx(2.0 * c.lambda * c.t_gate));
            CHECK(c.h == doctest::Approx(c.omega_rabi / c.lambda));
            DeviceSpec d = device_from_conditions(c, 4, kTwoPi * 4800.0);
            CHECK(phase_distance(propagator_qubit(d, c.t_gate), ideal_gate(c, 1.0)) < 1e-9);
        }
    CHECK_THROWS_AS(resolve_conditions(GateFamily::Ent2, g, 0), ArgumentError);
    CHECK_THROWS_AS(resolve_conditions(GateFamily::X2, -1.0, 0), ArgumentError);
}

TEST_CASE("base conditions give the named gates") {
    const double g = kTwoPi * 50.0;
    Operator r = gate("Rx", {-kPi / 2}).matrix;
    GateConditions x2 = resolve_conditions(GateFamily::X2, g, 0).conds;
    CHECK(phase_distance(ideal_gate(x2, 1.0), kron(r, r)) < 1e-10);
    GateConditions x3 = resolve_conditions(GateFamily::X3, g, 0).conds;
    CHECK(phase_distance(ideal_gate(x3, 1.0), w_gate(3).matrix) < 1e-10);
    GateConditions e2 = resolve_conditions(GateFamily::Ent2, g, 3).conds;
    CHECK(phase_distance(ideal_gate(e2, 1.0), entangler(2).matrix) < 1e-10);
    GateConditions e3 = resolve_conditions(GateFamily::Ent3, g, 0).conds;
    CHECK(phase_distance(ideal_gate(e3, 1.0), entangler(3).matrix) < 1e-10);
    // the interaction-frame sign conjugates the entangler
    CHECK(phase_distance(ideal_gate(e2, -1.0).mat(), Mat(entangler(2).matrix.mat().conjugate())) < 1e-10);
    auto rep = resolve_conditions(GateFamily::X2, g, 0).report;
    CHECK_FALSE(rep.strong_vs_g);
    CHECK(rep.notes.size() == 2);
}

TEST_CASE("dressed energies diagonalize the excitation blocks") {
    const double wr = 7.0, wq = 6.2, g = 0.3;
    const int nf = 8;
    Mat a = oracle::annihilation(nf);
    Mat sm = Mat::Zero(2, 2);
    sm(0, 1) = 1.0;
    Mat sz = Mat::Zero(2, 2);
    sz(0, 0) = -1.0;
    sz(1, 1) = 1.0;
    Mat h = wr * oracle::kron(Mat::Identity(2, 2), Mat(a.adjoint() * a + 0.5 * Mat::Identity(nf, nf))) +
            0.5 * wq * oracle::kron(sz, Mat::Identity(nf, nf)) +
            g * (oracle::kron(sm, Mat(a.adjoint())) + oracle::kron(Mat(sm.adjoint()), a));
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    for (int n = 0; n < 4; ++n) {
        auto [ep, em] = jc_dressed_energies(wr, g, wq - wr, n);
        auto near = [&](double e) { return (es.eigenvalues().array() - e).abs().minCoeff(); };
        CHECK(near(ep) < 1e-10);
        CHECK(near(em) < 1e-10);
    }
    CHECK_THROWS_AS(jc_dressed_energies(wr, g, 0.1, -1), ArgumentError);
}

TEST_CASE("string conversions") {
    CHECK(frame_from_string(to_string(Frame::Effective)) == Frame::Effective);
    CHECK(family_from_string(to_string(GateFamily::Ent3)) == GateFamily::Ent3);
    CHECK_THROWS_AS(frame_from_string("rotating"), ArgumentError);
    CHECK(family_qubits(GateFamily::X3) == 3);
}

}
