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

#include "tsim/model.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace tsim {

// ---------------------------------------------------------------- DeviceSpec

Dims DeviceSpec::dims() const {
    Dims d(static_cast<size_t>(n_qubits), 2);
    d.push_back(n_fock);
    return d;
}

void DeviceSpec::validate() const {
    if (n_qubits < 1) throw ArgumentError("DeviceSpec: n_qubits must be >= 1");
    if (n_fock < 2) throw ArgumentError("DeviceSpec: n_fock must be >= 2");
    const std::pair<const char*, double> f[] = {{"omega_r", omega_r}, {"omega_q", omega_q}, {"g", g},
                                                {"omega_d", omega_d}, {"omega_rabi", omega_rabi}};
    for (auto& [name, v] : f)
        if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string("DeviceSpec: ") + name + " must be > 0");
}

std::string to_string(Frame f) {
    switch (f) {
        case Frame::Lab: return "lab";
        case Frame::Interaction: return "interaction";
        case Frame::Effective: return "effective";
    }
    return "?";
}

Frame frame_from_string(const std::string& s) {
    if (s == "lab") return Frame::Lab;
    if (s == "interaction") return Frame::Interaction;
    if (s == "effective") return Frame::Effective;
    throw ArgumentError("unknown frame '" + s + "' (expected lab, interaction or effective)");
}

// ---------------------------------------------------------------- TimeHamiltonian

void TimeHamiltonian::add(const Operator& op, cx amp, double freq) {
    if (op.dims() != dims_) throw ArgumentError("TimeHamiltonian: term dims mismatch");
    terms_.push_back({op, amp, freq});
}

Operator TimeHamiltonian::at(double t) const {
    long d = dims_product(dims_);
    Mat h = Mat::Zero(d, d);
    for (const auto& term : terms_) {
        cx c = term.freq == 0.0 ? term.amp : term.amp * std::exp(I * (term.freq * t));
        h += c * term.op.mat();
    }
    return Operator(std::move(h), dims_);
}

double TimeHamiltonian::norm_bound() const {
    double s = 0.0;
    for (const auto& term : terms_) {
        const Mat& m = term.op.mat();
        double rows = m.cwiseAbs().rowwise().sum().maxCoeff();
        double cols = m.cwiseAbs().colwise().sum().maxCoeff();
        s += std::abs(term.amp) * std::sqrt(rows * cols);
    }
    return s;
}

// ---------------------------------------------------------------- Hamiltonians

Operator collective_sx(int n) {
    if (n < 1) throw ArgumentError("collective_sx: n must be >= 1");
    Dims dims(static_cast<size_t>(n), 2);
    Operator s = Operator::zero(dims);
    for (int j = 0; j < n; ++j) s = s + ops::embed(ops::sigma_x(), j, dims);
    return s * cx(0.5);
}

namespace {

struct SystemOps {
    Operator a, ad, sx, sx2;
    std::vector<Operator> sm, sp, sz;
};

SystemOps system_ops(const DeviceSpec& spec) {
    Dims dims = spec.dims();
    int nq = spec.n_qubits;
    SystemOps o{ops::embed(ops::annihilation(spec.n_fock), nq, dims), Operator::zero(dims), Operator::zero(dims),
                Operator::zero(dims), {}, {}, {}};
    o.ad = dagger(o.a);
    for (int j = 0; j < nq; ++j) {
        o.sm.push_back(ops::embed(ops::sigma_minus(), j, dims));
        o.sp.push_back(ops::embed(ops::sigma_plus(), j, dims));
        o.sz.push_back(ops::embed(ops::qubit_z(), j, dims));
    }
    o.sx = kron(collective_sx(nq), ops::id(spec.n_fock));
    o.sx2 = o.sx * o.sx;
    return o;
}

void require_resonant_drive(const DeviceSpec& spec) {
    double tol = 1e-12 * std::max(std::abs(spec.omega_q), 1.0);
    if (std::abs(spec.omega_d - spec.omega_q) > tol)
        throw PreconditionError("interaction frame requires omega_d == omega_q");
}

}  // namespace

TimeHamiltonian lab_hamiltonian_terms(const DeviceSpec& spec) {
    spec.validate();
    SystemOps o = system_ops(spec);
    TimeHamiltonian h(spec.dims());
    h.add(o.ad * o.a, spec.omega_r);
    for (int j = 0; j < spec.n_qubits; ++j) {
        h.add(o.sz[j], 0.5 * spec.omega_q);
        h.add(o.ad * o.sm[j] + o.a * o.sp[j], spec.g);
        h.add(o.sm[j], spec.omega_rabi, spec.omega_d);
        h.add(o.sp[j], spec.omega_rabi, -spec.omega_d);
    }
    return h;
}

TimeHamiltonian interaction_hamiltonian_terms(const DeviceSpec& spec) {
    spec.validate();
    require_resonant_drive(spec);
    SystemOps o = system_ops(spec);
    const double dr = spec.omega_r - spec.omega_q;
    TimeHamiltonian h(spec.dims());
    h.add(o.sx, 2.0 * spec.omega_rabi);
    Operator down = Operator::zero(spec.dims());
    for (int j = 0; j < spec.n_qubits; ++j) down = down + o.ad * o.sm[j];
    h.add(down, spec.g, dr);
    h.add(dagger(down), spec.g, -dr);
    return h;
}

TimeHamiltonian effective_hamiltonian_terms(const DeviceSpec& spec) {
    spec.validate();
    require_resonant_drive(spec);
    SystemOps o = system_ops(spec);
    const double dr = spec.omega_r - spec.omega_q;
    TimeHamiltonian h(spec.dims());
    h.add(o.ad * o.sx, spec.g, -dr);
    h.add(o.a * o.sx, spec.g, dr);
    return h;
}

TimeHamiltonian frame_hamiltonian_terms(const DeviceSpec& spec, Frame frame) {
    switch (frame) {
        case Frame::Lab: return lab_hamiltonian_terms(spec);
        case Frame::Interaction: return interaction_hamiltonian_terms(spec);
        case Frame::Effective: {
            TimeHamiltonian h = effective_hamiltonian_terms(spec);
            h.add(kron(collective_sx(spec.n_qubits), ops::id(spec.n_fock)), 2.0 * spec.omega_rabi);
            return h;
        }
    }
    throw ArgumentError("unknown frame");
}

Operator hamiltonian_lab(const DeviceSpec& spec, double t) { return lab_hamiltonian_terms(spec).at(t); }
Operator hamiltonian_interaction(const DeviceSpec& spec, double t) {
    return interaction_hamiltonian_terms(spec).at(t);
}
Operator hamiltonian_effective(const DeviceSpec& spec, double t) { return effective_hamiltonian_terms(spec).at(t); }

Operator free_evolution(const DeviceSpec& spec, double t) {
    spec.validate();
    Dims dims = spec.dims();
    long d = dims_product(dims);
    Vec phases(d);
    for (long i = 0; i < d; ++i) {
        long n = i % spec.n_fock;
        long q = i / spec.n_fock;
        double e = spec.omega_r * static_cast<double>(n);
        for (int j = 0; j < spec.n_qubits; ++j) {
            int bit = (q >> (spec.n_qubits - 1 - j)) & 1;
            e += 0.5 * spec.omega_q * (bit ? 1.0 : -1.0);
        }
        phases(i) = std::exp(-I * (e * t));
    }
    return Operator(Mat(phases.asDiagonal()), dims);
}

// ---------------------------------------------------------------- propagators

cx factorized_A(double g, double delta, double t) {
    return (g * g / delta) * (t + (std::exp(-I * (delta * t)) - 1.0) / (I * delta));
}

cx factorized_B(double g, double delta, double t) { return g * (std::exp(I * (delta * t)) - 1.0) / (I * delta); }

Operator propagator_factorized(const DeviceSpec& spec, double t) {
    spec.validate();
    require_resonant_drive(spec);
    const double dr = spec.omega_r - spec.omega_q;
    if (dr == 0.0) throw PreconditionError("propagator_factorized: Delta_r = 0 is singular");
    const cx A = factorized_A(spec.g, dr, t);
    const cx B = factorized_B(spec.g, dr, t);
    const int nq = spec.n_qubits;
    const int nf = spec.n_fock;

    // S_x eigenbasis: the resonator factor depends only on the eigenvalue s.
    Mat sx = collective_sx(nq).mat();
    Eigen::SelfAdjointEigenSolver<Mat> es(sx);
    if (es.info() != Eigen::Success) throw NumericalError("propagator_factorized: eigensolver failed");

    std::vector<double> lf(nf);  // log factorials
    for (int k = 0; k < nf; ++k) lf[k] = std::lgamma(k + 1.0);

    // <m| e^{beta a} e^{gamma a^dag} |n> = e^{beta gamma} sum_j <m|e^{gamma a^dag}|j><j|e^{beta a}|n>
    auto resonator_block = [&](double s) {
        const cx beta = -I * B * s;
        const cx gamma = -I * std::conj(B) * s;
        const cx pref = std::exp(-I * A * (s * s)) * std::exp(beta * gamma);
        Mat r = Mat::Zero(nf, nf);
        for (int m = 0; m < nf; ++m)
            for (int n = 0; n < nf; ++n) {
                cx acc = 0.0;
                for (int j = 0; j <= std::min(m, n); ++j) {
                    double mag = std::exp(0.5 * (lf[m] + lf[n]) - lf[m - j] - lf[n - j] - lf[j]);
                    acc += mag * std::pow(gamma, m - j) * std::pow(beta, n - j);
                }
                r(m, n) = pref * acc;
            }
        return r;
    };

    const long dq = 1L << nq;
    Mat out = Mat::Zero(dq * nf, dq * nf);
    const Mat& V = es.eigenvectors();
    for (long k = 0; k < dq; ++k) {
        double s = es.eigenvalues()(k);
        Mat proj = V.col(k) * V.col(k).adjoint();
        Mat r = resonator_block(s);
        for (long i = 0; i < dq; ++i)
            for (long j = 0; j < dq; ++j)
                if (proj(i, j) != cx(0.0)) out.block(i * nf, j * nf, nf, nf) += proj(i, j) * r;
    }
    return Operator(std::move(out), spec.dims());
}

Operator propagator_qubit(const DeviceSpec& spec, double t) {
    spec.validate();
    require_resonant_drive(spec);
    const double dr = spec.omega_r - spec.omega_q;
    double k = dr * t / kTwoPi;
    double kr = std::round(k);
    if (kr < 1.0 || std::abs(k - kr) > 1e-9 * std::max(1.0, std::abs(k))) {
        std::ostringstream os;
        os << "propagator_qubit requires Delta_r t = 2 pi k for positive integer k; residual "
           << (k - kr) << " periods";
        throw PreconditionError(os.str());
    }
    const double lambda = spec.g * spec.g / (2.0 * dr);
    Operator sx = collective_sx(spec.n_qubits);
    return matexp(sx, -2.0 * I * spec.omega_rabi * t) * matexp(sx * sx, -2.0 * I * lambda * t);
}

Operator two_qubit_closed_form(double omega_rabi_t, double lambda_t) {
    const cx e = std::exp(-2.0 * I * lambda_t);
    const double c = std::cos(2.0 * omega_rabi_t);
    const double s = std::sin(2.0 * omega_rabi_t);
    const cx vals[3] = {0.5 + 0.5 * c * e, -0.5 * I * s * e, -0.5 + 0.5 * c * e};
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = vals[std::popcount(static_cast<unsigned>(i ^ j))];
    return Operator(std::move(m), {2, 2});
}

Operator three_qubit_closed_form(double b, double h) {
    const cx e = std::exp(-I * (9.0 * b / 4.0));
    const cx z = std::exp(2.0 * I * b);
    const double bh = b * h;
    const cx A = 0.25 * e * (std::cos(1.5 * bh) + 3.0 * std::cos(0.5 * bh) * z);
    const cx B = -0.25 * I * e * (std::sin(1.5 * bh) - 3.0 * std::sin(0.5 * bh) * z);
    const cx C = -0.25 * I * e * (std::sin(1.5 * bh) + std::sin(0.5 * bh) * z);
    const cx D = 0.25 * e * (std::cos(1.5 * bh) - std::cos(0.5 * bh) * z);
    // Entry depends on the number of flipped bits between row and column.
    const cx by_weight[4] = {A, C, D, B};
    Mat m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m(i, j) = by_weight[std::popcount(static_cast<unsigned>(i ^ j))];
    return Operator(std::move(m), {2, 2, 2});
}

// ---------------------------------------------------------------- gate conditions

std::string to_string(GateFamily f) {
    switch (f) {
        case GateFamily::X2: return "x2";
        case GateFamily::Ent2: return "ent2";
        case GateFamily::X3: return "x3";
        case GateFamily::Ent3: return "ent3";
    }
    return "?";
}

GateFamily family_from_string(const std::string& s) {
    if (s == "x2") return GateFamily::X2;
    if (s == "ent2") return GateFamily::Ent2;
    if (s == "x3") return GateFamily::X3;
    if (s == "ent3") return GateFamily::Ent3;
    throw ArgumentError("unknown gate family '" + s + "' (expected x2, ent2, x3 or ent3)");
}

int family_qubits(GateFamily f) { return (f == GateFamily::X2 || f == GateFamily::Ent2) ? 2 : 3; }

ResolvedConditions resolve_conditions(GateFamily family, double g, int index) {
    if (!(g > 0.0)) throw ArgumentError("resolve_conditions: g must be > 0");
    if (index < 0) throw ArgumentError("resolve_conditions: index must be >= 0");
    GateConditions c;
    c.family = family;
    c.integer_index = index;
    c.g = g;
    switch (family) {
        case GateFamily::X2:
            c.delta_r = std::sqrt(2.0) * g;
            c.lambda = g * g / (2.0 * c.delta_r);
            c.omega_rabi = (2.0 * index + 1.0) * c.lambda / 2.0;
            break;
        case GateFamily::Ent2:
            if (index == 0) throw ArgumentError("resolve_conditions: ent2 with n = 0 gives Omega_R = 0");
            c.delta_r = 2.0 * g;
            c.lambda = g * g / (2.0 * c.delta_r);
            c.omega_rabi = index * g;
            break;
        case GateFamily::X3:
            c.delta_r = std::sqrt(2.0) * g;
            c.lambda = g * g / (2.0 * c.delta_r);
            c.omega_rabi = (0.5 + 2.0 * index) * c.lambda;
            break;
        case GateFamily::Ent3:
            c.delta_r = 2.0 * g;
            c.lambda = g * g / (2.0 * c.delta_r);
            c.omega_rabi = (4.0 * index + 3.0) * c.lambda;
            break;
    }
    c.t_gate = kTwoPi / c.delta_r;
    c.b = 2.0 * c.lambda * c.t_gate;
    c.h = c.omega_rabi / c.lambda;

    ValidityReport r;
    r.two_omega_over_g = 2.0 * c.omega_rabi / g;
    r.two_omega_over_delta = 2.0 * c.omega_rabi / c.delta_r;
    r.strong_vs_g = r.two_omega_over_g >= ValidityReport::kStrongRatio;
    r.strong_vs_delta = r.two_omega_over_delta >= ValidityReport::kStrongRatio;
    if (!r.strong_vs_g) r.notes.push_back("2 Omega_R >> g not satisfied");
    if (!r.strong_vs_delta) r.notes.push_back("2 Omega_R >> Delta_r not satisfied");
    return {c, r};
}

DeviceSpec device_from_conditions(const GateConditions& c, int n_fock, double omega_q) {
    DeviceSpec d;
    d.n_qubits = family_qubits(c.family);
    d.n_fock = n_fock;
    d.omega_q = omega_q;
    d.omega_d = omega_q;
    d.omega_r = omega_q + c.delta_r;
    d.g = c.g;
    d.omega_rabi = c.omega_rabi;
    d.validate();
    return d;
}

Operator ideal_gate(const GateConditions& c, double lambda_sign) {
    Operator sx = collective_sx(family_qubits(c.family));
    return matexp(sx, -2.0 * I * c.omega_rabi * c.t_gate) *
           matexp(sx * sx, -2.0 * I * lambda_sign * c.lambda * c.t_gate);
}

double frame_lambda_sign(Frame f) { return f == Frame::Effective ? 1.0 : -1.0; }

std::pair<double, double> jc_dressed_energies(double omega_r, double g, double delta, int n) {
    if (n < 0) throw ArgumentError("jc_dressed_energies: n must be >= 0");
    double root = 0.5 * std::sqrt(4.0 * g * g * (n + 1.0) + delta * delta);
    return {omega_r * (n + 1.0) + root, omega_r * (n + 1.0) - root};
}

}  // namespace tsim
