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


#include "tsim/qpt.hpp"

#include <cmath>

#include <Eigen/QR>
#include <json.hpp>
#include <tbb/parallel_for.h>

#include "tsim/io.hpp"

namespace tsim {

namespace {

Vec vec_of(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

std::string y_name(YConvention y) { return y == YConvention::Standard ? "standard" : "minus_i_sigma_y"; }

const std::vector<StateVector>& single_inputs() {
    static const std::vector<StateVector> s = [] {
        const double r = 1.0 / std::sqrt(2.0);
        Vec zero(2), one(2), plus(2), plus_i(2);
        zero << 1.0, 0.0;
        one << 0.0, 1.0;
        plus << r, r;
        plus_i << r, cx(0.0, r);
        return std::vector<StateVector>{StateVector(zero, {2}), StateVector(one, {2}), StateVector(plus, {2}),
                                        StateVector(plus_i, {2})};
    }();
    return s;
}

}  // namespace

const std::vector<std::string>& ChiMatrix::labels() const {
    if (labels_.empty()) labels_ = pauli_labels(n);
    return labels_;
}

cx ChiMatrix::at(const std::string& row, const std::string& col) const {
    const auto& l = labels();
    auto r = std::find(l.begin(), l.end(), row), c = std::find(l.begin(), l.end(), col);
    if (r == l.end() || c == l.end()) throw ArgumentError("ChiMatrix::at: unknown label");
    return data(r - l.begin(), c - l.begin());
}

double ChiMatrix::hermiticity_error() const { return (data - data.adjoint()).cwiseAbs().maxCoeff(); }

double ChiMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (data + data.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::vector<StateVector> tomographic_input_states(int n) {
    if (n < 1) throw ArgumentError("tomographic_inputs: n must be >= 1");
    std::vector<StateVector> out;
    const long count = 1L << (2 * n);
    for (long k = 0; k < count; ++k) {
        StateVector psi = single_inputs()[(k >> (2 * (n - 1))) & 3];
        for (int q = 1; q < n; ++q) psi = kron(psi, single_inputs()[(k >> (2 * (n - 1 - q))) & 3]);
        out.push_back(psi);
    }
    return out;
}

std::vector<DensityMatrix> tomographic_inputs(int n) {
    std::vector<DensityMatrix> out;
    for (const auto& psi : tomographic_input_states(n)) out.push_back(DensityMatrix::pure(psi));
    return out;
}

Channel unitary_channel(const Operator& u, std::string name) {
    if (!u.is_unitary(1e-10)) throw ArgumentError("unitary_channel: operator is not unitary");
    int n = static_cast<int>(u.dims().size());
    for (int d : u.dims())
        if (d != 2) throw ArgumentError("unitary_channel: operator must act on qubits");
    return {std::move(name), n, [u](const DensityMatrix& rho) { return apply(u, rho); }};
}

Channel lindblad_channel(const GateScenario& s) {
    const int n = s.device.n_qubits;
    const int nf = s.device.n_fock;
    if (s.fock_start < 0 || s.fock_start >= nf) throw ArgumentError("lindblad_channel: fock_start out of range");
    std::vector<int> keep(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) keep[j] = j;
    DensityMatrix fock = DensityMatrix::pure(StateVector::basis({nf}, s.fock_start));
    return {s.name, n, [s, keep, fock](const DensityMatrix& rho) {
                DensityMatrix joint = DensityMatrix::unchecked(kron(rho.op(), fock.op()));
                return partial_trace(evolve_gate(s, joint), keep);
            }};
}

DensityMatrix apply_process(const Channel& ch, const DensityMatrix& rho_in) {
    if (static_cast<int>(rho_in.dims().size()) != ch.n) throw ArgumentError("apply_process: qubit count mismatch");
    return ch.map(rho_in);
}

std::vector<std::pair<DensityMatrix, DensityMatrix>> process_pairs(const Channel& ch,
                                                                   const std::vector<DensityMatrix>& inputs) {
    std::vector<std::pair<DensityMatrix, DensityMatrix>> out(inputs.size(), {inputs.front(), inputs.front()});
    tbb::parallel_for(size_t(0), inputs.size(), [&](size_t k) { out[k] = {inputs[k], apply_process(ch, inputs[k])}; });
    return out;
}

ChiMatrix chi_linear_inversion(const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs, int n, YConvention y) {
    if (n < 1) throw ArgumentError("chi_linear_inversion: n must be >= 1");
    const long d = 1L << n, d2 = d * d;
    if (pairs.empty()) throw ArgumentError("chi_linear_inversion: no input pairs");
    const long K = static_cast<long>(pairs.size());
    Mat in(d2, K), out(d2, K);
    for (long k = 0; k < K; ++k) {
        if (pairs[k].first.dim() != d || pairs[k].second.dim() != d)
            throw ArgumentError("chi_linear_inversion: pair dimension does not match n");
        in.col(k) = vec_of(pairs[k].first.mat());
        out.col(k) = vec_of(pairs[k].second.mat());
    }
    // Superoperator S with S vec(rho_in) = vec(rho_out), least squares in S^T.
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(in.transpose());
    cod.setThreshold(1e-10);
    if (cod.rank() < d2)
        throw NumericalError("chi_linear_inversion: input set is rank deficient (rank " + std::to_string(cod.rank()) +
                             " < " + std::to_string(d2) + ")");
    Mat S = cod.solve(out.transpose()).transpose();

    // S = sum chi_ab conj(A_b) (x) A_a; these products are orthogonal with norm d^2.
    const auto basis = pauli_basis(n, y);
    const long m = static_cast<long>(basis.size());
    ChiMatrix chi;
    chi.n = n;
    chi.y = y;
    chi.data = Mat::Zero(m, m);
    for (long b = 0; b < m; ++b) {
        const Mat& Ab = basis[b].mat();
        Mat T = Mat::Zero(d, d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) {
                if (Ab(i, j) == cx(0.0)) continue;
                T += Ab(i, j) * S.block(i * d, j * d, d, d);
            }
        for (long a = 0; a < m; ++a) chi.data(a, b) = (basis[a].mat().conjugate().cwiseProduct(T)).sum() / double(d2);
    }
    return chi;
}

double chi_residual(const ChiMatrix& chi, const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs) {
    const auto basis = pauli_basis(chi.n, chi.y);
    const long m = static_cast<long>(basis.size());
    std::vector<Mat> right(static_cast<size_t>(m));
    for (long a = 0; a < m; ++a) {
        right[a] = Mat::Zero(basis[0].dim(), basis[0].dim());
        for (long b = 0; b < m; ++b) right[a] += chi.data(a, b) * basis[b].mat().adjoint();
    }
    double worst = 0.0;
    for (const auto& [rin, rout] : pairs) {
        Mat acc = Mat::Zero(rin.dim(), rin.dim());
        for (long a = 0; a < m; ++a) acc += basis[a].mat() * rin.mat() * right[a];
        worst = std::max(worst, (acc - rout.mat()).cwiseAbs().maxCoeff());
    }
    return worst;
}

ChiMatrix chi_ideal(const Operator& u, YConvention y) {
    const int n = static_cast<int>(u.dims().size());
    const auto basis = pauli_basis(n, y);
    const double d = static_cast<double>(u.dim());
    Vec c(static_cast<long>(basis.size()));
    for (size_t a = 0; a < basis.size(); ++a) c(a) = (basis[a].mat().adjoint() * u.mat()).trace() / d;
    ChiMatrix chi;
    chi.n = n;
    chi.y = y;
    chi.data = c * c.adjoint();
    return chi;
}

double process_fidelity(const ChiMatrix& ideal, const ChiMatrix& sim) {
    if (ideal.n != sim.n) throw ArgumentError("process_fidelity: qubit counts differ");
    if (ideal.y != sim.y) throw ArgumentError("process_fidelity: Y conventions differ");
    return (ideal.data * sim.data).trace().real();
}

double mean_fidelity(const Operator& u_ideal, const Channel& ch) {
    if (static_cast<int>(u_ideal.dims().size()) != ch.n) throw ArgumentError("mean_fidelity: qubit count mismatch");
    const auto inputs = tomographic_input_states(ch.n);
    std::vector<double> f(inputs.size());
    tbb::parallel_for(size_t(0), inputs.size(), [&](size_t k) {
        f[k] = fidelity_pure(apply(u_ideal, inputs[k]), apply_process(ch, DensityMatrix::pure(inputs[k])));
    });
    double sum = 0.0;
    for (double v : f) sum += v;
    return sum / static_cast<double>(f.size());
}

double mean_fidelity(const Operator& u_ideal, const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs) {
    if (pairs.empty()) throw ArgumentError("mean_fidelity: no pairs");
    double sum = 0.0;
    for (const auto& [rin, rout] : pairs) {
        if (std::abs(rin.purity() - 1.0) > 1e-9) throw ArgumentError("mean_fidelity: inputs must be pure");
        if (rin.dim() != u_ideal.dim()) throw ArgumentError("mean_fidelity: dimension mismatch");
        Mat target = u_ideal.mat() * rin.mat() * u_ideal.mat().adjoint();
        sum += (target * rout.mat()).trace().real();
    }
    return sum / static_cast<double>(pairs.size());
}

std::string chi_bar_csv(const ChiMatrix& chi) {
    CsvWriter w({"row_label", "col_label", "abs_value"});
    const auto& l = chi.labels();
    for (size_t a = 0; a < l.size(); ++a)
        for (size_t b = 0; b < l.size(); ++b) w.row({l[a], l[b], fmt12(std::abs(chi.data(a, b)))});
    return w.str();
}

std::string chi_json(const ChiMatrix& chi) {
    nlohmann::json j;
    j["labels"] = chi.labels();
    j["y_convention"] = y_name(chi.y);
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (long a = 0; a < chi.data.rows(); ++a) {
        std::vector<double> r, i;
        for (long b = 0; b < chi.data.cols(); ++b) {
            r.push_back(chi.data(a, b).real());
            i.push_back(chi.data(a, b).imag());
        }
        re.push_back(r);
        im.push_back(i);
    }
    j["re"] = re;
    j["im"] = im;
    return j.dump(1) + "\n";
}

}  // namespace tsim
