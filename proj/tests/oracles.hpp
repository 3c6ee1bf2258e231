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


// Independent reference integrators shared by the unit and acceptance tests.
// They never call into the library solver.

#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace oracle {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using SpMat = Eigen::SparseMatrix<cx>;

// H(t) = sum_k f_k(t) M_k.
struct SparseTerm {
    SpMat op;
    std::function<cx(double)> coeff;
};

inline Mat apply_h(const std::vector<SparseTerm>& terms, double t, const Mat& psi) {
    Mat out = Mat::Zero(psi.rows(), psi.cols());
    for (const auto& term : terms) out += term.coeff(t) * (term.op * psi);
    return out;
}

// Classical RK4 on dpsi/dt = -i H(t) psi, columns propagated together.
inline Mat propagate(const std::vector<SparseTerm>& terms, Mat psi, double t_final, long steps) {
    const cx mi(0.0, -1.0);
    const double dt = t_final / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        double t = s * dt;
        Mat k1 = mi * apply_h(terms, t, psi);
        Mat k2 = mi * apply_h(terms, t + 0.5 * dt, psi + 0.5 * dt * k1);
        Mat k3 = mi * apply_h(terms, t + 0.5 * dt, psi + 0.5 * dt * k2);
        Mat k4 = mi * apply_h(terms, t + dt, psi + dt * k3);
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

inline SpMat sparse(const Mat& m) {
    SpMat s = m.sparseView(1e-300, 1.0);
    s.makeCompressed();
    return s;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat annihilation(int n) {
    Mat a = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

// sum_j sigma_x^(j) / 2 on n qubits, qubit 1 most significant.
inline Mat collective_sx(int n) {
    const long d = 1L << n;
    Mat s = Mat::Zero(d, d);
    for (long i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) s(i ^ (1L << j), i) += 0.5;
    return s;
}

}  // namespace oracle
