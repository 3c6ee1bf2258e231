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

#include "tsim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace tsim {

long dims_product(const Dims& dims) {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
}

namespace {

void check_dims(const Dims& dims, long rows, long cols) {
    if (rows != cols) throw ArgumentError("operator must be square");
    if (rows < 1) throw ArgumentError("operator dimension must be >= 1");
    for (int d : dims)
        if (d < 2) throw ArgumentError("subsystem dimensions must be >= 2");
    if (dims_product(dims) != rows)
        throw ArgumentError("product of dims (" + std::to_string(dims_product(dims)) +
                            ") does not match matrix dimension " + std::to_string(rows));
}

void require_same_dims(const Dims& a, const Dims& b, const char* what) {
    if (a != b) throw ArgumentError(std::string(what) + ": dimension mismatch");
}

Dims single(long d) { return d > 1 ? Dims{static_cast<int>(d)} : Dims{}; }

}  // namespace

// ---------------------------------------------------------------- Operator

Operator::Operator(Mat data, Dims dims) : data_(std::move(data)), dims_(std::move(dims)) {
    check_dims(dims_, data_.rows(), data_.cols());
}

Operator::Operator(Mat data) : Operator(data, single(data.rows())) {}

Operator Operator::identity(const Dims& dims) {
    long d = dims_product(dims);
    return Operator(Mat::Identity(d, d), dims);
}

Operator Operator::zero(const Dims& dims) {
    long d = dims_product(dims);
    return Operator(Mat::Zero(d, d), dims);
}

Operator Operator::operator+(const Operator& o) const {
    require_same_dims(dims_, o.dims_, "operator+");
    return Operator(data_ + o.data_, dims_);
}

Operator Operator::operator-(const Operator& o) const {
    require_same_dims(dims_, o.dims_, "operator-");
    return Operator(data_ - o.data_, dims_);
}

Operator Operator::operator*(const Operator& o) const {
    require_same_dims(dims_, o.dims_, "operator*");
    return Operator(data_ * o.data_, dims_);
}

Operator Operator::operator*(cx s) const { return Operator(data_ * s, dims_); }

bool Operator::is_hermitian(double tol) const {
    return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
    Mat d = data_.adjoint() * data_ - Mat::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff() <= tol;
}

double Operator::max_abs() const { return data_.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(Vec data, Dims dims) : data_(std::move(data)), dims_(std::move(dims)) {
    if (dims_product(dims_) != data_.size())
        throw ArgumentError("state vector length does not match dims");
    double n = data_.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw ArgumentError("state vector has zero or non-finite norm");
    data_ /= n;
}

StateVector StateVector::basis(const Dims& dims, long index) {
    long d = dims_product(dims);
    if (index < 0 || index >= d) throw ArgumentError("basis index out of range");
    Vec v = Vec::Zero(d);
    v(index) = 1.0;
    return StateVector(v, dims);
}

StateVector kron(const StateVector& a, const StateVector& b) {
    Vec v(a.dim() * b.dim());
    for (long i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.vec()(i) * b.vec();
    Dims d = a.dims();
    d.insert(d.end(), b.dims().begin(), b.dims().end());
    return StateVector(v, d);
}

StateVector apply(const Operator& u, const StateVector& psi) {
    require_same_dims(u.dims(), psi.dims(), "apply");
    return StateVector(u.mat() * psi.vec(), psi.dims());
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
    if (!op_.is_hermitian(kHermTol)) throw ArgumentError("density matrix is not Hermitian");
    cx tr = op_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) throw ArgumentError("density matrix trace differs from 1");
    if (min_eigenvalue() < -kEigTol) throw ArgumentError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(Operator(psi.vec() * psi.vec().adjoint(), psi.dims()), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
    long d = dims_product(dims);
    return DensityMatrix(Operator(Mat::Identity(d, d) / static_cast<double>(d), dims), Unchecked{});
}

DensityMatrix DensityMatrix::unchecked(Operator op) { return DensityMatrix(std::move(op), Unchecked{}); }

double DensityMatrix::min_eigenvalue() const {
    Mat h = 0.5 * (mat() + mat().adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (mat() * mat()).trace().real(); }

DensityMatrix apply(const Operator& u, const DensityMatrix& rho) {
    require_same_dims(u.dims(), rho.dims(), "apply");
    return DensityMatrix::unchecked(Operator(u.mat() * rho.mat() * u.mat().adjoint(), rho.dims()));
}

// ---------------------------------------------------------------- algebra

Operator kron(const Operator& a, const Operator& b) {
    const Mat& A = a.mat();
    const Mat& B = b.mat();
    long db = B.rows();
    Mat out(A.rows() * db, A.cols() * db);
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j) out.block(i * db, j * db, db, db) = A(i, j) * B;
    Dims d = a.dims();
    d.insert(d.end(), b.dims().begin(), b.dims().end());
    return Operator(std::move(out), std::move(d));
}

Operator kron_all(const std::vector<Operator>& list) {
    if (list.empty()) throw ArgumentError("kron_all of an empty list");
    Operator out = list.front();
    for (size_t k = 1; k < list.size(); ++k) out = kron(out, list[k]);
    return out;
}

Operator dagger(const Operator& a) { return Operator(a.mat().adjoint(), a.dims()); }

Operator matexp(const Operator& h, cx scale) {
    const Mat& m = h.mat();
    if (!m.allFinite()) throw ArgumentError("matexp: non-finite input");
    double scale_tol = 1e-13 * std::max(1.0, h.max_abs());
    if (h.is_hermitian(scale_tol)) {
        Mat herm = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> es(herm);
        if (es.info() != Eigen::Success) throw NumericalError("matexp: eigendecomposition failed");
        Vec ev = (scale * es.eigenvalues().cast<cx>()).array().exp();
        Mat out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        return Operator(std::move(out), h.dims());
    }
    Mat arg = scale * m;
    Mat out = arg.exp();
    if (!out.allFinite()) throw NumericalError("matexp: scaling-and-squaring produced non-finite entries");
    return Operator(std::move(out), h.dims());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_in) {
    const Dims& dims = rho.dims();
    if (keep_in.empty()) throw ArgumentError("partial_trace: keep set is empty");
    std::vector<int> keep = keep_in;
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw ArgumentError("partial_trace: duplicate index in keep set");
    for (int k : keep)
        if (k < 0 || k >= static_cast<int>(dims.size()))
            throw ArgumentError("partial_trace: keep index " + std::to_string(k) + " out of range");

    const int ns = static_cast<int>(dims.size());
    std::vector<bool> kept(ns, false);
    for (int k : keep) kept[k] = true;
    Dims kdims;
    long dk = 1, dt = 1;
    for (int s = 0; s < ns; ++s) {
        if (kept[s]) {
            kdims.push_back(dims[s]);
            dk *= dims[s];
        } else {
            dt *= dims[s];
        }
    }

    // For every full index, its position within the kept and traced factors.
    const long d = rho.dim();
    std::vector<std::vector<std::pair<long, long>>> groups(dt);
    for (long i = 0; i < d; ++i) {
        long rem = i, ki = 0, ti = 0, km = 1, tm = 1;
        for (int s = ns - 1; s >= 0; --s) {
            long digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                ki += digit * km;
                km *= dims[s];
            } else {
                ti += digit * tm;
                tm *= dims[s];
            }
        }
        groups[ti].push_back({i, ki});
    }
    Mat out = Mat::Zero(dk, dk);
    const Mat& m = rho.mat();
    for (const auto& grp : groups)
        for (const auto& [fi, ki] : grp)
            for (const auto& [fj, kj] : grp) out(ki, kj) += m(fi, fj);
    return DensityMatrix::unchecked(Operator(std::move(out), kdims));
}

std::vector<Operator> pauli_basis(int n, YConvention conv) {
    if (n < 1) throw ArgumentError("pauli_basis: n must be >= 1");
    Operator y = conv == YConvention::Standard ? ops::sigma_y() : ops::sigma_y() * cx(0.0, -1.0);
    const std::vector<Operator> single = {ops::id(2), ops::sigma_x(), y, ops::sigma_z()};
    std::vector<Operator> out;
    long count = 1L << (2 * n);
    out.reserve(count);
    for (long idx = 0; idx < count; ++idx) {
        std::vector<Operator> factors;
        for (int k = n - 1; k >= 0; --k) factors.push_back(single[(idx >> (2 * k)) & 3]);
        out.push_back(kron_all(factors));
    }
    return out;
}

std::vector<std::string> pauli_labels(int n) {
    static const char kL[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::string> out;
    long count = 1L << (2 * n);
    for (long idx = 0; idx < count; ++idx) {
        std::string s;
        for (int k = n - 1; k >= 0; --k) s.push_back(kL[(idx >> (2 * k)) & 3]);
        out.push_back(s);
    }
    return out;
}

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
    require_same_dims(psi.dims(), rho.dims(), "fidelity_pure");
    cx f = psi.vec().dot(rho.mat() * psi.vec());
    if (std::abs(f.imag()) >= 1e-10) throw NumericalError("fidelity_pure: overlap has an imaginary part");
    return f.real();
}

namespace {
Mat psd_sqrt(const Mat& m, const char* who) {
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-7) throw ArgumentError(std::string(who) + ": input is not positive semidefinite");
    Eigen::VectorXd s = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.cast<cx>().asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace

double fidelity_mixed(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dims(rho.dims(), sigma.dims(), "fidelity_mixed");
    psd_sqrt(rho.mat(), "fidelity_mixed");
    Mat ss = psd_sqrt(sigma.mat(), "fidelity_mixed");
    Mat inner = ss * rho.mat() * ss;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return tr * tr;
}

double phase_distance(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("phase_distance: shape mismatch");
    cx ov = (b.adjoint() * a).trace();
    cx ph = std::abs(ov) > 1e-300 ? ov / std::abs(ov) : cx(1.0);
    return (a - ph * b).cwiseAbs().maxCoeff();
}

double phase_distance(const Operator& a, const Operator& b) { return phase_distance(a.mat(), b.mat()); }

// ---------------------------------------------------------------- elementary operators

namespace ops {

Operator id(int d) { return Operator(Mat::Identity(d, d)); }

Operator sigma_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(m);
}

Operator sigma_y() {
    Mat m(2, 2);
    m << 0, -I, I, 0;
    return Operator(m);
}

Operator sigma_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return Operator(m);
}

Operator sigma_minus() {
    Mat m(2, 2);
    m << 0, 1, 0, 0;
    return Operator(m);
}

Operator sigma_plus() { return dagger(sigma_minus()); }

Operator qubit_z() {
    Mat m(2, 2);
    m << -1, 0, 0, 1;
    return Operator(m);
}

Operator annihilation(int n) {
    if (n < 2) throw ArgumentError("annihilation: truncation must be >= 2");
    Mat m = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
    return Operator(m);
}

Operator number(int n) {
    Mat m = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = k;
    return Operator(m);
}

Operator embed(const Operator& op, int slot, const Dims& dims) {
    if (slot < 0 || slot >= static_cast<int>(dims.size())) throw ArgumentError("embed: slot out of range");
    if (op.dim() != dims[slot]) throw ArgumentError("embed: operator does not fit the slot");
    long left = 1, right = 1;
    for (int s = 0; s < slot; ++s) left *= dims[s];
    for (size_t s = slot + 1; s < dims.size(); ++s) right *= dims[s];
    const Mat& m = op.mat();
    long d = left * m.rows() * right;
    Mat out = Mat::Zero(d, d);
    for (long l = 0; l < left; ++l)
        for (long i = 0; i < m.rows(); ++i)
            for (long j = 0; j < m.cols(); ++j) {
                if (m(i, j) == cx(0.0)) continue;
                for (long r = 0; r < right; ++r)
                    out((l * m.rows() + i) * right + r, (l * m.rows() + j) * right + r) = m(i, j);
            }
    return Operator(std::move(out), dims);
}

Operator repeat(const Operator& op, int n) {
    return kron_all(std::vector<Operator>(static_cast<size_t>(n), op));
}

}  // namespace ops

}  // namespace tsim
