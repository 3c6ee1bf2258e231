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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tsim {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Dims = std::vector<int>;

constexpr cx I{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDefaultTol = 1e-10;

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long dims_product(const Dims& dims);

// Dense square matrix tagged with subsystem dimensions. Immutable after construction.
class Operator {
public:
    Operator(Mat data, Dims dims);
    explicit Operator(Mat data);  // single subsystem

    static Operator identity(const Dims& dims);
    static Operator zero(const Dims& dims);

    const Mat& mat() const { return data_; }
    const Dims& dims() const { return dims_; }
    long dim() const { return data_.rows(); }
    cx operator()(long i, long j) const { return data_(i, j); }

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;
    Operator operator*(cx s) const;
    friend Operator operator*(cx s, const Operator& a) { return a * s; }

    bool is_hermitian(double tol = kDefaultTol) const;
    bool is_unitary(double tol = kDefaultTol) const;
    double max_abs() const;
    cx trace() const { return data_.trace(); }

private:
    Mat data_;
    Dims dims_;
};

class StateVector {
public:
    // Normalizes on construction; a zero vector is rejected.
    StateVector(Vec data, Dims dims);
    static StateVector basis(const Dims& dims, long index);

    const Vec& vec() const { return data_; }
    const Dims& dims() const { return dims_; }
    long dim() const { return data_.size(); }
    cx operator[](long i) const { return data_(i); }

private:
    Vec data_;
    Dims dims_;
};

StateVector kron(const StateVector& a, const StateVector& b);
StateVector apply(const Operator& u, const StateVector& psi);

class DensityMatrix {
public:
    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kEigTol = 1e-9;

    // Checks Hermiticity, unit trace and positivity.
    explicit DensityMatrix(Operator op);
    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(const Dims& dims);
    // Skips the invariant checks. Used by integrators whose states carry
    // small controlled defects that are reported separately.
    static DensityMatrix unchecked(Operator op);

    const Operator& op() const { return op_; }
    const Mat& mat() const { return op_.mat(); }
    const Dims& dims() const { return op_.dims(); }
    long dim() const { return op_.dim(); }

    double min_eigenvalue() const;
    double purity() const;

private:
    struct Unchecked {};
    DensityMatrix(Operator op, Unchecked) : op_(std::move(op)) {}
    Operator op_;
};

DensityMatrix apply(const Operator& u, const DensityMatrix& rho);

Operator kron(const Operator& a, const Operator& b);
Operator kron_all(const std::vector<Operator>& ops);
Operator dagger(const Operator& a);

// exp(scale * h). Hermitian h goes through an eigendecomposition, anything else
// through Pade scaling-and-squaring.
Operator matexp(const Operator& h, cx scale);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

enum class YConvention { Standard, MinusISigmaY };
std::vector<Operator> pauli_basis(int n, YConvention conv);
std::vector<std::string> pauli_labels(int n);

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho);
double fidelity_mixed(const DensityMatrix& rho, const DensityMatrix& sigma);

// Max entrywise distance between a and e^{i phi} b with phi chosen from the
// overlap Tr(b^dagger a).
double phase_distance(const Mat& a, const Mat& b);
double phase_distance(const Operator& a, const Operator& b);

namespace ops {
Operator id(int d);
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();      // standard Pauli Z = diag(1, -1)
Operator sigma_minus();  // |0><1|
Operator sigma_plus();   // |1><0|
Operator qubit_z();      // |1><1| - |0><0|, the energy-ordered Z used in Hamiltonians
Operator annihilation(int n);
Operator number(int n);
// Places `op` on subsystem `slot` of `dims`, identity elsewhere.
Operator embed(const Operator& op, int slot, const Dims& dims);
Operator repeat(const Operator& op, int n);
}  // namespace ops

}  // namespace tsim
