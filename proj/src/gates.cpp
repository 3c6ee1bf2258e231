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

#include "tsim/gates.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

namespace tsim {

namespace {

const double kS = 1.0 / std::sqrt(2.0);

std::vector<int> first_n(int n) {
    std::vector<int> q(static_cast<size_t>(n));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

Operator mat2(cx a, cx b, cx c, cx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return Operator(m);
}

Operator rx(double th) {
    return mat2(std::cos(th / 2), -I * std::sin(th / 2), -I * std::sin(th / 2), std::cos(th / 2));
}
Operator ry(double th) { return mat2(std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2)); }
Operator rz(double th) { return mat2(std::exp(-I * (th / 2)), 0.0, 0.0, std::exp(I * (th / 2))); }

Operator permutation(int n, const std::vector<int>& image) {
    long d = 1L << n;
    Mat m = Mat::Zero(d, d);
    for (long c = 0; c < d; ++c) m(image[c], c) = 1.0;
    return Operator(m, Dims(static_cast<size_t>(n), 2));
}

Operator two_qubit(std::initializer_list<cx> rowmajor) {
    Mat m(4, 4);
    auto it = rowmajor.begin();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = *it++;
    return Operator(m, {2, 2});
}

int parse_bits(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n) throw ArgumentError("marked string must have " + std::to_string(n) + " bits");
    int x = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw ArgumentError("marked string must contain only 0 and 1");
        x = 2 * x + (c - '0');
    }
    return x;
}

}  // namespace

GateSpec::GateSpec(std::string name_, std::vector<int> qubits_, Operator matrix_, std::vector<double> params_)
    : name(std::move(name_)), qubits(std::move(qubits_)), matrix(std::move(matrix_)), params(std::move(params_)) {
    if (matrix.dim() != (1L << qubits.size())) throw ArgumentError("GateSpec: matrix size does not match arity");
    if (!matrix.is_unitary(1e-10)) throw ArgumentError("GateSpec '" + name + "' is not unitary");
}

GateSpec GateSpec::on(std::vector<int> targets) const {
    if (targets.size() != qubits.size()) throw ArgumentError("GateSpec::on: arity mismatch");
    return GateSpec(name, std::move(targets), matrix, params);
}

std::vector<std::string> gate_names() {
    return {"I", "X", "Y", "Z", "H", "S", "T", "Rx", "Ry", "Rz", "CNOT", "CP", "SWAP", "iSWAP", "sqrtiSWAP",
            "Toffoli", "Fredkin"};
}

GateSpec gate(const std::string& name, const std::vector<double>& params) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw ArgumentError("gate '" + name + "' takes " + std::to_string(k) + " parameter(s)");
    };
    if (name == "Rx" || name == "Ry" || name == "Rz") {
        need(1);
        Operator m = name == "Rx" ? rx(params[0]) : name == "Ry" ? ry(params[0]) : rz(params[0]);
        return GateSpec(name, {0}, m, params);
    }
    need(0);
    if (name == "I") return GateSpec(name, {0}, ops::id(2));
    if (name == "X") return GateSpec(name, {0}, ops::sigma_x());
    if (name == "Y") return GateSpec(name, {0}, ops::sigma_y());
    if (name == "Z") return GateSpec(name, {0}, ops::sigma_z());
    if (name == "H") return GateSpec(name, {0}, mat2(kS, kS, kS, -kS));
    if (name == "S") return GateSpec(name, {0}, mat2(1.0, 0.0, 0.0, I));
    if (name == "T") return GateSpec(name, {0}, mat2(1.0, 0.0, 0.0, std::exp(I * (kPi / 4))));
    if (name == "CNOT") return GateSpec(name, {0, 1}, permutation(2, {0, 1, 3, 2}));
    if (name == "CP") return GateSpec(name, {0, 1}, oracle(2, 3).matrix);
    if (name == "SWAP") return GateSpec(name, {0, 1}, permutation(2, {0, 2, 1, 3}));
    if (name == "iSWAP") return GateSpec(name, {0, 1}, two_qubit({1, 0, 0, 0, 0, 0, I, 0, 0, I, 0, 0, 0, 0, 0, 1}));
    if (name == "sqrtiSWAP")
        return GateSpec(name, {0, 1},
                        two_qubit({1, 0, 0, 0, 0, kS, I * kS, 0, 0, I * kS, kS, 0, 0, 0, 0, 1}));
    if (name == "Toffoli") return GateSpec(name, {0, 1, 2}, permutation(3, {0, 1, 2, 3, 4, 5, 7, 6}));
    if (name == "Fredkin") return GateSpec(name, {0, 1, 2}, permutation(3, {0, 1, 2, 3, 4, 6, 5, 7}));
    throw ArgumentError("unknown gate '" + name + "'");
}

GateSpec w_gate(int n) {
    if (n < 1) throw ArgumentError("w_gate: n must be >= 1");
    Operator m = ops::repeat(rx(-kPi / 2), n) * ops::repeat(ops::sigma_x(), n);
    return GateSpec("W" + std::to_string(n), first_n(n), m);
}

GateSpec oracle(int n, long marked) {
    if (n < 1) throw ArgumentError("oracle: n must be >= 1");
    long d = 1L << n;
    if (marked < 0 || marked >= d) throw ArgumentError("oracle: marked index out of range");
    Vec diag = Vec::Ones(d);
    diag(marked) = -1.0;
    return GateSpec("cP" + std::to_string(marked), first_n(n), Operator(Mat(diag.asDiagonal()), Dims(n, 2)));
}

Operator v2() { return kron(ops::id(2), w_gate(1).matrix); }
Operator v3() { return kron_all({ops::id(2), ops::id(2), w_gate(1).matrix}); }

Operator oracle_core2(const std::string& label) {
    if (label == "11") return two_qubit({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -I, 0, 0, I, 0});
    if (label == "01") return two_qubit({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, I, 0, 0, -I, 0});
    if (label == "10") return two_qubit({0, -I, 0, 0, I, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
    if (label == "00") return two_qubit({0, I, 0, 0, -I, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
    throw ArgumentError("oracle_core2: label must be 00, 01, 10 or 11");
}

Operator oracle_core3() {
    Mat m = Mat::Identity(8, 8);
    m(6, 6) = 0.0;
    m(7, 7) = 0.0;
    m(6, 7) = -I;
    m(7, 6) = I;
    return Operator(m, {2, 2, 2});
}

Operator conjugate(const Operator& v, const Operator& u, Conjugation c) {
    Operator vinv(v.mat().inverse(), v.dims());
    return c == Conjugation::V_U_Vinv ? v * u * vinv : vinv * u * v;
}

GateSpec oracle_decomposed2(const std::string& marked) {
    parse_bits(marked, 2);
    std::string label = marked == "01" ? "10" : marked == "10" ? "01" : marked;
    Operator m = conjugate(v2(), oracle_core2(label), Conjugation::V_U_Vinv);
    return GateSpec("cP" + marked + "_decomposed", {0, 1}, m);
}

GateSpec oracle_decomposed3(const std::string& marked) {
    parse_bits(marked, 3);
    Operator m = conjugate(v3(), oracle_core3(), Conjugation::V_U_Vinv);
    Dims dims{2, 2, 2};
    for (int j = 0; j < 3; ++j)
        if (marked[j] == '0') {
            Operator x = ops::embed(ops::sigma_x(), j, dims);
            m = x * m * x;
        }
    return GateSpec("cP" + marked + "_decomposed", {0, 1, 2}, m);
}

GateSpec diffusion(int n) {
    if (n < 1) throw ArgumentError("diffusion: n must be >= 1");
    Operator x = ops::repeat(ops::sigma_x(), n);
    Operator r = ops::repeat(rx(-kPi / 2), n);
    Operator cp = oracle(n, (1L << n) - 1).matrix;
    return GateSpec("D" + std::to_string(n), first_n(n), x * r * x * cp * x * r);
}

GateSpec diffusion3_one_shot() {
    // U_I(t_R) = -i W3.
    Operator u = w_gate(3).matrix * cx(0.0, -1.0);
    Operator cp = oracle(3, 7).matrix;
    Operator x = ops::repeat(ops::sigma_x(), 3);
    return GateSpec("D3_one_shot", first_n(3), (x * u * cp * u) * cx(-1.0));
}

GateSpec entangler(int n) {
    if (n != 2 && n != 3) throw ArgumentError("entangler: n must be 2 or 3");
    Operator x = ops::repeat(ops::sigma_x(), n);
    Operator m = (Operator::identity(Dims(n, 2)) - x * I) * cx(kS);
    return GateSpec("E" + std::to_string(n), first_n(n), m);
}

std::vector<GateSpec> bell_circuit() { return {gate("H").on({0}), gate("CNOT").on({0, 1})}; }

std::vector<GateSpec> ghz_circuit() {
    return {gate("H").on({0}), gate("CNOT").on({0, 1}), gate("CNOT").on({1, 2})};
}

GateSpec sqrt_iswap_evolution(double g_qq, double t) {
    if (!(g_qq > 0.0)) throw ArgumentError("sqrt_iswap_evolution: g_qq must be > 0");
    double c = std::cos(g_qq * t), s = std::sin(g_qq * t);
    return GateSpec("Uint", {0, 1}, two_qubit({1, 0, 0, 0, 0, c, I * s, 0, 0, I * s, c, 0, 0, 0, 0, 1}), {g_qq, t});
}

Operator expand(const GateSpec& g, int n) {
    const int k = g.arity();
    for (int q : g.qubits)
        if (q < 0 || q >= n) throw ArgumentError("expand: target qubit out of range");
    long d = 1L << n;
    const Mat& G = g.matrix.mat();
    Mat out = Mat::Zero(d, d);
    auto bit = [n](long x, int q) { return (x >> (n - 1 - q)) & 1L; };
    for (long c = 0; c < d; ++c) {
        long sub_c = 0;
        for (int q : g.qubits) sub_c = 2 * sub_c + bit(c, q);
        for (long r = 0; r < (1L << k); ++r) {
            cx v = G(r, sub_c);
            if (v == cx(0.0)) continue;
            long row = c;
            for (int i = 0; i < k; ++i) {
                int q = g.qubits[i];
                long b = (r >> (k - 1 - i)) & 1L;
                long mask = 1L << (n - 1 - q);
                row = b ? (row | mask) : (row & ~mask);
            }
            out(row, c) += v;
        }
    }
    return Operator(out, Dims(n, 2));
}

StateVector run_circuit(const std::vector<GateSpec>& circuit, const StateVector& in) {
    int n = static_cast<int>(in.dims().size());
    StateVector psi = in;
    for (const auto& g : circuit) psi = apply(expand(g, n), psi);
    return psi;
}

std::string gate_json(const GateSpec& g) {
    nlohmann::json j;
    j["name"] = g.name;
    j["dims"] = g.matrix.dims();
    j["qubits"] = g.qubits;
    j["params"] = g.params;
    nlohmann::json data = nlohmann::json::array();
    const Mat& m = g.matrix.mat();
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
    j["data"] = data;
    return j.dump(2) + "\n";
}

}  // namespace tsim
