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


#include "tsim/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <tbb/parallel_for.h>

#include "tsim/gates.hpp"
#include "tsim/io.hpp"

namespace tsim {

std::string to_string(Prep p) { return p == Prep::WGates ? "w_gates" : "hadamard"; }

Prep prep_from_string(const std::string& s) {
    if (s == "w_gates") return Prep::WGates;
    if (s == "hadamard") return Prep::Hadamard;
    throw ArgumentError("unknown prep '" + s + "' (expected w_gates or hadamard)");
}

std::string bit_string(long x, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; ++q)
        if ((x >> (n - 1 - q)) & 1L) s[q] = '1';
    return s;
}

namespace {

// Single-qubit gate u on qubit q of an n-qubit register, in place.
void apply_1q(Vec& psi, const Mat& u, int q, int n) {
    const long stride = 1L << (n - 1 - q);
    for (long base = 0; base < psi.size(); ++base) {
        if (base & stride) continue;
        cx a = psi(base), b = psi(base | stride);
        psi(base) = u(0, 0) * a + u(0, 1) * b;
        psi(base | stride) = u(1, 0) * a + u(1, 1) * b;
    }
}

void apply_all(Vec& psi, const Mat& u, int n) {
    for (int q = 0; q < n; ++q) apply_1q(psi, u, q, n);
}

void flip_all(Vec& psi) { psi.reverseInPlace(); }

void phase_flip(Vec& psi, long x) { psi(x) = -psi(x); }

void check_marked(int n, long marked) {
    if (n < 1) throw ArgumentError("n must be >= 1");
    if (marked < 0 || marked >= (1L << n)) throw ArgumentError("marked index out of range");
}

}  // namespace

GroverRun grover_ideal(int n, long marked, int iterations, Prep prep) {
    check_marked(n, marked);
    if (iterations < 0) throw ArgumentError("grover_ideal: iterations must be >= 0");
    const long N = 1L << n;
    const Mat r = gate("Rx", {-kPi / 2}).matrix.mat();

    GroverRun run;
    run.n = n;
    run.marked = marked;
    run.iterations = iterations;

    Vec psi = Vec::Zero(N);
    psi(0) = 1.0;
    if (prep == Prep::WGates) {
        flip_all(psi);
        apply_all(psi, r, n);
    } else {
        psi.setConstant(1.0 / std::sqrt(static_cast<double>(N)));
    }
    auto push = [&] {
        run.amplitudes_per_step.push_back(psi / psi.norm());
        run.success_prob_per_step.push_back(std::min(1.0, std::norm(psi(marked))));
    };
    push();
    for (int k = 0; k < iterations; ++k) {
        phase_flip(psi, marked);
        if (prep == Prep::WGates) {
            apply_all(psi, r, n);
            flip_all(psi);
            phase_flip(psi, N - 1);
            flip_all(psi);
            apply_all(psi, r, n);
            flip_all(psi);
        } else {
            cx mean = psi.sum() / static_cast<double>(N);
            psi = (2.0 * mean) * Vec::Ones(N) - psi;
        }
        push();
    }
    return run;
}

int grover_optimal_iterations(int n) {
    if (n < 1) throw ArgumentError("grover_optimal_iterations: n must be >= 1");
    double k = std::round(kPi / (4.0 * std::asin(std::pow(2.0, -0.5 * n))) - 0.5);
    return std::max(1, static_cast<int>(k));
}

double grover_geometry(int n, long m_marked) {
    if (n < 1) throw ArgumentError("grover_geometry: n must be >= 1");
    const double N = std::ldexp(1.0, n);
    if (m_marked < 1 || m_marked >= N) throw ArgumentError("grover_geometry: need 1 <= M < 2^n");
    return 2.0 * std::acos(std::sqrt((N - m_marked) / N));
}

double grover_noisy_fidelity(int n, long marked, double b, double h) {
    if (n != 2 && n != 3) throw ArgumentError("grover_noisy_fidelity: n must be 2 or 3");
    check_marked(n, marked);
    if (!std::isfinite(b) || !std::isfinite(h)) throw ArgumentError("grover_noisy_fidelity: b and h must be finite");
    const long N = 1L << n;
    Vec psi = Vec::Zero(N);
    psi(0) = 1.0;
    if (n == 2) {
        // b = 2 lambda t and b h = 2 Omega_R t.
        const Mat u = two_qubit_closed_form(0.5 * b * h, 0.5 * b).mat();
        flip_all(psi);
        psi = u * psi;
        phase_flip(psi, marked);
        psi = u * psi;
        flip_all(psi);
        phase_flip(psi, N - 1);
        flip_all(psi);
        psi = u * psi;
        flip_all(psi);
    } else {
        const Mat u = three_qubit_closed_form(b, h).mat();
        psi = u * psi;
        for (int k = 0; k < 2; ++k) {
            phase_flip(psi, marked);
            psi = u * psi;
            phase_flip(psi, N - 1);
            psi = u * psi;
            flip_all(psi);
        }
    }
    return std::norm(psi(marked)) / psi.squaredNorm();
}

std::vector<SweepPoint> grover_noisy_sweep(int n, const std::vector<long>& marked, const std::vector<double>& b_grid,
                                           double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("grover_noisy_sweep: h must be finite and > 0");
    for (double b : b_grid)
        if (!std::isfinite(b)) throw ArgumentError("grover_noisy_sweep: b grid must be finite");
    for (long x : marked) check_marked(n, x);
    std::vector<SweepPoint> out(marked.size() * b_grid.size());
    tbb::parallel_for(size_t(0), out.size(), [&](size_t i) {
        long x = marked[i / b_grid.size()];
        double b = b_grid[i % b_grid.size()];
        out[i] = {b, h, bit_string(x, n), grover_noisy_fidelity(n, x, b, h)};
    });
    return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& pts) {
    CsvWriter w({"b", "h", "oracle", "fidelity"});
    for (const auto& p : pts) w.row({fmt12(p.b), fmt12(p.h), p.oracle, fmt12(p.fidelity)});
    return w.str();
}

GroverMasterResult grover_master_equation(int n, long marked, const GateConditions& c, const NoiseSpec& noise,
                                          int n_fock, int steps_per_period) {
    if (n != 2 && n != 3) throw ArgumentError("grover_master_equation: n must be 2 or 3");
    check_marked(n, marked);
    if (family_qubits(c.family) != n) throw ArgumentError("grover_master_equation: gate family does not match n");
    noise.validate(n);

    const DeviceSpec dev = device_from_conditions(c, n_fock, kTwoPi * 4800.0);
    const TimeHamiltonian h = frame_hamiltonian_terms(dev, Frame::Interaction);
    const std::vector<Operator> cs = collapse_operators(dev, noise);
    const Dims qd(static_cast<size_t>(n), 2);
    const Operator id_r = ops::id(n_fock);
    const long N = 1L << n;

    auto lift = [&](const Operator& q) { return kron(q, id_r); };
    const Operator xs = lift(ops::repeat(ops::sigma_x(), n));
    const Operator cp_all = lift(oracle(n, N - 1).matrix);
    const Operator cp_x = lift(oracle(n, marked).matrix);

    const double T = c.t_gate;
    SolveOptions opts;
    opts.frame = Frame::Interaction;
    opts.t_final = T;
    opts.dt = choose_dt(h, T, steps_per_period);
    const long steps = std::lround(T / opts.dt);
    opts.record_every = std::max(1L, steps / 20);

    Dims jd = qd;
    jd.push_back(n_fock);
    StateVector vac = StateVector::basis(jd, 0);
    DensityMatrix rho = DensityMatrix::pure(vac);

    GroverMasterResult res;
    std::vector<int> keep(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) keep[j] = j;
    auto success = [&](const DensityMatrix& r) { return partial_trace(r, keep).mat()(marked, marked).real(); };
    double clock = 0.0;

    auto instant = [&](const std::string& name, const Operator& u) {
        auto w0 = std::chrono::steady_clock::now();
        rho = DensityMatrix::unchecked(u * rho.op() * dagger(u));
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - w0).count();
        res.segments.push_back({name, clock, 0.0, success(rho), wall});
    };
    auto window = [&](const std::string& name) {
        auto w0 = std::chrono::steady_clock::now();
        Trajectory tr = solve(h, rho, cs, opts);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - w0).count();
        size_t first = res.traj.times.empty() ? 0 : 1;
        for (size_t i = first; i < tr.times.size(); ++i) {
            res.traj.times.push_back(clock + tr.times[i]);
            res.traj.states.push_back(tr.states[i]);
        }
        res.traj.steps += tr.steps;
        res.traj.dt = tr.dt;
        res.traj.final_trace_drift = std::max(res.traj.final_trace_drift, tr.final_trace_drift);
        res.traj.max_trace_correction = std::max(res.traj.max_trace_correction, tr.max_trace_correction);
        res.traj.max_hermiticity_correction =
            std::max(res.traj.max_hermiticity_correction, tr.max_hermiticity_correction);
        for (auto& line : tr.log) res.traj.log.push_back(name + ": " + line);
        rho = tr.states.back();
        res.segments.push_back({name, clock, T, success(rho), wall});
        clock += T;
    };

    const int iterations = n == 2 ? 1 : 2;
    if (n == 2) instant("X", xs);
    window("U");
    for (int k = 0; k < iterations; ++k) {
        std::string it = std::to_string(k + 1);
        instant("cP" + bit_string(marked, n) + "#" + it, cp_x);
        if (n == 2) {
            window("U#" + it + "a");
            instant("X#" + it + "a", xs);
            instant("cP11#" + it, cp_all);
            instant("X#" + it + "b", xs);
            window("U#" + it + "b");
            instant("X#" + it + "c", xs);
        } else {
            window("U#" + it + "a");
            instant("cP111#" + it, cp_all);
            window("U#" + it + "b");
            instant("X#" + it, xs);
        }
    }
    res.traj.times.push_back(clock);
    res.traj.states.push_back(rho);
    res.traj.observables = occupations(res.traj, all_labels(n));
    res.fidelity = success(rho);
    res.total_time = clock;
    return res;
}

DeutschJozsaResult deutsch_jozsa(int n, const std::vector<int>& truth) {
    if (n < 1) throw ArgumentError("deutsch_jozsa: n must be >= 1");
    const long N = 1L << n;
    if (static_cast<long>(truth.size()) != N) throw ArgumentError("deutsch_jozsa: truth table must have 2^n entries");
    long ones = 0;
    for (int v : truth) {
        if (v != 0 && v != 1) throw ArgumentError("deutsch_jozsa: truth table entries must be 0 or 1");
        ones += v;
    }
    if (ones != 0 && ones != N && 2 * ones != N) throw ArgumentError("deutsch_jozsa: f is neither constant nor balanced");

    // Register of n qubits followed by the ancilla, ancilla starts in |1>.
    const int m = n + 1;
    const Mat hd = gate("H").matrix.mat();
    Vec psi = Vec::Zero(2 * N);
    psi(1) = 1.0;
    apply_all(psi, hd, m);
    for (long x = 0; x < N; ++x)
        if (truth[x]) std::swap(psi(2 * x), psi(2 * x + 1));
    for (int q = 0; q < n; ++q) apply_1q(psi, hd, q, m);

    DeutschJozsaResult res;
    res.amplitudes = Vec(N);
    const double s = 1.0 / std::sqrt(2.0);
    for (long x = 0; x < N; ++x) res.amplitudes(x) = s * (psi(2 * x) - psi(2 * x + 1));
    res.p_zero = std::norm(res.amplitudes(0));
    res.verdict = std::abs(std::abs(res.amplitudes(0)) - 1.0) < 1e-9 ? "constant" : "balanced";
    return res;
}

}  // namespace tsim
