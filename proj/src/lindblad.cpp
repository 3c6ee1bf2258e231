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

#include "tsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Sparse>

#include "tsim/io.hpp"

namespace tsim {

using SpMat = Eigen::SparseMatrix<cx, Eigen::RowMajor>;

// ---------------------------------------------------------------- NoiseSpec

NoiseSpec NoiseSpec::from_t1_t2(double kappa, double t1, double t2) {
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw ArgumentError("NoiseSpec: T1 and T2 must be > 0");
    double g1 = 1.0 / t1;
    double gphi = 1.0 / t1 - 1.0 / (2.0 * t2);
    if (gphi < 0.0) throw ArgumentError("NoiseSpec: T1, T2 give a negative dephasing rate");
    NoiseSpec n;
    n.kappa = kappa;
    n.gamma1 = {g1};
    n.gamma_phi = {gphi};
    return n;
}

namespace {
double pick(const std::vector<double>& v, int q) {
    if (v.empty()) return 0.0;
    if (v.size() == 1) return v[0];
    if (q < 0 || q >= static_cast<int>(v.size())) throw ArgumentError("NoiseSpec: qubit index out of range");
    return v[q];
}
}  // namespace

double NoiseSpec::gamma1_of(int q) const { return pick(gamma1, q); }
double NoiseSpec::gamma_phi_of(int q) const { return pick(gamma_phi, q); }

bool NoiseSpec::is_zero() const {
    auto allz = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    };
    return kappa == 0.0 && allz(gamma1) && allz(gamma_phi);
}

void NoiseSpec::validate(int n_qubits) const {
    if (!(kappa >= 0.0)) throw ArgumentError("NoiseSpec: kappa must be >= 0");
    for (const auto* v : {&gamma1, &gamma_phi}) {
        if (v->size() > 1 && static_cast<int>(v->size()) != n_qubits)
            throw ArgumentError("NoiseSpec: per-qubit rate list has the wrong length");
        for (double x : *v)
            if (!(x >= 0.0)) throw ArgumentError("NoiseSpec: rates must be >= 0");
    }
}

// ---------------------------------------------------------------- Trajectory

const std::vector<double>& Trajectory::observable(const std::string& name) const {
    for (const auto& [k, v] : observables)
        if (k == name) return v;
    throw ArgumentError("trajectory has no observable '" + name + "'");
}

double Trajectory::min_eigenvalue() const {
    double m = 1.0;
    for (const auto& s : states) m = std::min(m, s.min_eigenvalue());
    return m;
}

// ---------------------------------------------------------------- generator

std::vector<Operator> collapse_operators(const DeviceSpec& spec, const NoiseSpec& noise) {
    spec.validate();
    noise.validate(spec.n_qubits);
    Dims dims = spec.dims();
    std::vector<Operator> out;
    if (noise.kappa > 0.0)
        out.push_back(ops::embed(ops::annihilation(spec.n_fock), spec.n_qubits, dims) * std::sqrt(noise.kappa));
    for (int j = 0; j < spec.n_qubits; ++j)
        if (noise.gamma1_of(j) > 0.0)
            out.push_back(ops::embed(ops::sigma_minus(), j, dims) * std::sqrt(noise.gamma1_of(j)));
    for (int j = 0; j < spec.n_qubits; ++j)
        if (noise.gamma_phi_of(j) > 0.0)
            out.push_back(ops::embed(ops::qubit_z(), j, dims) * std::sqrt(noise.gamma_phi_of(j)));
    return out;
}

Mat lindblad_rhs(const Operator& h, const DensityMatrix& rho, const std::vector<Operator>& cs) {
    if (h.dims() != rho.dims()) throw ArgumentError("lindblad_rhs: dimension mismatch");
    const Mat& H = h.mat();
    const Mat& r = rho.mat();
    Mat out = -I * (H * r - r * H);
    for (const auto& c : cs) {
        if (c.dims() != rho.dims()) throw ArgumentError("lindblad_rhs: collapse operator dims mismatch");
        const Mat& L = c.mat();
        Mat LdL = L.adjoint() * L;
        out += L * r * L.adjoint() - 0.5 * (LdL * r + r * LdL);
    }
    return out;
}

namespace {

SpMat to_sparse(const Mat& m) {
    SpMat s = m.sparseView(cx(0.0), 0.0);
    s.makeCompressed();
    return s;
}

// y += c A r for CSR A and column-major dense r.
void sp_times_dense(const SpMat& a, cx c, const Mat& r, Mat& y) {
    const long d = r.rows();
    const cx* val = a.valuePtr();
    const int* idx = a.innerIndexPtr();
    const int* start = a.outerIndexPtr();
    for (long j = 0; j < r.cols(); ++j) {
        const cx* rc = r.data() + j * d;
        cx* yc = y.data() + j * d;
        for (long i = 0; i < a.outerSize(); ++i) {
            cx acc = 0.0;
            for (int p = start[i]; p < start[i + 1]; ++p) acc += val[p] * rc[idx[p]];
            yc[i] += c * acc;
        }
    }
}

// y += m A^dag for CSR A: column j of the result gathers conj(A(j, l)) m(:, l).
void dense_times_sp_adjoint(const Mat& m, const SpMat& a, Mat& y) {
    const long d = m.rows();
    const cx* val = a.valuePtr();
    const int* idx = a.innerIndexPtr();
    const int* start = a.outerIndexPtr();
    for (long j = 0; j < a.outerSize(); ++j) {
        cx* yc = y.data() + j * d;
        for (int p = start[j]; p < start[j + 1]; ++p) {
            const cx v = std::conj(val[p]);
            const cx* mc = m.data() + static_cast<long>(idx[p]) * d;
            for (long i = 0; i < d; ++i) yc[i] += v * mc[i];
        }
    }
}

// Sparse evaluation of the Lindblad generator. The anticommutator part is
// folded into a non-Hermitian Hamiltonian, so
//   drho = Y + Y^dag + sum L rho L^dag,   Y = -i H_eff rho,   H_eff = H - (i/2) sum L^dag L.
// H is either a list of terms c_k(t) O_k applied one by one, or a callback.
class Generator {
public:
    struct Term {
        SpMat op;
        cx amp;
        double freq;
    };

    Generator(std::vector<Term> terms, const std::vector<Operator>& cs) : terms_(std::move(terms)) { init(cs); }
    Generator(std::function<SpMat(double)> h_at, const std::vector<Operator>& cs) : h_at_(std::move(h_at)) {
        init(cs);
    }

    void operator()(double t, const Mat& r, Mat& out) const {
        // y accumulates H_eff rho before the -i factor.
        Mat& y = scratch_;
        if (h_at_) {
            y.noalias() = h_at_(t) * r;
        } else {
            y.setZero(r.rows(), r.cols());
            for (const auto& term : terms_) {
                cx c = term.freq == 0.0 ? term.amp : term.amp * std::exp(I * (term.freq * t));
                sp_times_dense(term.op, c, r, y);
            }
        }
        if (k_.size() != 0) sp_times_dense(k_, cx(0.0, -0.5), r, y);
        y *= -I;
        out = y + y.adjoint();
        for (const auto& l : ls_) {
            lr_.setZero(r.rows(), r.cols());
            sp_times_dense(l, 1.0, r, lr_);
            dense_times_sp_adjoint(lr_, l, out);
        }
    }

private:
    void init(const std::vector<Operator>& cs) {
        for (const auto& c : cs) {
            SpMat L = to_sparse(c.mat());
            SpMat k = SpMat(L.adjoint()) * L;
            k.makeCompressed();
            ls_.push_back(L);
            k_ = k_.size() == 0 ? k : SpMat(k_ + k);
            k_.makeCompressed();
        }
    }

    std::vector<Term> terms_;
    std::function<SpMat(double)> h_at_;
    std::vector<SpMat> ls_;
    SpMat k_;
    mutable Mat scratch_, lr_;
};

Trajectory integrate(const Generator& gen, const DensityMatrix& rho0, const SolveOptions& opts, double omega_max) {
    if (!(opts.dt > 0.0)) throw ArgumentError("SolveOptions: dt must be > 0");
    if (!(opts.t_final >= opts.dt * (1.0 - 1e-12))) throw ArgumentError("SolveOptions: t_final must be >= dt");
    if (opts.record_every < 1) throw ArgumentError("SolveOptions: record_every must be >= 1");

    Trajectory tr;
    const long n = static_cast<long>(std::ceil(opts.t_final / opts.dt - 1e-9));
    const double dt = opts.t_final / static_cast<double>(n);
    tr.steps = n;
    tr.dt = dt;
    if (omega_max > 0.0 && dt > kTwoPi / (20.0 * omega_max)) {
        std::ostringstream os;
        os << "warning: dt = " << dt << " exceeds 2pi/(20 omega_max) = " << kTwoPi / (20.0 * omega_max);
        tr.log.push_back(os.str());
    }

    const Dims dims = rho0.dims();
    auto record = [&](double t, const Mat& raw) {
        Mat h = 0.5 * (raw + raw.adjoint());
        double herm = (raw - h).cwiseAbs().maxCoeff();
        cx trc = h.trace();
        double corr = std::abs(trc - 1.0);
        h /= trc.real();
        tr.max_trace_correction = std::max(tr.max_trace_correction, corr);
        tr.max_hermiticity_correction = std::max(tr.max_hermiticity_correction, herm);
        tr.times.push_back(t);
        tr.states.push_back(DensityMatrix::unchecked(Operator(std::move(h), dims)));
    };

    Mat r = rho0.mat();
    const long d = r.rows();
    Mat k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    record(0.0, r);
    for (long s = 0; s < n; ++s) {
        const double t = s * dt;
        gen(t, r, k1);
        tmp = r + (0.5 * dt) * k1;
        gen(t + 0.5 * dt, tmp, k2);
        tmp = r + (0.5 * dt) * k2;
        gen(t + 0.5 * dt, tmp, k3);
        tmp = r + dt * k3;
        gen(t + dt, tmp, k4);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!r.allFinite()) throw DivergenceError("solver diverged at step " + std::to_string(s + 1), s + 1);
        if ((s + 1) % opts.record_every == 0 || s + 1 == n) record((s + 1) * dt, r);
    }
    tr.final_trace_drift = std::abs(r.trace() - 1.0);
    {
        std::ostringstream os;
        os << "steps=" << n << " dt=" << dt << " final_trace_drift=" << tr.final_trace_drift
           << " max_trace_correction=" << tr.max_trace_correction
           << " max_hermiticity_correction=" << tr.max_hermiticity_correction;
        tr.log.push_back(os.str());
    }
    return tr;
}

}  // namespace

Trajectory solve(const TimeHamiltonian& h, const DensityMatrix& rho0, const std::vector<Operator>& cs,
                 const SolveOptions& opts) {
    if (h.dims() != rho0.dims()) throw ArgumentError("solve: Hamiltonian and state dims differ");
    // Terms sharing a frequency are merged so each step does one product per frequency.
    std::vector<Generator::Term> terms;
    for (const auto& t : h.terms()) {
        SpMat op = to_sparse(t.op.mat()) * t.amp;
        auto same = std::find_if(terms.begin(), terms.end(), [&](const auto& u) { return u.freq == t.freq; });
        if (same == terms.end()) terms.push_back({op, cx(1.0), t.freq});
        else same->op = SpMat(same->op + op);
    }
    for (auto& t : terms) t.op.makeCompressed();
    const double w = terms.empty() ? 0.0 : h.norm_bound();
    return integrate(Generator(std::move(terms), cs), rho0, opts, w);
}

Trajectory solve(const std::function<Operator(double)>& h_of_t, const DensityMatrix& rho0,
                 const std::vector<Operator>& cs, const SolveOptions& opts) {
    auto h_at = [h_of_t, &rho0](double t) {
        Operator h = h_of_t(t);
        if (h.dims() != rho0.dims()) throw ArgumentError("solve: Hamiltonian and state dims differ");
        return to_sparse(h.mat());
    };
    return integrate(Generator(h_at, cs), rho0, opts, 0.0);
}

Trajectory solve(const DeviceSpec& spec, const NoiseSpec& noise, const DensityMatrix& rho0,
                 const SolveOptions& opts) {
    return solve(frame_hamiltonian_terms(spec, opts.frame), rho0, collapse_operators(spec, noise), opts);
}

double choose_dt(const TimeHamiltonian& h, double t_final, int steps_per_period) {
    if (steps_per_period < 1) throw ArgumentError("choose_dt: steps_per_period must be >= 1");
    double w = h.norm_bound();
    if (!(w > 0.0)) return t_final;
    double dt = kTwoPi / (steps_per_period * w);
    long n = static_cast<long>(std::ceil(t_final / dt));
    return t_final / static_cast<double>(std::max(1L, n));
}

// ---------------------------------------------------------------- observables

std::vector<std::string> all_labels(int n_qubits) {
    std::vector<std::string> out;
    for (int x = 0; x < (1 << n_qubits); ++x) {
        std::string s;
        for (int j = n_qubits - 1; j >= 0; --j) s.push_back(((x >> j) & 1) ? '1' : '0');
        out.push_back(s);
    }
    return out;
}

std::vector<std::pair<std::string, std::vector<double>>> occupations(const Trajectory& traj,
                                                                      const std::vector<std::string>& labels) {
    if (traj.states.empty()) return {};
    const Dims& dims = traj.states.front().dims();
    int nq = static_cast<int>(dims.size()) - 1;
    for (int j = 0; j < nq; ++j)
        if (dims[j] != 2) throw ArgumentError("occupations: expected qubit dims followed by a resonator");
    std::vector<long> index;
    for (const auto& l : labels) {
        if (static_cast<int>(l.size()) != nq) throw ArgumentError("occupations: label '" + l + "' has wrong length");
        long x = 0;
        for (char c : l) {
            if (c != '0' && c != '1') throw ArgumentError("occupations: bad label '" + l + "'");
            x = 2 * x + (c - '0');
        }
        index.push_back(x);
    }
    const int nf = dims.back();
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (const auto& l : labels) out.push_back({"P" + l, {}});
    for (const auto& s : traj.states) {
        const Mat& m = s.mat();
        for (size_t k = 0; k < labels.size(); ++k) {
            double p = 0.0;
            for (int n = 0; n < nf; ++n) p += m(index[k] * nf + n, index[k] * nf + n).real();
            out[k].second.push_back(p);
        }
    }
    return out;
}

// ---------------------------------------------------------------- gate runs

GateScenario make_gate_scenario(const std::string& name, const GateConditions& conds, const NoiseSpec& noise,
                                int n_fock, Frame frame, double omega_q) {
    GateScenario s;
    s.name = name;
    s.conds = conds;
    s.device = device_from_conditions(conds, n_fock, omega_q);
    s.noise = noise;
    s.frame = frame;
    return s;
}

Operator scenario_ideal_gate(const GateScenario& s) { return ideal_gate(s.conds, frame_lambda_sign(s.frame)); }

StateVector scenario_input(const GateScenario& s) {
    if (s.qubit_input) return *s.qubit_input;
    return StateVector::basis(Dims(static_cast<size_t>(s.device.n_qubits), 2), 0);
}

namespace {
StateVector fock(int nf, int n) { return StateVector::basis({nf}, n); }

DensityMatrix to_interaction(const GateScenario& s, const DensityMatrix& rho, double t) {
    if (s.frame != Frame::Lab) return rho;
    Operator u0 = free_evolution(s.device, t);
    return apply(dagger(u0), rho);
}
}  // namespace

double gate_fidelity(const GateScenario& s, const DensityMatrix& rho, int k) {
    Operator u = scenario_ideal_gate(s);
    StateVector psi = scenario_input(s);
    for (int i = 0; i < k; ++i) psi = apply(u, psi);
    if (s.target_mode == TargetMode::Full) return fidelity_pure(kron(psi, fock(s.device.n_fock, s.fock_start)), rho);
    std::vector<int> keep(static_cast<size_t>(s.device.n_qubits));
    for (int j = 0; j < s.device.n_qubits; ++j) keep[j] = j;
    return fidelity_pure(psi, partial_trace(rho, keep));
}

GateRun run_gate(const GateScenario& s, int n_gates) {
    if (n_gates < 1) throw ArgumentError("run_gate: n_gates must be >= 1");
    if (s.fock_start < 0 || s.fock_start >= s.device.n_fock) throw ArgumentError("run_gate: fock_start out of range");
    TimeHamiltonian h = frame_hamiltonian_terms(s.device, s.frame);
    std::vector<Operator> cs = collapse_operators(s.device, s.noise);
    DensityMatrix rho0 = DensityMatrix::pure(kron(scenario_input(s), fock(s.device.n_fock, s.fock_start)));

    // Delta_r T = 2 pi, so every frame Hamiltonian is T-periodic up to the
    // lab carrier. A single gate window fixes the step, the run spans n_gates.
    const double T = s.conds.t_gate;
    double dt = choose_dt(h, T, s.steps_per_period);
    long per_gate = std::lround(T / dt);
    SolveOptions opts;
    opts.frame = s.frame;
    opts.t_final = T * n_gates;
    opts.dt = T / per_gate;
    opts.record_every = std::max(1L, per_gate / std::max(1, s.records_per_gate));
    while (per_gate % opts.record_every != 0) --opts.record_every;

    GateRun out{{}, solve(h, rho0, cs, opts), rho0};
    for (int k = 1; k <= n_gates; ++k) {
        double tk = k * T;
        auto it = std::min_element(out.traj.times.begin(), out.traj.times.end(),
                                   [tk](double a, double b) { return std::abs(a - tk) < std::abs(b - tk); });
        size_t idx = static_cast<size_t>(it - out.traj.times.begin());
        DensityMatrix rk = to_interaction(s, out.traj.states[idx], out.traj.times[idx]);
        out.fidelity_after_gate.push_back(gate_fidelity(s, rk, k));
        if (k == n_gates) out.final_state = rk;
    }

    // Per-record fidelity against the ideal gate sampled at the same time.
    std::vector<double> fid;
    StateVector in = scenario_input(s);
    Operator sx = collective_sx(s.device.n_qubits);
    double sign = frame_lambda_sign(s.frame);
    for (size_t i = 0; i < out.traj.times.size(); ++i) {
        double t = out.traj.times[i];
        Operator u = matexp(sx, -2.0 * I * s.conds.omega_rabi * t) * matexp(sx * sx, -2.0 * I * sign * s.conds.lambda * t);
        StateVector psi = apply(u, in);
        DensityMatrix rho = to_interaction(s, out.traj.states[i], t);
        fid.push_back(fidelity_pure(kron(psi, fock(s.device.n_fock, s.fock_start)), rho));
    }
    out.traj.observables = occupations(out.traj, all_labels(s.device.n_qubits));
    out.traj.observables.push_back({"fidelity_ideal", fid});
    return out;
}

DensityMatrix evolve_gate(const GateScenario& s, const DensityMatrix& rho_joint) {
    TimeHamiltonian h = frame_hamiltonian_terms(s.device, s.frame);
    if (h.dims() != rho_joint.dims()) throw ArgumentError("evolve_gate: state dims do not match the device");
    SolveOptions opts;
    opts.frame = s.frame;
    opts.t_final = s.conds.t_gate;
    opts.dt = choose_dt(h, opts.t_final, s.steps_per_period);
    opts.record_every = std::numeric_limits<int>::max();
    Trajectory tr = solve(h, rho_joint, collapse_operators(s.device, s.noise), opts);
    return to_interaction(s, tr.states.back(), tr.times.back());
}

std::vector<double> repeated_gate_fidelity(const GateScenario& s, int n_gates, bool with_noise) {
    GateScenario c = s;
    if (!with_noise) c.noise = NoiseSpec::none();
    return run_gate(c, n_gates).fidelity_after_gate;
}

double fock_convergence_shift(const GateScenario& s) {
    GateScenario big = s;
    big.device.n_fock += 4;
    double f0 = run_gate(s, 1).fidelity_after_gate.front();
    double f1 = run_gate(big, 1).fidelity_after_gate.front();
    return std::abs(f1 - f0);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::vector<std::string> header = {"time"};
    for (const auto& [k, v] : traj.observables) header.push_back(k);
    CsvWriter w(header);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<double> row = {traj.times[i]};
        for (const auto& [k, v] : traj.observables) row.push_back(v.at(i));
        w.row(row);
    }
    return w.str();
}

}  // namespace tsim
