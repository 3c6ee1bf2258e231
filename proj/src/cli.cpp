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


#include "tsim/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <tbb/parallel_for.h>

#include "tsim/algorithms.hpp"
#include "tsim/device.hpp"
#include "tsim/gates.hpp"
#include "tsim/io.hpp"
#include "tsim/lindblad.hpp"
#include "tsim/model.hpp"
#include "tsim/qpt.hpp"

namespace tsim {

using nlohmann::json;

namespace {

constexpr double kMHz = kTwoPi;  // f/MHz -> omega in rad/us

struct Axis {
    std::string parameter;
    double min = 0.0;
    double max = 0.0;
    int points = 2;

    std::vector<double> values() const {
        std::vector<double> v(static_cast<size_t>(points));
        for (int i = 0; i < points; ++i) v[i] = points == 1 ? min : min + (max - min) * i / (points - 1);
        return v;
    }
    json to_json() const { return {{"parameter", parameter}, {"min", min}, {"max", max}, {"points", points}}; }
};

struct NoiseDefaults {
    double kappa_mhz = 0.0;
    double t1_us = 0.0;  // 0 means no qubit noise
    double t2_us = 0.0;
};

struct Context;

struct ScenarioDef {
    std::string name;
    std::optional<GateFamily> family;
    double g_mhz = 0.0;
    int index = 0;
    int n_fock = 6;
    int steps_per_period = 128;
    NoiseDefaults noise;
    std::optional<Axis> axis;
    std::set<std::string> params;
    std::function<void(Context&)> run;
};

struct Context {
    const ScenarioDef* def = nullptr;
    json config;
    json params = json::object();

    // Gate scenarios only.
    std::optional<GateConditions> conds;
    ValidityReport validity;
    NoiseSpec noise;
    json noise_json = json::object();
    double kappa_mhz = 0.0;
    double t1_us = 0.0;
    double t2_us = 0.0;
    Frame frame = Frame::Interaction;
    int n_fock = 6;
    int steps_per_period = 64;
    double omega_q = kTwoPi * 4800.0;
    std::optional<Axis> axis;

    ScenarioOutput out;
    json results = json::object();

    GateScenario scenario(const NoiseSpec& n) const {
        GateScenario s = make_gate_scenario(def->name, *conds, n, n_fock, frame, omega_q);
        s.steps_per_period = steps_per_period;
        return s;
    }
    void file(const std::string& name, std::string content) { out.files[name] = std::move(content); }
    template <class T>
    T param(const std::string& key, T fallback) const {
        return params.contains(key) ? params.at(key).get<T>() : fallback;
    }
};

json noise_record(double kappa_mhz, const NoiseSpec& n, double t1, double t2) {
    json j{{"kappa_mhz", kappa_mhz}, {"gamma1_per_us", n.gamma1_of(0)}, {"gamma_phi_per_us", n.gamma_phi_of(0)}};
    if (t1 > 0.0) j["t1_us"] = t1;
    if (t2 > 0.0) j["t2_us"] = t2;
    return j;
}

NoiseSpec make_noise(double kappa_mhz, double t1, double t2) {
    if (t1 <= 0.0) {
        NoiseSpec n;
        n.kappa = kappa_mhz * kMHz;
        return n;
    }
    return NoiseSpec::from_t1_t2(kappa_mhz * kMHz, t1, t2);
}

json conditions_json(const GateConditions& c, const ValidityReport& r) {
    return {{"family", to_string(c.family)},
            {"index", c.integer_index},
            {"g_mhz", c.g / kMHz},
            {"delta_r_mhz", c.delta_r / kMHz},
            {"lambda_mhz", c.lambda / kMHz},
            {"omega_rabi_mhz", c.omega_rabi / kMHz},
            {"t_gate_us", c.t_gate},
            {"b", c.b},
            {"h", c.h},
            {"two_omega_over_g", r.two_omega_over_g},
            {"two_omega_over_delta", r.two_omega_over_delta},
            {"strong_driving", r.strong_vs_g && r.strong_vs_delta}};
}

json labels_json(const Trajectory& tr) {
    json j = json::array();
    for (const auto& [k, v] : tr.observables) j.push_back(k);
    return j;
}

// ------------------------------------------------------------ scenario bodies

void run_cpb(Context& ctx) {
    const auto ratios = ctx.param<std::vector<double>>("ratios", {0.5, 1.0, 5.0, 50.0});
    const int levels = ctx.param<int>("levels", 3);
    const int cutoff = ctx.param<int>("charge_cutoff", 15);
    const std::string conv_name = ctx.param<std::string>("convention", "single_electron");
    const ChargeConvention conv =
        conv_name == "cooper_pair" ? ChargeConvention::CooperPair : ChargeConvention::SingleElectron;
    const auto ngs = ctx.axis->values();

    // Energies in units of E_01 at N_g = 1/2, measured from E_0 at N_g = 1/2.
    std::vector<std::string> header = {"ratio", "n_g"};
    for (int k = 0; k < levels; ++k) header.push_back("E" + std::to_string(k));
    CsvWriter spec(header);
    for (double r : ratios) {
        CpbParams p{1.0, r, 0.5, cutoff, conv};
        auto ref = cpb_spectrum(p, 2);
        const double e01 = ref[1] - ref[0];
        for (double ng : ngs) {
            p.n_g = ng;
            auto e = cpb_spectrum(p, levels);
            std::vector<double> row = {r, ng};
            for (double v : e) row.push_back((v - ref[0]) / e01);
            spec.row(row);
        }
    }
    ctx.file("spectrum.csv", spec.str());

    // Charge dispersion over the transmon range and its log-linear fit.
    CsvWriter disp({"ratio", "sqrt_8ej_ec", "eps0", "eps1", "log_abs_eps0"});
    std::vector<double> xs, ys;
    for (int i = 0; i <= 8; ++i) {
        double r = 10.0 + 5.0 * i;
        CpbParams p{1.0, r, 0.0, cutoff, conv};
        double e0 = charge_dispersion(p, 0), e1 = charge_dispersion(p, 1);
        double x = std::sqrt(8.0 * r), y = std::log(std::abs(e0));
        xs.push_back(x);
        ys.push_back(y);
        disp.row({r, x, e0, e1, y});
    }
    ctx.file("dispersion.csv", disp.str());
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
    double sxx = 0, syy = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }

    // Transmon estimate: E_01 = sqrt(8 E_J E_C) - E_C, alpha = -E_01 / sqrt(8 E_J / E_C).
    const double ec_ghz = ctx.param<double>("ec_ghz", 2.0);
    const double ratio = ctx.param<double>("leakage_ratio", 50.0);
    const double rabi_mhz = ctx.param<double>("leakage_rabi_mhz", 330.0);
    const double e01 = std::sqrt(8.0 * ratio) * ec_ghz - ec_ghz;
    const double alpha_ghz = -e01 / std::sqrt(8.0 * ratio);
    const double p2 = leakage_estimate(alpha_ghz * 1000.0, rabi_mhz);
    Anharmonicity an = anharmonicity(CpbParams{1.0, ratio, 0.5, cutoff, conv});

    ctx.results = {{"convention", conv_name},
                   {"alpha_over_ec_numeric", an.alpha},
                   {"alpha_relative_error_vs_minus_ec", std::abs(an.alpha + 1.0)},
                   {"alpha_estimate_ghz", alpha_ghz},
                   {"dispersion_fit_slope", sxy / sxx},
                   {"dispersion_fit_correlation", sxy / std::sqrt(sxx * syy)},
                   {"leakage_p2", p2}};
}

double single_gate_fidelity(const Context& ctx, const NoiseSpec& n, int fock = 0) {
    GateScenario s = ctx.scenario(n);
    s.fock_start = fock;
    return run_gate(s, 1).fidelity_after_gate.front();
}

void run_fidelity_sweep(Context& ctx) {
    const Axis& ax = *ctx.axis;
    const auto xs = ax.values();
    std::vector<double> f(xs.size());
    tbb::parallel_for(size_t(0), xs.size(), [&](size_t i) {
        double x = xs[i];
        if (ax.parameter == "kappa_mhz") {
            f[i] = single_gate_fidelity(ctx, make_noise(x, ctx.t1_us, ctx.t2_us));
        } else if (ax.parameter == "t_us") {
            f[i] = single_gate_fidelity(ctx, make_noise(ctx.kappa_mhz, x, x));
        } else {
            f[i] = single_gate_fidelity(ctx, ctx.noise, static_cast<int>(std::lround(x)));
        }
    });
    CsvWriter w({ax.parameter, "fidelity"});
    for (size_t i = 0; i < xs.size(); ++i) w.row({xs[i], f[i]});
    ctx.file("fidelity.csv", w.str());
    ctx.results = {{"min_fidelity", *std::min_element(f.begin(), f.end())},
                   {"max_fidelity", *std::max_element(f.begin(), f.end())},
                   {"noiseless_fidelity", single_gate_fidelity(ctx, NoiseSpec::none())}};
}

// First time P_a - P_b changes sign after t = 0, linearly interpolated.
std::optional<double> first_crossing(const Trajectory& tr, const std::string& a, const std::string& b) {
    const auto& pa = tr.observable(a);
    const auto& pb = tr.observable(b);
    for (size_t i = 1; i < tr.times.size(); ++i) {
        double d0 = pa[i - 1] - pb[i - 1], d1 = pa[i] - pb[i];
        if (d0 > 0.0 && d1 <= 0.0) return tr.times[i - 1] + (tr.times[i] - tr.times[i - 1]) * d0 / (d0 - d1);
    }
    return std::nullopt;
}

void run_dynamics(Context& ctx) {
    const int nq = family_qubits(ctx.conds->family);
    const int n_gates = ctx.param<int>("n_gates", 10);
    const int records = ctx.param<int>("records_per_gate", 200);
    GateScenario s = ctx.scenario(ctx.noise);
    s.records_per_gate = records;
    GateRun one = run_gate(s, 1);
    ctx.file("dynamics.csv", trajectory_csv(one.traj));
    for (auto& l : one.traj.log) ctx.out.log.push_back(l);

    std::vector<double> noisy = repeated_gate_fidelity(s, n_gates, true);
    std::vector<double> clean = repeated_gate_fidelity(s, n_gates, false);
    CsvWriter w({"gate", "fidelity_noisy", "fidelity_noiseless", "decoherence_error"});
    for (int k = 0; k < n_gates; ++k) w.row({double(k + 1), noisy[k], clean[k], clean[k] - noisy[k]});
    ctx.file("gates.csv", w.str());

    const std::string zero(static_cast<size_t>(nq), '0'), one_s(static_cast<size_t>(nq), '1');
    auto cross = first_crossing(one.traj, "P" + zero, "P" + one_s);
    ctx.results = {{"fidelity_one_gate", noisy.front()},
                   {"fidelity_one_gate_noiseless", clean.front()},
                   {"decoherence_error_one_gate", clean.front() - noisy.front()},
                   {"observables", labels_json(one.traj)},
                   {"final_trace_drift", one.traj.final_trace_drift},
                   {"min_eigenvalue", one.traj.min_eigenvalue()},
                   {"reference_crossing_us", kPi / (8.0 * ctx.conds->lambda)}};
    ctx.results["first_crossing_us"] = cross ? json(*cross) : json(nullptr);
}

std::vector<long> oracle_list(const Context& ctx, int n) {
    std::vector<long> out;
    if (ctx.params.contains("marked")) {
        const json& m = ctx.params.at("marked");
        if (m.is_array())
            for (const auto& v : m) out.push_back(v.get<long>());
        else
            out.push_back(m.get<long>());
    } else {
        for (long x = 0; x < (1L << n); ++x) out.push_back(x);
    }
    return out;
}

void run_grover_ideal(Context& ctx) {
    const int n = ctx.param<int>("n", 3);
    const int iters = ctx.param<int>("iterations", grover_optimal_iterations(n));
    const Prep prep = prep_from_string(ctx.param<std::string>("prep", "w_gates"));
    json runs = json::array();
    CsvWriter amp({"marked", "step", "state", "re", "im", "prob"});
    for (long x : oracle_list(ctx, n)) {
        GroverRun r = grover_ideal(n, x, iters, prep);
        std::vector<double> sp(r.success_prob_per_step.begin() + 1, r.success_prob_per_step.end());
        runs.push_back({{"marked", bit_string(x, n)}, {"success_prob", sp}, {"initial_prob", r.success_prob_per_step[0]}});
        for (size_t k = 0; k < r.amplitudes_per_step.size(); ++k)
            for (long i = 0; i < r.amplitudes_per_step[k].size(); ++i) {
                cx a = r.amplitudes_per_step[k](i);
                amp.row({bit_string(x, n), std::to_string(k), bit_string(i, n), fmt12(a.real()), fmt12(a.imag()),
                         fmt12(std::norm(a))});
            }
    }
    ctx.file("amplitudes.csv", amp.str());
    ctx.results = {{"n", n},
                   {"iterations", iters},
                   {"prep", to_string(prep)},
                   {"runs", runs},
                   {"geometry_theta", grover_geometry(n, 1)}};
}

void run_grover_sweep(Context& ctx) {
    const int n = family_qubits(ctx.conds->family);
    const double h = ctx.param<double>("h", ctx.conds->h);
    const auto oracles = oracle_list(ctx, n);
    std::vector<double> bs;
    for (double v : ctx.axis->values()) bs.push_back(v * kPi);
    auto pts = grover_noisy_sweep(n, oracles, bs, h);
    CsvWriter w({"b_over_pi", "b", "h", "oracle", "fidelity"});
    for (const auto& p : pts) w.row({fmt12(p.b / kPi), fmt12(p.b), fmt12(p.h), p.oracle, fmt12(p.fidelity)});
    ctx.file("sweep.csv", w.str());

    const double b0 = ctx.conds->b;
    json per = json::object();
    for (long x : oracles) {
        double lo = 1.0;
        for (const auto& p : pts)
            if (p.oracle == bit_string(x, n) && std::abs(p.b - b0) <= 0.1 * b0 + 1e-12) lo = std::min(lo, p.fidelity);
        per[bit_string(x, n)] = {{"fidelity_at_operating_b", grover_noisy_fidelity(n, x, b0, h)},
                                 {"min_fidelity_within_10pct", lo}};
    }
    ctx.results = {{"h", h}, {"operating_b", b0}, {"oracles", per}};

    if (ctx.param<bool>("master_equation", true)) {
        const long x = oracles.front();
        GroverMasterResult noisy = grover_master_equation(n, x, *ctx.conds, ctx.noise, ctx.n_fock, ctx.steps_per_period);
        GroverMasterResult clean =
            grover_master_equation(n, x, *ctx.conds, NoiseSpec::none(), ctx.n_fock, ctx.steps_per_period);
        json segs = json::array();
        for (const auto& s : noisy.segments)
            segs.push_back({{"name", s.name}, {"t_start_us", s.t_start}, {"duration_us", s.duration},
                            {"success_after", s.success_after}});
        ctx.results["master_equation"] = {{"marked", bit_string(x, n)},
                                          {"fidelity", noisy.fidelity},
                                          {"fidelity_noiseless", clean.fidelity},
                                          {"degradation", clean.fidelity - noisy.fidelity},
                                          {"total_time_us", noisy.total_time},
                                          {"segments", segs}};
        ctx.file("master_equation.csv", trajectory_csv(noisy.traj));
        for (const auto& s : noisy.segments)
            ctx.out.log.push_back("segment " + s.name + " wall " + std::to_string(s.wall_seconds) + " s");
    }
}

void run_qpt(Context& ctx) {
    const int n = family_qubits(ctx.conds->family);
    const YConvention y =
        ctx.param<std::string>("y_convention", "minus_i_sigma_y") == "standard" ? YConvention::Standard
                                                                                 : YConvention::MinusISigmaY;
    GateScenario s = ctx.scenario(ctx.noise);
    Channel ch = lindblad_channel(s);
    auto pairs = process_pairs(ch, tomographic_inputs(n));
    ChiMatrix chi = chi_linear_inversion(pairs, n, y);
    const Operator u = scenario_ideal_gate(s);
    ChiMatrix ideal = chi_ideal(u, y);
    ChiMatrix ent = chi_ideal(entangler(n).matrix, y);

    ctx.file("chi_sim.csv", chi_bar_csv(chi));
    ctx.file("chi_sim.json", chi_json(chi));
    ctx.file("chi_ideal.csv", chi_bar_csv(ideal));
    ctx.file("chi_ideal.json", chi_json(ideal));
    ctx.results = {{"process_fidelity", process_fidelity(ideal, chi)},
                   {"process_fidelity_vs_entangler", process_fidelity(ent, chi)},
                   {"mean_fidelity", mean_fidelity(u, pairs)},
                   {"chi_trace_re", chi.trace().real()},
                   {"chi_hermiticity_error", chi.hermiticity_error()},
                   {"chi_min_eigenvalue", chi.min_eigenvalue()},
                   {"reconstruction_residual", chi_residual(chi, pairs)}};
}

void run_dj(Context& ctx) {
    const int n = ctx.param<int>("n", 3);
    const long N = 1L << n;
    std::vector<std::pair<std::string, std::vector<int>>> fs;
    std::vector<int> zero(N, 0), one(N, 1), first(N), parity(N);
    for (long x = 0; x < N; ++x) {
        first[x] = static_cast<int>((x >> (n - 1)) & 1);
        parity[x] = std::popcount(static_cast<unsigned long>(x)) & 1;
    }
    fs = {{"constant_0", zero}, {"constant_1", one}, {"first_bit", first}, {"parity", parity}};
    json runs = json::array();
    for (const auto& [name, truth] : fs) {
        DeutschJozsaResult r = deutsch_jozsa(n, truth);
        std::vector<double> probs;
        for (long i = 0; i < r.amplitudes.size(); ++i) probs.push_back(std::norm(r.amplitudes(i)));
        runs.push_back({{"function", name}, {"verdict", r.verdict}, {"p_zero", r.p_zero}, {"probabilities", probs}});
    }
    ctx.results = {{"n", n}, {"runs", runs}};
}

// ------------------------------------------------------------ registry

const std::vector<ScenarioDef>& registry() {
    static const std::vector<ScenarioDef> defs = [] {
        const NoiseDefaults default_noise{2.5, 95.0, 70.0};
        const std::set<std::string> dyn = {"n_gates", "records_per_gate"};
        const std::set<std::string> sweep = {"h", "marked", "master_equation"};
        const std::set<std::string> qpt = {"y_convention"};
        std::vector<ScenarioDef> d;
        d.push_back({"cpb-spectrum", std::nullopt, 0, 0, 0, 0, {}, Axis{"n_g", -2.0, 2.0, 201},
                     {"ratios", "levels", "charge_cutoff", "convention", "ec_ghz", "leakage_ratio", "leakage_rabi_mhz"},
                     run_cpb});
        d.push_back({"xgate2-fidelity-kappa", GateFamily::X2, 60.0, 9, 16, 128, default_noise,
                     Axis{"kappa_mhz", 0.0, 2.5, 6}, {}, run_fidelity_sweep});
        d.push_back({"xgate2-fidelity-T", GateFamily::X2, 60.0, 9, 16, 128, default_noise,
                     Axis{"t_us", 10.0, 100.0, 10}, {}, run_fidelity_sweep});
        d.push_back({"xgate3-fidelity-kappa", GateFamily::X3, 60.0, 4, 16, 128, default_noise,
                     Axis{"kappa_mhz", 0.0, 2.5, 6}, {}, run_fidelity_sweep});
        d.push_back({"xgate3-fock", GateFamily::X3, 60.0, 4, 16, 128, {0.5, 95.0, 70.0},
                     Axis{"fock_n", 0.0, 6.0, 7}, {}, run_fidelity_sweep});
        d.push_back({"bell-dynamics", GateFamily::Ent2, 40.0, 5, 12, 128, {1.5, 20.0, 20.0}, std::nullopt, dyn,
                     run_dynamics});
        d.push_back({"ghz-dynamics", GateFamily::Ent3, 20.0, 4, 12, 128, {1.5, 20.0, 20.0}, std::nullopt,
                     dyn, run_dynamics});
        d.push_back({"grover-ideal", std::nullopt, 0, 0, 0, 0, {}, std::nullopt,
                     {"n", "marked", "iterations", "prep"}, run_grover_ideal});
        d.push_back({"grover2-sweep", GateFamily::X2, 220.0, 13, 12, 128, {0.0, 95.0, 70.0},
                     Axis{"b_over_pi", 0.9, 1.1, 201}, sweep, run_grover_sweep});
        d.push_back({"grover3-sweep", GateFamily::X3, 60.0, 4, 12, 128, {0.0, 95.0, 70.0},
                     Axis{"b_over_pi", 0.9, 1.1, 201}, sweep, run_grover_sweep});
        d.push_back({"qpt2", GateFamily::Ent2, 40.0, 5, 12, 128, {1.5, 20.0, 20.0}, std::nullopt, qpt, run_qpt});
        d.push_back({"qpt3", GateFamily::Ent3, 20.0, 4, 8, 128, {1.5, 0.6, 0.6}, std::nullopt, qpt,
                     run_qpt});
        d.push_back({"dj-demo", std::nullopt, 0, 0, 0, 0, {}, std::nullopt, {"n"}, run_dj});
        return d;
    }();
    return defs;
}

const ScenarioDef* find_def(const std::string& name) {
    for (const auto& d : registry())
        if (d.name == name) return &d;
    return nullptr;
}

std::string registry_list() {
    std::string s;
    for (const auto& n : scenario_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
}

// Reads the config into a context, collecting every problem found.
Context resolve(const json& cfg, ValidationReport& rep) {
    Context ctx;
    ctx.config = cfg;
    auto bad = [&](const std::string& m) { rep.violations.push_back(m); };
    if (!cfg.is_object()) {
        bad("config must be a JSON object");
        return ctx;
    }
    static const std::set<std::string> top = {"scenario", "device", "noise", "sweep", "params", "output_dir", "seed"};
    for (const auto& [k, v] : cfg.items())
        if (!top.count(k)) bad("unknown config key '" + k + "'");
    if (!cfg.contains("scenario") || !cfg["scenario"].is_string()) {
        bad("missing scenario; registry: " + registry_list());
        return ctx;
    }
    const std::string name = cfg["scenario"].get<std::string>();
    ctx.def = find_def(name);
    if (!ctx.def) {
        bad("unknown scenario '" + name + "'; registry: " + registry_list());
        return ctx;
    }
    const ScenarioDef& def = *ctx.def;

    auto section = [&](const std::string& key, const std::set<std::string>& allowed) -> json {
        if (!cfg.contains(key)) return json::object();
        const json& s = cfg[key];
        if (!s.is_object()) {
            bad("'" + key + "' must be an object");
            return json::object();
        }
        for (const auto& [k, v] : s.items())
            if (!allowed.count(k)) bad("unknown key '" + key + "." + k + "' for scenario " + name);
        return s;
    };
    auto number = [&](const json& s, const std::string& sec, const std::string& key, double fallback) {
        if (!s.contains(key)) return fallback;
        if (!s[key].is_number()) {
            bad("'" + sec + "." + key + "' must be a number");
            return fallback;
        }
        double v = s[key].get<double>();
        if (!std::isfinite(v)) bad("'" + sec + "." + key + "' must be finite");
        return v;
    };

    if (cfg.contains("seed") && !cfg["seed"].is_number_integer()) bad("'seed' must be an integer");
    if (cfg.contains("output_dir") && !cfg["output_dir"].is_string()) bad("'output_dir' must be a string");

    ctx.params = section("params", def.params);

    // Sweep axis.
    ctx.axis = def.axis;
    json sw = section("sweep", {"parameter", "min", "max", "points"});
    if (!sw.empty()) {
        if (!def.axis) {
            bad("scenario " + name + " has no sweep axis");
        } else {
            Axis a = *def.axis;
            if (sw.contains("parameter") && sw["parameter"] != a.parameter)
                bad("sweep parameter for " + name + " must be '" + a.parameter + "'");
            a.min = number(sw, "sweep", "min", a.min);
            a.max = number(sw, "sweep", "max", a.max);
            if (sw.contains("points")) {
                if (!sw["points"].is_number_integer()) bad("'sweep.points' must be an integer");
                else a.points = sw["points"].get<int>();
            }
            if (a.points < 2) bad("sweep points must be >= 2");
            if (a.max < a.min) bad("sweep max must be >= min");
            ctx.axis = a;
        }
    }
    if (ctx.axis && (ctx.axis->parameter == "kappa_mhz" || ctx.axis->parameter == "t_us" ||
                     ctx.axis->parameter == "fock_n") && ctx.axis->min < 0.0)
        bad("sweep min must be >= 0 for " + ctx.axis->parameter);
    if (ctx.axis && ctx.axis->parameter == "t_us" && ctx.axis->min <= 0.0) bad("sweep over t_us needs min > 0");

    if (!def.family) {
        if (cfg.contains("device")) rep.warnings.push_back("'device' is ignored by scenario " + name);
        if (cfg.contains("noise")) rep.warnings.push_back("'noise' is ignored by scenario " + name);
        return ctx;
    }

    // Device and gate conditions.
    json dev = section("device", {"g_mhz", "gate_index", "n_fock", "omega_q_ghz", "omega_rabi_mhz", "frame",
                                  "steps_per_period"});
    const double g_mhz = number(dev, "device", "g_mhz", def.g_mhz);
    int index = def.index;
    if (dev.contains("gate_index")) {
        if (!dev["gate_index"].is_number_integer()) bad("'device.gate_index' must be an integer");
        else index = dev["gate_index"].get<int>();
    }
    ctx.n_fock = def.n_fock;
    if (dev.contains("n_fock")) {
        if (!dev["n_fock"].is_number_integer()) bad("'device.n_fock' must be an integer");
        else ctx.n_fock = dev["n_fock"].get<int>();
    }
    if (ctx.n_fock < 2) bad("device.n_fock must be >= 2");
    ctx.steps_per_period = def.steps_per_period;
    if (dev.contains("steps_per_period")) {
        if (!dev["steps_per_period"].is_number_integer()) bad("'device.steps_per_period' must be an integer");
        else ctx.steps_per_period = dev["steps_per_period"].get<int>();
    }
    if (ctx.steps_per_period < 8) bad("device.steps_per_period must be >= 8");
    const double fq_ghz = number(dev, "device", "omega_q_ghz", 4.8);
    if (!(fq_ghz > 0.0)) bad("device.omega_q_ghz must be > 0");
    ctx.omega_q = fq_ghz * 1000.0 * kMHz;
    if (dev.contains("frame")) {
        try {
            ctx.frame = frame_from_string(dev["frame"].get<std::string>());
        } catch (const std::exception& e) {
            bad(std::string("device.frame: ") + e.what());
        }
    }
    if (!(g_mhz > 0.0)) {
        bad("device.g_mhz must be > 0");
    } else {
        try {
            ResolvedConditions rc = resolve_conditions(*def.family, g_mhz * kMHz, index);
            ctx.conds = rc.conds;
            ctx.validity = rc.report;
            for (const auto& note : rc.report.notes) rep.warnings.push_back("strong driving: " + note);
            if (dev.contains("omega_rabi_mhz")) {
                double want = number(dev, "device", "omega_rabi_mhz", 0.0);
                double got = rc.conds.omega_rabi / kMHz;
                if (std::abs(want - got) > 0.01 * got)
                    bad("device.omega_rabi_mhz = " + fmt12(want) + " does not satisfy the gate condition (" +
                        fmt12(got) + " MHz at this g and index)");
            }
        } catch (const std::exception& e) {
            bad(std::string("gate conditions: ") + e.what());
        }
    }

    // Noise.
    json nz = section("noise", {"kappa_mhz", "t1_us", "t2_us", "tc_us", "gamma1_per_us", "gamma_phi_per_us"});
    ctx.kappa_mhz = number(nz, "noise", "kappa_mhz", def.noise.kappa_mhz);
    ctx.t1_us = def.noise.t1_us;
    ctx.t2_us = def.noise.t2_us;
    const bool has_t = nz.contains("t1_us") || nz.contains("t2_us");
    const bool has_rates = nz.contains("gamma1_per_us") || nz.contains("gamma_phi_per_us");
    if (nz.contains("tc_us") + has_t + has_rates > 1)
        bad("noise: give only one of tc_us, t1_us/t2_us, gamma1_per_us/gamma_phi_per_us");
    if (nz.contains("tc_us")) ctx.t1_us = ctx.t2_us = number(nz, "noise", "tc_us", 0.0);
    ctx.t1_us = number(nz, "noise", "t1_us", ctx.t1_us);
    ctx.t2_us = number(nz, "noise", "t2_us", ctx.t2_us);
    if (ctx.kappa_mhz < 0.0) bad("noise.kappa_mhz must be >= 0");
    if (has_rates) {
        if (!nz.contains("gamma1_per_us") || !nz.contains("gamma_phi_per_us"))
            bad("noise: gamma1_per_us and gamma_phi_per_us go together");
        double g1 = number(nz, "noise", "gamma1_per_us", 0.0), gp = number(nz, "noise", "gamma_phi_per_us", 0.0);
        if (g1 < 0.0 || gp < 0.0) bad("noise rates must be >= 0");
        int nq = family_qubits(*def.family);
        ctx.noise.kappa = ctx.kappa_mhz * kMHz;
        ctx.noise.gamma1.assign(nq, g1);
        ctx.noise.gamma_phi.assign(nq, gp);
        ctx.t1_us = ctx.t2_us = 0.0;
    } else if (ctx.t1_us > 0.0 || ctx.t2_us > 0.0) {
        if (!(ctx.t1_us > 0.0) || !(ctx.t2_us > 0.0)) {
            bad("noise: t1_us and t2_us must both be > 0");
        } else {
            if (ctx.t2_us > 2.0 * ctx.t1_us)
                bad("negative gamma_phi: T2 > 2 T1 gives 1/T2 - 1/(2 T1) < 0 (standard relation)");
            try {
                ctx.noise = make_noise(ctx.kappa_mhz, ctx.t1_us, ctx.t2_us);
            } catch (const std::exception& e) {
                bad(std::string("negative gamma_phi: ") + e.what());
            }
        }
    } else {
        ctx.noise = make_noise(ctx.kappa_mhz, 0.0, 0.0);
    }
    if (ctx.conds) {
        double fr_mhz = fq_ghz * 1000.0 + ctx.conds->delta_r / kMHz;
        if (ctx.kappa_mhz > 1e-2 * fr_mhz) bad("noise.kappa_mhz is not small compared with the resonator frequency");
        if (ctx.axis && ctx.axis->parameter == "fock_n" && ctx.axis->max > ctx.n_fock - 2)
            bad("fock sweep needs n_fock >= max Fock state + 2");
        ctx.noise_json = noise_record(ctx.kappa_mhz, ctx.noise, ctx.t1_us, ctx.t2_us);
    }
    return ctx;
}

json manifest(const Context& ctx) {
    json m;
    m["toolkit"] = "transmonsim";
    m["version"] = kToolkitVersion;
    m["scenario"] = ctx.def->name;
    m["config"] = ctx.config;
    json r = json::object();
    if (ctx.conds) {
        r["conditions"] = conditions_json(*ctx.conds, ctx.validity);
        r["noise"] = ctx.noise_json;
        r["frame"] = to_string(ctx.frame);
        r["n_fock"] = ctx.n_fock;
        r["steps_per_period"] = ctx.steps_per_period;
        r["omega_q_ghz"] = ctx.omega_q / kMHz / 1000.0;
    }
    if (ctx.axis) r["sweep"] = ctx.axis->to_json();
    if (!ctx.params.empty()) r["params"] = ctx.params;
    m["resolved"] = r;
    json files = json::array();
    for (const auto& [k, v] : ctx.out.files) files.push_back(k);
    files.push_back("manifest.json");
    files.push_back("results.json");
    std::sort(files.begin(), files.end());
    m["files"] = files;
    return m;
}

}  // namespace

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.push_back(d.name);
    return out;
}

json ValidationReport::to_json() const { return {{"violations", violations}, {"warnings", warnings}}; }

ValidationReport validate(const json& config) {
    ValidationReport rep;
    try {
        resolve(config, rep);
    } catch (const std::exception& e) {
        rep.violations.push_back(e.what());
    }
    return rep;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

ScenarioOutput run_scenario(const json& config) {
    ValidationReport rep;
    Context ctx = resolve(config, rep);
    if (!rep.ok()) throw ArgumentError(rep.violations.front());
    try {
        ctx.def->run(ctx);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("params: ") + e.what());
    }
    ctx.file("results.json", dump_json(ctx.results));
    ctx.file("manifest.json", dump_json(manifest(ctx)));
    return std::move(ctx.out);
}

GateScenario gate_scenario(const json& config) {
    ValidationReport rep;
    Context ctx = resolve(config, rep);
    if (!rep.ok()) throw ArgumentError(rep.violations.front());
    if (!ctx.conds) throw ArgumentError("scenario '" + ctx.def->name + "' has no gate");
    return ctx.scenario(ctx.noise);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"transmonsim scenario runner"};
    std::string config_path, output_dir, scenario;
    bool list = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--output-dir", output_dir, "directory for artifacts (overrides config)");
    app.add_option("--scenario", scenario, "scenario name (overrides config)");
    app.add_flag("--list-scenarios", list, "print the scenario registry and exit");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
    if (list) {
        for (const auto& n : scenario_names()) std::cout << n << "\n";
        return kExitOk;
    }

    auto fail = [&](const std::string& kind, const json& detail, int code, const std::string& dir) {
        json rec{{"error", kind}, {"detail", detail}, {"exit_code", code}};
        std::cerr << rec.dump() << "\n";
        if (!dir.empty()) {
            try {
                std::filesystem::create_directories(dir);
                write_text_file((std::filesystem::path(dir) / "error.json").string(), dump_json(rec));
            } catch (const std::exception&) {
            }
        }
        return code;
    };

    json cfg = json::object();
    if (!config_path.empty()) {
        try {
            std::ifstream f(config_path);
            if (!f) return fail("config", "cannot read " + config_path, kExitConfig, output_dir);
            cfg = json::parse(f);
        } catch (const json::exception& e) {
            return fail("config", std::string("invalid JSON: ") + e.what(), kExitConfig, output_dir);
        }
    }
    if (!scenario.empty()) cfg["scenario"] = scenario;
    if (output_dir.empty())
        output_dir = cfg.contains("output_dir") && cfg["output_dir"].is_string()
                         ? cfg["output_dir"].get<std::string>()
                         : "tsim-out/" + cfg.value("scenario", std::string("unknown"));

    ValidationReport rep = validate(cfg);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    if (!rep.ok()) return fail("config", rep.to_json(), kExitConfig, output_dir);

    try {
        ScenarioOutput out = run_scenario(cfg);
        std::filesystem::create_directories(output_dir);
        for (const auto& [name, content] : out.files)
            write_text_file((std::filesystem::path(output_dir) / name).string(), content);
        for (const auto& l : out.log) std::cerr << l << "\n";
        std::cerr << "wrote " << out.files.size() << " files to " << output_dir << "\n";
        return kExitOk;
    } catch (const ArgumentError& e) {
        return fail("config", e.what(), kExitConfig, output_dir);
    } catch (const PreconditionError& e) {
        return fail("config", e.what(), kExitConfig, output_dir);
    } catch (const NumericalError& e) {
        return fail("numerical", e.what(), kExitNumerical, output_dir);
    } catch (const std::exception& e) {
        return fail("io", e.what(), kExitNumerical, output_dir);
    }
}

}  // namespace tsim
