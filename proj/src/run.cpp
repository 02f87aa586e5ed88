#include "stirap/run.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include <json.hpp>

#include "stirap/adiabatic.hpp"
#include "stirap/full8.hpp"
#include "stirap/lindblad.hpp"
#include "stirap/reduced.hpp"

namespace stirap {

using json = nlohmann::ordered_json;

namespace {

// 17 significant digits round-trip doubles losslessly.
std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_tag(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

DensityMatrix3 state_in_bare(const Trajectory& traj, std::size_t i, const Protocol& protocol) {
    if (traj.frame == Frame::Bare) return traj.states[i];
    const double theta = sample(protocol, traj.times[i]).theta;
    return DensityMatrix3{to_bare_frame(traj.states[i].m, theta)};
}

DensityMatrix3 state_in_adiabatic(const Trajectory& traj, std::size_t i, const Protocol& protocol) {
    if (traj.frame == Frame::Adiabatic) return traj.states[i];
    const double theta = sample(protocol, traj.times[i]).theta;
    return DensityMatrix3{to_adiabatic_frame(traj.states[i].m, theta)};
}

Trajectory reduced_as_trajectory(const ReducedTrajectory& rt) {
    Trajectory traj;
    traj.frame = Frame::Adiabatic;
    traj.times = rt.times;
    traj.cert.dt_used = rt.dt_used;
    traj.cert.steps = rt.steps;
    for (const ReducedState& s : rt.states) {
        DensityMatrix3 rho = reduced_to_adiabatic(s);
        traj.trace_err.push_back(rho.trace_error());
        traj.purity.push_back(purity(rho));
        traj.cert.min_eigenvalue = std::min(traj.cert.min_eigenvalue, eig_hermitian3(rho.m)[0]);
        traj.states.push_back(std::move(rho));
    }
    return traj;
}

Trajectory analytic_trajectory(const SimConfig& cfg) {
    if (cfg.protocol.kind != ProtocolKind::LinearSine)
        throw ConfigError("analytic engine: the closed-form law holds for the linear_sine "
                          "protocol only");
    const long n = cfg.steps();
    const long stride = cfg.stride_effective();
    const double h = cfg.dt_effective();
    const double theta_dot = std::numbers::pi / (2.0 * cfg.protocol.t0);
    const double omega = cfg.protocol.omega0;

    Trajectory traj;
    traj.frame = Frame::Adiabatic;
    traj.cert.dt_used = h;
    traj.cert.steps = n;
    for (long k = 0; k <= n; ++k) {
        if (!(k == 0 || k % stride == 0 || k == n)) continue;
        const double t = std::min(static_cast<double>(k) * h, cfg.protocol.t0);
        ReducedState s;
        s.rho_dd = analytic_rho_dd(t, cfg.gamma, theta_dot, omega);
        // quasi-static coherence implied by the law
        s.b = std::numbers::sqrt2 / 4.0 * theta_dot / omega * (1.0 - 3.0 * s.rho_dd);
        s.a = -2.0 * cfg.gamma * s.b / omega;
        DensityMatrix3 rho = reduced_to_adiabatic(s);
        traj.times.push_back(t);
        traj.trace_err.push_back(rho.trace_error());
        traj.purity.push_back(purity(rho));
        traj.cert.min_eigenvalue = std::min(traj.cert.min_eigenvalue, eig_hermitian3(rho.m)[0]);
        traj.states.push_back(std::move(rho));
    }
    return traj;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << text;
}

std::string timeseries_csv(const Trajectory& traj, const Protocol& protocol, bool full_dump) {
    std::string text = "# t,p1,p2,p3,p_plus,p_d,p_minus,trace_err,purity";
    if (full_dump) {
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                text += ",re" + std::to_string(i) + std::to_string(j);
                text += ",im" + std::to_string(i) + std::to_string(j);
            }
    }
    text += "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix3 bare = state_in_bare(traj, i, protocol);
        const DensityMatrix3 adia = state_in_adiabatic(traj, i, protocol);
        text += fmt17(traj.times[i]);
        for (int d = 0; d < 3; ++d) text += "," + fmt17(bare.m(d, d).real());
        for (int d = 0; d < 3; ++d) text += "," + fmt17(adia.m(d, d).real());
        text += "," + fmt17(traj.trace_err[i]);
        text += "," + fmt17(traj.purity[i]);
        if (full_dump) {
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    text += "," + fmt17(bare.m(r, c).real());
                    text += "," + fmt17(bare.m(r, c).imag());
                }
        }
        text += "\n";
    }
    return text;
}

json cert_to_json(const Certification& c) {
    json j;
    j["max_trace_err"] = c.max_trace_err;
    j["max_herm_defect"] = c.max_herm_defect;
    j["min_eigenvalue"] = c.min_eigenvalue;
    j["max_leakage"] = c.max_leakage;
    j["dt_used"] = c.dt_used;
    j["steps"] = c.steps;
    return j;
}

} // namespace

double final_rho33(const Trajectory& traj, const Protocol& protocol) {
    return state_in_bare(traj, traj.states.size() - 1, protocol).m(2, 2).real();
}

double final_rho_dd(const Trajectory& traj, const Protocol& protocol) {
    return state_in_adiabatic(traj, traj.states.size() - 1, protocol).m(1, 1).real();
}

std::vector<double> rho_dd_series(const Trajectory& traj, const Protocol& protocol) {
    std::vector<double> out;
    out.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out.push_back(state_in_adiabatic(traj, i, protocol).m(1, 1).real());
    return out;
}

std::vector<std::array<double, 3>> bare_populations(const Trajectory& traj, const Protocol& protocol) {
    std::vector<std::array<double, 3>> out;
    out.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix3 bare = state_in_bare(traj, i, protocol);
        out.push_back({bare.m(0, 0).real(), bare.m(1, 1).real(), bare.m(2, 2).real()});
    }
    return out;
}

Trajectory run_engine(Engine engine, const SimConfig& cfg) {
    switch (engine) {
    case Engine::Bare: return evolve_bare(cfg);
    case Engine::Full8: return evolve_full8(cfg);
    case Engine::Adiabatic: return evolve_adiabatic(cfg);
    case Engine::Reduced: return reduced_as_trajectory(evolve_reduced(cfg));
    case Engine::Analytic: return analytic_trajectory(cfg);
    case Engine::Classical:
        throw ContractViolation("run_engine: the classical reference has no trajectory");
    }
    throw ContractViolation("run_engine: unknown engine");
}

double trajectory_distance(const Trajectory& a, const Trajectory& b, const Protocol& protocol) {
    if (a.times.size() != b.times.size())
        throw ContractViolation("trajectory_distance: sample grids differ");
    double dist = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        if (std::abs(a.times[i] - b.times[i]) > 1e-9)
            throw ContractViolation("trajectory_distance: sample times differ");
        dist = std::max(dist, max_abs_diff(state_in_bare(a, i, protocol).m,
                                           state_in_bare(b, i, protocol).m));
    }
    return dist;
}

std::string config_tag(const SimConfig& cfg) {
    const Protocol& p = cfg.protocol;
    std::string tag = p.kind == ProtocolKind::LinearSine ? "sine" : "gauss";
    tag += "_gamma" + fmt_tag(cfg.gamma);
    tag += "_omega" + fmt_tag(p.omega0);
    tag += "_t0" + fmt_tag(p.t0);
    if (p.kind == ProtocolKind::Gaussian) tag += "_tau" + fmt_tag(p.tau);
    return tag;
}

RunRecord run_single(const RunConfig& cfg, const std::string& out_dir, bool full_dump) {
    cfg.sim.validate();
    if (cfg.engines.empty()) throw ConfigError("run: no engines requested");

    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    RunRecord record;
    record.config = cfg;
    const auto margins = adiabatic_margins(cfg.sim);
    record.margin1 = margins.first;
    record.margin2 = margins.second;

    const std::string tag = config_tag(cfg.sim);

    Trajectory bare_traj, full8_traj, adiabatic_traj;
    bool have_bare = false, have_full8 = false, have_adiabatic = false;

    for (Engine engine : cfg.engines) {
        EngineResult result;
        result.engine = engine;
        const auto start = std::chrono::steady_clock::now();
        if (engine == Engine::Classical) {
            // gamma13 = 0 in this model: the reference predicts complete
            // transfer no matter the dephasing strength.
            result.rho33_final = classical_reference(0.0, cfg.sim.protocol);
            result.rho_dd_final = result.rho33_final;
        } else {
            Trajectory traj = run_engine(engine, cfg.sim);
            result.rho33_final = final_rho33(traj, cfg.sim.protocol);
            result.rho_dd_final = final_rho_dd(traj, cfg.sim.protocol);
            result.cert = traj.cert;
            if (!out_dir.empty()) {
                const std::string path =
                    out_dir + "/ts_" + std::string(engine_name(engine)) + "_" + tag + ".csv";
                write_file(path, timeseries_csv(traj, cfg.sim.protocol, full_dump));
            }
            if (engine == Engine::Bare) { bare_traj = std::move(traj); have_bare = true; }
            else if (engine == Engine::Full8) { full8_traj = std::move(traj); have_full8 = true; }
            else if (engine == Engine::Adiabatic) { adiabatic_traj = std::move(traj); have_adiabatic = true; }
        }
        result.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        record.results.push_back(result);
    }

    if (have_bare && have_full8)
        record.bare_full8_distance = trajectory_distance(bare_traj, full8_traj, cfg.sim.protocol);
    if (have_bare && have_adiabatic)
        record.bare_adiabatic_distance =
            trajectory_distance(bare_traj, adiabatic_traj, cfg.sim.protocol);

    if (!out_dir.empty()) {
        json j;
        j["config"] = json::parse(serialize_config(cfg));
        j["margins"] = {{"margin1", record.margin1}, {"margin2", record.margin2}};
        json engines = json::array();
        for (const EngineResult& r : record.results) {
            json e;
            e["engine"] = engine_name(r.engine);
            e["rho33_final"] = r.rho33_final;
            e["rho_dd_final"] = r.rho_dd_final;
            if (r.engine != Engine::Classical) e["certification"] = cert_to_json(r.cert);
            e["wall_seconds"] = r.wall_seconds;
            engines.push_back(e);
        }
        j["engines"] = engines;
        if (record.bare_full8_distance) j["bare_full8_distance"] = *record.bare_full8_distance;
        if (record.bare_adiabatic_distance)
            j["bare_adiabatic_distance"] = *record.bare_adiabatic_distance;
        write_file(out_dir + "/record_" + tag + ".json", j.dump(2) + "\n");
    }
    return record;
}

std::string run_sweep(const RunConfig& cfg, const std::string& out_dir, int workers) {
    cfg.sim.validate();
    if (!cfg.sweep) throw ConfigError("sweep: config has no sweep section");
    const SweepSection& sweep = *cfg.sweep;

    struct Row {
        double axis_value;
        Engine engine;
        double rho33, rho_dd, margin1, margin2, dt_used;
    };
    std::vector<std::vector<Row>> per_point(sweep.values.size());

    parallel_for(sweep.values.size(), workers, [&](std::size_t i) {
        const SimConfig point = apply_axis(cfg.sim, sweep.axis, sweep.values[i]);
        RunConfig point_cfg;
        point_cfg.sim = point;
        point_cfg.engines = cfg.engines;
        const RunRecord record = run_single(point_cfg, "");
        for (const EngineResult& r : record.results)
            per_point[i].push_back({sweep.values[i], r.engine, r.rho33_final, r.rho_dd_final,
                                    record.margin1, record.margin2, point.dt_effective()});
    });

    std::string text = "# axis_value,engine,rho33_final,rho_dd_final,margin1,margin2,dt_used\n";
    for (const auto& rows : per_point)
        for (const Row& r : rows) {
            text += fmt17(r.axis_value);
            text += ",";
            text += engine_name(r.engine);
            text += "," + fmt17(r.rho33) + "," + fmt17(r.rho_dd);
            text += "," + fmt17(r.margin1) + "," + fmt17(r.margin2) + "," + fmt17(r.dt_used);
            text += "\n";
        }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/sweep_" + sweep.axis + ".csv", text);
    }
    return text;
}

namespace {

std::string drive_csv(const Protocol& p, int samples) {
    std::string text = "# t,omega_p,omega_s\n";
    for (int i = 0; i <= samples; ++i) {
        const double t = p.t0 * i / samples;
        const DriveSample s = sample(p, t);
        text += fmt17(t) + "," + fmt17(s.omega_p) + "," + fmt17(s.omega_s) + "\n";
    }
    return text;
}

} // namespace

void reproduce_figures(const std::string& out_dir, const ReproduceGrids& grids, int workers) {
    const std::string sine_dir = out_dir + "/sinusoidal";
    const std::string gauss_dir = out_dir + "/gaussian";
    std::filesystem::create_directories(sine_dir);
    std::filesystem::create_directories(gauss_dir);

    // Sinusoidal bundle: drive waveform plus exact/analytic dark-state time
    // series over the three caption grids (defaults gamma=2, omega0=2, t0=40).
    write_file(sine_dir + "/drive.csv", drive_csv(Protocol::linear_sine(2.0, 40.0), 2000));

    std::vector<SimConfig> sine_runs;
    std::set<std::string> seen;
    const auto add_sine = [&](double gamma, double omega0, double t0) {
        SimConfig cfg;
        cfg.protocol = Protocol::linear_sine(omega0, t0);
        cfg.gamma = gamma;
        if (seen.insert(config_tag(cfg)).second) sine_runs.push_back(cfg);
    };
    for (double g : {0.0, 2.0, 4.0}) add_sine(g, 2.0, 40.0);
    for (double w : {2.0, 4.0, 6.0}) add_sine(2.0, w, 40.0);
    for (double t : {40.0, 120.0, 200.0}) add_sine(2.0, 2.0, t);

    parallel_for(sine_runs.size(), workers, [&](std::size_t i) {
        RunConfig cfg;
        cfg.sim = sine_runs[i];
        cfg.engines = {Engine::Adiabatic, Engine::Analytic};
        run_single(cfg, sine_dir);
    });

    // Gaussian bundle: final-population sweeps over the configured grids and
    // the three caption time series (defaults tau=1, gamma=2, omega0=2, t0=16).
    const Protocol gauss_base = Protocol::gaussian(2.0, 2.0, 1.0);
    write_file(gauss_dir + "/drive.csv", drive_csv(gauss_base, 2000));

    for (const auto& [axis, values] :
         {std::pair{std::string("gamma"), grids.gamma}, {std::string("omega0"), grids.omega0},
          {std::string("t0"), grids.t0}}) {
        RunConfig cfg;
        cfg.sim.protocol = gauss_base;
        cfg.sim.gamma = 2.0;
        cfg.engines = {Engine::Adiabatic, Engine::Reduced};
        cfg.sweep = SweepSection{axis, values};
        run_sweep(cfg, gauss_dir, workers);
    }

    std::vector<SimConfig> gauss_runs;
    {
        SimConfig cfg;
        cfg.protocol = gauss_base;
        cfg.gamma = 1.0;
        gauss_runs.push_back(cfg);
        cfg.gamma = 2.0;
        cfg.protocol.omega0 = 8.0;
        gauss_runs.push_back(cfg);
        cfg.protocol = gauss_base.scaled_to(192.0);
        gauss_runs.push_back(cfg);
    }
    parallel_for(gauss_runs.size(), workers, [&](std::size_t i) {
        RunConfig cfg;
        cfg.sim = gauss_runs[i];
        cfg.engines = {Engine::Adiabatic, Engine::Reduced};
        run_single(cfg, gauss_dir);
    });
}

bool CheckReport::all_pass() const {
    for (const Item& item : items)
        if (!item.pass) return false;
    return true;
}

CheckReport check_invariants(const RunConfig& cfg) {
    cfg.sim.validate();
    CheckReport report;
    const auto add = [&](const std::string& name, bool pass, double value, double bound) {
        report.items.push_back({name, pass, value, bound});
    };
    const auto add_cert = [&](const std::string& engine, const Certification& c) {
        add(engine + " trace drift", c.max_trace_err <= kTraceTol, c.max_trace_err, kTraceTol);
        add(engine + " hermiticity defect", c.max_herm_defect <= 1e-10, c.max_herm_defect, 1e-10);
        add(engine + " min eigenvalue", c.min_eigenvalue >= -kPositivityTol, c.min_eigenvalue,
            -kPositivityTol);
    };

    const Trajectory bare = evolve_bare(cfg.sim);
    add_cert("bare", bare.cert);
    const Trajectory full8 = evolve_full8(cfg.sim);
    add_cert("full8", full8.cert);
    add("full8 sector leakage", full8.cert.max_leakage <= 1e-12, full8.cert.max_leakage, 1e-12);
    const Trajectory adiabatic = evolve_adiabatic(cfg.sim);
    add_cert("adiabatic", adiabatic.cert);

    const double oracle_dist = trajectory_distance(bare, full8, cfg.sim.protocol);
    add("bare vs full8 states", oracle_dist <= 1e-8, oracle_dist, 1e-8);
    const double frame_dist = trajectory_distance(bare, adiabatic, cfg.sim.protocol);
    add("bare vs adiabatic states", frame_dist <= 1e-6, frame_dist, 1e-6);

    const Trajectory reduced = reduced_as_trajectory(evolve_reduced(cfg.sim));
    const std::vector<double> dd_exact = rho_dd_series(adiabatic, cfg.sim.protocol);
    const std::vector<double> dd_red = rho_dd_series(reduced, cfg.sim.protocol);
    double dd_sup = 0.0;
    for (std::size_t i = 0; i < dd_exact.size() && i < dd_red.size(); ++i)
        dd_sup = std::max(dd_sup, std::abs(dd_exact[i] - dd_red[i]));
    add("reduced vs exact rho_dd (sup)", dd_sup <= 0.05, dd_sup, 0.05);

    if (cfg.sim.protocol.kind == ProtocolKind::LinearSine) {
        const double law = transfer_efficiency(cfg.sim.gamma, cfg.sim.protocol.omega0,
                                               cfg.sim.protocol.t0)
                               .rho33_final;
        const double exact = final_rho33(bare, cfg.sim.protocol);
        add("analytic vs exact final rho33", std::abs(law - exact) <= 0.05, std::abs(law - exact),
            0.05);
    }

    if (cfg.sim.gamma == 0.0) {
        double pmin = 1.0;
        for (double p : bare.purity) pmin = std::min(pmin, p);
        add("purity conservation at gamma=0", pmin >= 1.0 - 1e-8, pmin, 1.0 - 1e-8);
    }

    SimConfig halved = cfg.sim;
    halved.dt = cfg.sim.dt_effective() / 2.0;
    const double f0 = final_rho33(bare, cfg.sim.protocol);
    const double f1 = final_rho33(evolve_bare(halved), cfg.sim.protocol);
    add("step-halving final rho33 change", std::abs(f0 - f1) <= 1e-8, std::abs(f0 - f1), 1e-8);

    return report;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t pool_size = static_cast<std::size_t>(std::max(1, workers));
    pool_size = std::min(pool_size, n);
    if (pool_size == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    for (std::size_t w = 0; w < pool_size; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

int default_workers() {
    if (const char* env = std::getenv("STIRAP_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace stirap
