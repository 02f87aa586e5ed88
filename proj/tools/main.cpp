// Command line front end: single runs, parameter sweeps, the closed-form
// efficiency law, the invariant battery and the figure-data bundles.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stirap/config_io.hpp"
#include "stirap/reduced.hpp"
#include "stirap/run.hpp"

using namespace stirap;

namespace {

struct Overrides {
    std::optional<std::string> protocol;
    std::optional<double> omega0, t0, tau, t_width, gamma, delta, dt;
    std::optional<long> sample_stride;
    std::optional<std::string> engines;
    std::optional<std::string> axis;
    std::optional<std::string> values;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--protocol", o.protocol, "Protocol type: linear_sine or gaussian");
    cmd->add_option("--omega0", o.omega0, "Peak coupling strength");
    cmd->add_option("--t0", o.t0, "Window duration");
    cmd->add_option("--tau", o.tau, "Gaussian pulse delay");
    cmd->add_option("--t-width", o.t_width, "Gaussian pulse width");
    cmd->add_option("--gamma", o.gamma, "Dephasing strength");
    cmd->add_option("--delta", o.delta, "Level energy (8-dim oracle only)");
    cmd->add_option("--dt", o.dt, "Integrator step");
    cmd->add_option("--sample-stride", o.sample_stride, "Output decimation stride");
    cmd->add_option("--engines", o.engines, "Comma-separated engine list");
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "' in value list");
        }
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

std::string read_config_text(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig build_config(const std::string& config_path, const Overrides& o) {
    RunConfig cfg;
    if (!config_path.empty()) {
        cfg = parse_config(read_config_text(config_path));
    } else {
        // built purely from flags
        if (!o.protocol) throw ConfigError("either a config file or --protocol is required");
        cfg.sim.protocol.kind =
            *o.protocol == "gaussian" ? ProtocolKind::Gaussian : ProtocolKind::LinearSine;
        if (*o.protocol != "gaussian" && *o.protocol != "linear_sine")
            throw ConfigError("--protocol must be linear_sine or gaussian");
        cfg.engines = {Engine::Bare};
    }

    Protocol p = cfg.sim.protocol;
    if (o.protocol) {
        if (*o.protocol != "gaussian" && *o.protocol != "linear_sine")
            throw ConfigError("--protocol must be linear_sine or gaussian");
        p.kind = *o.protocol == "gaussian" ? ProtocolKind::Gaussian : ProtocolKind::LinearSine;
    }
    if (o.omega0) p.omega0 = *o.omega0;
    if (o.t0) p.t0 = *o.t0;
    if (o.tau) p.tau = *o.tau;
    if (o.t_width) p.t_width = *o.t_width;
    if (p.kind == ProtocolKind::Gaussian && p.t_width == 0.0) p.t_width = p.t0 / 8.0;
    if (p.kind == ProtocolKind::LinearSine) { p.tau = 0.0; p.t_width = 0.0; }
    p.validate();
    cfg.sim.protocol = p;

    if (o.gamma) cfg.sim.gamma = *o.gamma;
    if (o.delta) cfg.sim.delta = *o.delta;
    if (o.dt) cfg.sim.dt = *o.dt;
    if (o.sample_stride) cfg.sim.sample_stride = *o.sample_stride;
    if (o.engines) {
        cfg.engines.clear();
        std::stringstream ss(*o.engines);
        std::string item;
        std::vector<Engine> requested;
        while (std::getline(ss, item, ',')) requested.push_back(engine_from_name(item));
        for (Engine e : {Engine::Bare, Engine::Full8, Engine::Adiabatic, Engine::Reduced,
                         Engine::Analytic, Engine::Classical})
            for (Engine r : requested)
                if (r == e && (cfg.engines.empty() || cfg.engines.back() != e))
                    cfg.engines.push_back(e);
        if (cfg.engines.empty()) throw ConfigError("--engines: empty engine list");
    }
    if (o.axis || o.values) {
        if (!o.axis || !o.values) throw ConfigError("--axis and --values must be given together");
        cfg.sweep = SweepSection{*o.axis, parse_value_list(*o.values)};
    }

    // normalize and re-validate everything through the canonical path
    return parse_config(serialize_config(cfg));
}

int run_simulate(const std::string& config_path, const Overrides& o, const std::string& out_dir,
                 bool full) {
    const RunConfig cfg = build_config(config_path, o);
    const RunRecord record = run_single(cfg, out_dir, full);
    std::printf("# %s\n", config_tag(cfg.sim).c_str());
    std::printf("margin1 = %.6g, margin2 = %.6g\n", record.margin1, record.margin2);
    if (record.margin1 > 0.1 || record.margin2 > 0.1)
        std::fprintf(stderr, "advisory: an adiabaticity margin exceeds 0.1; "
                             "the transfer may be far from complete\n");
    for (const EngineResult& r : record.results)
        std::printf("%-10s rho33(T0) = %-12.8g rho_dd(T0) = %-12.8g [%.3f s]\n",
                    engine_name(r.engine), r.rho33_final, r.rho_dd_final, r.wall_seconds);
    if (record.bare_full8_distance)
        std::printf("bare vs full8 distance      = %.3g\n", *record.bare_full8_distance);
    if (record.bare_adiabatic_distance)
        std::printf("bare vs adiabatic distance  = %.3g\n", *record.bare_adiabatic_distance);
    std::printf("outputs written to %s\n", out_dir.c_str());
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const Overrides& o, const std::string& out_dir,
                  int workers) {
    const RunConfig cfg = build_config(config_path, o);
    if (!cfg.sweep) throw ConfigError("sweep: no sweep section in config and no --axis/--values");
    run_sweep(cfg, out_dir, workers);
    std::printf("sweep_%s.csv written to %s (%zu points x %zu engines)\n",
                cfg.sweep->axis.c_str(), out_dir.c_str(), cfg.sweep->values.size(),
                cfg.engines.size());
    return 0;
}

int run_efficiency(double gamma, double omega0, double t0) {
    const EfficiencyReport r = transfer_efficiency(gamma, omega0, t0);
    nlohmann::ordered_json j;
    j["rho33_final"] = r.rho33_final;
    j["chi"] = r.chi;
    j["exponent"] = r.exponent;
    j["adiabatic_margin_1"] = r.adiabatic_margin_1;
    j["adiabatic_margin_2"] = r.adiabatic_margin_2;
    std::printf("%s\n", j.dump(2).c_str());
    if (r.adiabatic_margin_1 > 0.1 || r.adiabatic_margin_2 > 0.1)
        std::fprintf(stderr, "advisory: an adiabaticity margin exceeds 0.1; "
                             "the closed-form law degrades in this regime\n");
    return 0;
}

int run_check(const std::string& config_path, const Overrides& o) {
    const RunConfig cfg = build_config(config_path, o);
    const CheckReport report = check_invariants(cfg);
    for (const auto& item : report.items)
        std::printf("[%s] %-34s value = %-12.4g bound = %.4g\n", item.pass ? " ok " : "FAIL",
                    item.name.c_str(), item.value, item.bound);
    if (!report.all_pass()) {
        std::fprintf(stderr, "check: at least one invariant failed\n");
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Population transfer between two spins through a dephasing intermediate spin"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    bool full_dump = false;
    int workers = default_workers();
    Overrides o;

    CLI::App* simulate = app.add_subcommand("simulate", "Run one configuration");
    simulate->add_option("config", config_path, "JSON config file ('-' for stdin)");
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_flag("--full", full_dump, "Dump the full complex state into the CSVs");
    add_override_flags(simulate, o);

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("config", config_path, "JSON config file ('-' for stdin)");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--workers", workers, "Worker pool size");
    add_override_flags(sweep, o);
    sweep->add_option("--axis", o.axis, "Sweep axis: gamma, omega0, t0 or tau");
    sweep->add_option("--values", o.values, "Comma-separated sweep values");

    double eff_gamma = 0.0, eff_omega0 = 0.0, eff_t0 = 0.0;
    CLI::App* efficiency =
        app.add_subcommand("efficiency", "Closed-form transfer efficiency (linear_sine)");
    efficiency->add_option("--gamma", eff_gamma, "Dephasing strength")->required();
    efficiency->add_option("--omega0", eff_omega0, "Coupling strength")->required();
    efficiency->add_option("--t0", eff_t0, "Window duration")->required();

    CLI::App* check = app.add_subcommand("check", "Run the invariant battery on a configuration");
    check->add_option("config", config_path, "JSON config file ('-' for stdin)");
    add_override_flags(check, o);

    CLI::App* reproduce = app.add_subcommand("reproduce", "Emit the figure-data CSV bundles");
    reproduce->add_option("--out", out_dir, "Output directory");
    reproduce->add_option("--workers", workers, "Worker pool size");
    std::string grid_gamma, grid_omega0, grid_t0;
    reproduce->add_option("--gamma-grid", grid_gamma, "Gaussian-bundle gamma grid");
    reproduce->add_option("--omega0-grid", grid_omega0, "Gaussian-bundle omega0 grid");
    reproduce->add_option("--t0-grid", grid_t0, "Gaussian-bundle t0 grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, o, out_dir, full_dump);
        if (sweep->parsed()) return run_sweep_cmd(config_path, o, out_dir, workers);
        if (efficiency->parsed()) return run_efficiency(eff_gamma, eff_omega0, eff_t0);
        if (check->parsed()) return run_check(config_path, o);
        if (reproduce->parsed()) {
            ReproduceGrids grids;
            if (!grid_gamma.empty()) grids.gamma = parse_value_list(grid_gamma);
            if (!grid_omega0.empty()) grids.omega0 = parse_value_list(grid_omega0);
            if (!grid_t0.empty()) grids.t0 = parse_value_list(grid_t0);
            reproduce_figures(out_dir, grids, workers);
            std::printf("figure bundles written to %s/sinusoidal and %s/gaussian\n",
                        out_dir.c_str(), out_dir.c_str());
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 1;
    } catch (const NumericFailure& e) {
        std::fprintf(stderr, "numeric certification failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
