#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stirap/config_io.hpp"
#include "stirap/trajectory.hpp"

namespace stirap {

/// Final target-level population, read in the bare frame.
double final_rho33(const Trajectory& traj, const Protocol& protocol);

/// Final dark-state population, read in the dressed frame.
double final_rho_dd(const Trajectory& traj, const Protocol& protocol);

/// Dark-state population at every recorded sample.
std::vector<double> rho_dd_series(const Trajectory& traj, const Protocol& protocol);

/// Bare-level populations (p1, p2, p3) at every recorded sample.
std::vector<std::array<double, 3>> bare_populations(const Trajectory& traj, const Protocol& protocol);

/// Runs one engine on one config and returns its trajectory. The reduced and
/// analytic engines are converted to dressed-frame trajectories on the same
/// time grid; the classical engine has no trajectory and is handled by the
/// record layer directly.
Trajectory run_engine(Engine engine, const SimConfig& cfg);

/// Largest entrywise state difference over the common recorded samples.
/// Trajectories in different frames are rotated to the bare frame first.
double trajectory_distance(const Trajectory& a, const Trajectory& b, const Protocol& protocol);

struct EngineResult {
    Engine engine = Engine::Bare;
    double rho33_final = 0.0;
    double rho_dd_final = 0.0;
    Certification cert;
    double wall_seconds = 0.0;
};

struct RunRecord {
    RunConfig config;
    double margin1 = 0.0;
    double margin2 = 0.0;
    std::vector<EngineResult> results;
    std::optional<double> bare_full8_distance;
    std::optional<double> bare_adiabatic_distance;
};

/// Deterministic filename tag for one config, e.g. "sine_gamma2_omega2_t040".
std::string config_tag(const SimConfig& cfg);

/// Runs every requested engine, writes one time-series CSV per engine plus a
/// record JSON under out_dir, and returns the record. With full_dump the CSVs
/// carry the complete complex state (9 entries as re/im columns) after the
/// population columns. Pass an empty out_dir to skip all file output.
RunRecord run_single(const RunConfig& cfg, const std::string& out_dir, bool full_dump = false);

/// Runs the sweep described by cfg.sweep on a bounded worker pool and writes
/// sweep_<axis>.csv under out_dir. Rows are ordered by (value, engine)
/// regardless of worker count. Returns the CSV text.
std::string run_sweep(const RunConfig& cfg, const std::string& out_dir, int workers);

/// Default grids for the Gaussian sweep bundle; the caption of the source
/// figures does not pin them, so they are plain configuration.
struct ReproduceGrids {
    std::vector<double> gamma{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    std::vector<double> omega0{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    std::vector<double> t0{16.0, 48.0, 80.0, 112.0, 144.0, 176.0, 192.0};
};

/// Emits the two figure-data bundles (out_dir/sinusoidal, out_dir/gaussian):
/// drive waveforms, dark-state time series for the caption parameter sets and
/// final-population sweeps, everything CSV.
void reproduce_figures(const std::string& out_dir, const ReproduceGrids& grids, int workers);

struct CheckReport {
    struct Item {
        std::string name;
        bool pass = false;
        double value = 0.0;
        double bound = 0.0;
    };
    std::vector<Item> items;
    bool all_pass() const;
};

/// Cross-engine invariant battery for one config: certification bounds,
/// oracle and frame equivalence, the model ladder, and step-halving.
CheckReport check_invariants(const RunConfig& cfg);

/// Runs fn(0..n-1) on up to `workers` threads; any exception is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// Worker-pool size: the STIRAP_WORKERS environment variable if set, else
/// the hardware concurrency.
int default_workers();

} // namespace stirap
