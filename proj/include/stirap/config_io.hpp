#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stirap/sim_config.hpp"

namespace stirap {

enum class Engine { Bare, Full8, Adiabatic, Reduced, Analytic, Classical };

const char* engine_name(Engine e);
Engine engine_from_name(const std::string& name); // throws ConfigError

/// One sweep axis with its values.
struct SweepSection {
    std::string axis; // gamma | omega0 | t0 | tau
    std::vector<double> values;
};

/// Full run description as read from a JSON config file.
struct RunConfig {
    SimConfig sim;
    std::vector<Engine> engines; // canonical order, no duplicates
    std::optional<SweepSection> sweep;
};

/// Parses the JSON schema
///   {protocol: {type, omega0, t0, tau?, t_width?}, gamma, delta?,
///    integrator: {dt?, sample_stride?}, engines: [...], sweep?: {axis, values}}
/// Unknown keys anywhere are a hard error, as are duplicate engines, a
/// non-increasing sweep value list, the analytic engine with a Gaussian
/// protocol, or a tau axis with a LinearSine protocol.
RunConfig parse_config(const std::string& json_text);

/// Canonical JSON form; parse(serialize(parse(x))) == parse(x).
std::string serialize_config(const RunConfig& cfg);

/// Applies one sweep-axis value to a base config. Axis t0 rescales the whole
/// protocol window (pure dilation, see Protocol::scaled_to).
SimConfig apply_axis(const SimConfig& base, const std::string& axis, double value);

} // namespace stirap
