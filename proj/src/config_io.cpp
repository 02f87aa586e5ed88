#include "stirap/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace stirap {

using json = nlohmann::ordered_json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("config: missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_number()) throw ConfigError("config: '" + std::string(key) + "' must be a number");
    return obj[key].get<double>();
}

Protocol parse_protocol(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config: 'protocol' must be an object");
    reject_unknown_keys(obj, {"type", "omega0", "t0", "tau", "t_width"}, "protocol");
    if (!obj.contains("type") || !obj["type"].is_string())
        throw ConfigError("config: protocol.type must be a string");
    const std::string type = obj["type"].get<std::string>();
    const double omega0 = require_number(obj, "omega0", "protocol");
    const double t0 = require_number(obj, "t0", "protocol");

    if (type == "linear_sine") {
        if (obj.contains("tau") || obj.contains("t_width"))
            throw ConfigError("config: tau/t_width apply to the gaussian protocol only");
        return Protocol::linear_sine(omega0, t0);
    }
    if (type == "gaussian") {
        const double tau = require_number(obj, "tau", "protocol");
        double t_width = t0 / 8.0;
        if (obj.contains("t_width")) {
            t_width = require_number(obj, "t_width", "protocol");
            if (std::abs(t0 - 8.0 * t_width) > 1e-12 * std::max(1.0, t0))
                throw ConfigError("config: gaussian protocol requires t0 = 8 * t_width "
                                  "(use Protocol::gaussian_custom_window to decouple them)");
        }
        return Protocol::gaussian_custom_window(omega0, t_width, tau, t0);
    }
    throw ConfigError("config: protocol.type must be 'linear_sine' or 'gaussian'");
}

} // namespace

const char* engine_name(Engine e) {
    switch (e) {
    case Engine::Bare: return "bare";
    case Engine::Full8: return "full8";
    case Engine::Adiabatic: return "adiabatic";
    case Engine::Reduced: return "reduced";
    case Engine::Analytic: return "analytic";
    case Engine::Classical: return "classical";
    }
    return "?";
}

Engine engine_from_name(const std::string& name) {
    for (Engine e : {Engine::Bare, Engine::Full8, Engine::Adiabatic, Engine::Reduced,
                     Engine::Analytic, Engine::Classical})
        if (name == engine_name(e)) return e;
    throw ConfigError("config: unknown engine '" + name + "'");
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("config: invalid JSON: ") + ex.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(root, {"protocol", "gamma", "delta", "integrator", "engines", "sweep"},
                        "top level");

    RunConfig cfg;
    if (!root.contains("protocol")) throw ConfigError("config: missing 'protocol'");
    cfg.sim.protocol = parse_protocol(root["protocol"]);
    cfg.sim.gamma = require_number(root, "gamma", "top level");
    if (root.contains("delta")) cfg.sim.delta = require_number(root, "delta", "top level");

    if (root.contains("integrator")) {
        const json& integ = root["integrator"];
        if (!integ.is_object()) throw ConfigError("config: 'integrator' must be an object");
        reject_unknown_keys(integ, {"dt", "sample_stride"}, "integrator");
        if (integ.contains("dt")) cfg.sim.dt = require_number(integ, "dt", "integrator");
        if (integ.contains("sample_stride")) {
            if (!integ["sample_stride"].is_number_integer())
                throw ConfigError("config: sample_stride must be an integer");
            cfg.sim.sample_stride = integ["sample_stride"].get<long>();
            if (cfg.sim.sample_stride < 1) throw ConfigError("config: sample_stride must be >= 1");
        }
    }

    if (!root.contains("engines") || !root["engines"].is_array() || root["engines"].empty())
        throw ConfigError("config: 'engines' must be a non-empty array");
    std::set<Engine> seen;
    for (const auto& item : root["engines"]) {
        if (!item.is_string()) throw ConfigError("config: engine entries must be strings");
        const Engine e = engine_from_name(item.get<std::string>());
        if (!seen.insert(e).second)
            throw ConfigError(std::string("config: duplicate engine '") + engine_name(e) + "'");
    }
    // canonical order keeps record and CSV layouts deterministic
    for (Engine e : {Engine::Bare, Engine::Full8, Engine::Adiabatic, Engine::Reduced,
                     Engine::Analytic, Engine::Classical})
        if (seen.count(e)) cfg.engines.push_back(e);

    if (seen.count(Engine::Analytic) && cfg.sim.protocol.kind != ProtocolKind::LinearSine)
        throw ConfigError("config: the analytic engine applies to the linear_sine protocol only");

    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        if (!sw.is_object()) throw ConfigError("config: 'sweep' must be an object");
        reject_unknown_keys(sw, {"axis", "values"}, "sweep");
        SweepSection section;
        if (!sw.contains("axis") || !sw["axis"].is_string())
            throw ConfigError("config: sweep.axis must be a string");
        section.axis = sw["axis"].get<std::string>();
        if (section.axis != "gamma" && section.axis != "omega0" && section.axis != "t0" &&
            section.axis != "tau")
            throw ConfigError("config: sweep.axis must be one of gamma, omega0, t0, tau");
        if (!sw.contains("values") || !sw["values"].is_array() || sw["values"].empty())
            throw ConfigError("config: sweep.values must be a non-empty array");
        for (const auto& v : sw["values"]) {
            if (!v.is_number()) throw ConfigError("config: sweep values must be numbers");
            section.values.push_back(v.get<double>());
        }
        for (double v : section.values)
            if (!std::isfinite(v)) throw ConfigError("config: sweep values must be finite");
        for (std::size_t i = 1; i < section.values.size(); ++i)
            if (!(section.values[i] > section.values[i - 1]))
                throw ConfigError("config: sweep values must be strictly increasing");
        if (section.axis == "tau" && cfg.sim.protocol.kind != ProtocolKind::Gaussian)
            throw ConfigError("config: the tau axis applies to the gaussian protocol only");
        // the derived configs must themselves be valid
        for (double v : section.values) apply_axis(cfg.sim, section.axis, v);
        cfg.sweep = section;
    }

    cfg.sim.validate();
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    json proto;
    proto["type"] = cfg.sim.protocol.kind_name();
    proto["omega0"] = cfg.sim.protocol.omega0;
    proto["t0"] = cfg.sim.protocol.t0;
    if (cfg.sim.protocol.kind == ProtocolKind::Gaussian) {
        proto["tau"] = cfg.sim.protocol.tau;
        proto["t_width"] = cfg.sim.protocol.t_width;
    }
    root["protocol"] = proto;
    root["gamma"] = cfg.sim.gamma;
    if (cfg.sim.delta != 0.0) root["delta"] = cfg.sim.delta;
    if (cfg.sim.dt > 0.0 || cfg.sim.sample_stride >= 1) {
        json integ;
        if (cfg.sim.dt > 0.0) integ["dt"] = cfg.sim.dt;
        if (cfg.sim.sample_stride >= 1) integ["sample_stride"] = cfg.sim.sample_stride;
        root["integrator"] = integ;
    }
    json engines = json::array();
    for (Engine e : cfg.engines) engines.push_back(engine_name(e));
    root["engines"] = engines;
    if (cfg.sweep) {
        json sw;
        sw["axis"] = cfg.sweep->axis;
        sw["values"] = cfg.sweep->values;
        root["sweep"] = sw;
    }
    return root.dump(2);
}

SimConfig apply_axis(const SimConfig& base, const std::string& axis, double value) {
    SimConfig out = base;
    if (axis == "gamma") {
        out.gamma = value;
    } else if (axis == "omega0") {
        out.protocol.omega0 = value;
        out.protocol.validate();
    } else if (axis == "t0") {
        out.protocol = out.protocol.scaled_to(value);
    } else if (axis == "tau") {
        if (out.protocol.kind != ProtocolKind::Gaussian)
            throw ConfigError("config: the tau axis applies to the gaussian protocol only");
        out.protocol.tau = value;
        out.protocol.validate();
    } else {
        throw ConfigError("config: unknown sweep axis '" + axis + "'");
    }
    out.validate();
    return out;
}

} // namespace stirap
