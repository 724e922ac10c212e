#include "bathdisc/config.hpp"
#include "bathdisc/csv.hpp"
#include "bathdisc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace bathdisc {

const char* to_string(Command c) {
    switch (c) {
        case Command::discretize: return "discretize";
        case Command::chain: return "chain";
        case Command::bound: return "bound";
        case Command::plan: return "plan";
        case Command::verify: return "verify";
        case Command::compare: return "compare";
    }
    return "?";
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = t_start;
        return out;
    }
    const double h = (t_end - t_start) / (steps - 1);
    for (int i = 0; i < steps; ++i) out[i] = t_start + i * h;
    return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ValidationError("invalid_config", "config " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("unknown_field",
                                  "unknown field '" + path + "." + it.key() + "'");
}

double get_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required field");
    if (!obj[key].is_number()) fail(path + "." + key, "must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required field");
    if (!obj[key].is_number_integer()) fail(path + "." + key, "must be an integer");
    return obj[key].get<int>();
}

Scheme parse_scheme(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "must be \"BC\" or \"S2\"");
    const std::string s = v.get<std::string>();
    if (s == "BC") return Scheme::BC;
    if (s == "S2") return Scheme::S2;
    fail(path, "must be \"BC\" or \"S2\"");
}

TimeGrid parse_time_grid(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    check_keys(v, path, {"t_start", "t_end", "steps"});
    TimeGrid g;
    g.t_start = get_number(v, path, "t_start");
    g.t_end = get_number(v, path, "t_end");
    g.steps = get_int(v, path, "steps");
    if (g.t_start < 0.0) fail(path + ".t_start", "must be >= 0");
    if (g.t_end < g.t_start) fail(path + ".t_end", "must be >= t_start");
    if (g.steps < 1) fail(path + ".steps", "must be >= 1");
    return g;
}

BoundParams parse_bound_inputs(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    check_keys(v, path, {"norm_O", "norm_A", "gamma_norm", "massless_override"});
    BoundParams p;
    p.norm_O = get_number(v, path, "norm_O");
    p.norm_A = get_number(v, path, "norm_A");
    p.gamma_norm = get_number(v, path, "gamma_norm");
    if (v.contains("massless_override")) {
        if (!v["massless_override"].is_boolean()) fail(path + ".massless_override", "must be a boolean");
        p.massless_override = v["massless_override"].get<bool>();
    }
    if (!(p.norm_O > 0.0)) fail(path + ".norm_O", "must be > 0");
    if (!(p.norm_A > 0.0)) fail(path + ".norm_A", "must be > 0");
    if (!(p.gamma_norm >= 0.0)) fail(path + ".gamma_norm", "must be >= 0");
    return p;
}

PlanConfig parse_plan(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    check_keys(v, path, {"epsilon", "t_horizon", "l_max"});
    PlanConfig p;
    p.epsilon = get_number(v, path, "epsilon");
    p.t_horizon = get_number(v, path, "t_horizon");
    if (v.contains("l_max")) p.l_max = get_int(v, path, "l_max");
    if (!(p.epsilon > 0.0)) fail(path + ".epsilon", "must be > 0");
    if (!(p.t_horizon >= 0.0)) fail(path + ".t_horizon", "must be >= 0");
    if (p.l_max < 1) fail(path + ".l_max", "must be >= 1");
    return p;
}

SimulatorConfig parse_simulator(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    check_keys(v, path,
               {"model", "alpha", "observable", "fock_cutoff", "n0", "L", "L_ref", "dimension_cap"});
    SimulatorConfig s;
    if (v.contains("model")) {
        if (!v["model"].is_string()) fail(path + ".model", "must be a string");
        s.model = v["model"].get<std::string>();
    }
    if (s.model != "spin_boson") fail(path + ".model", "only \"spin_boson\" is supported");
    s.alpha = get_number(v, path, "alpha");
    if (v.contains("observable")) {
        if (!v["observable"].is_string()) fail(path + ".observable", "must be a string");
        s.observable = v["observable"].get<std::string>();
    }
    if (s.observable != "sigma_z" && s.observable != "sigma_x")
        fail(path + ".observable", "must be \"sigma_z\" or \"sigma_x\"");
    s.fock_cutoff = get_int(v, path, "fock_cutoff");
    if (v.contains("n0")) s.n0 = get_int(v, path, "n0");
    s.L = get_int(v, path, "L");
    s.L_ref = get_int(v, path, "L_ref");
    if (v.contains("dimension_cap")) s.dimension_cap = get_int(v, path, "dimension_cap");
    if (s.fock_cutoff < 1) fail(path + ".fock_cutoff", "must be >= 1");
    if (s.n0 < 0) fail(path + ".n0", "must be >= 0");
    if (s.L < 1) fail(path + ".L", "must be >= 1");
    if (s.L_ref < s.L) fail(path + ".L_ref", "must be >= L");
    if (s.dimension_cap < 2) fail(path + ".dimension_cap", "must be >= 2");
    return s;
}

} // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail("$", "must be a JSON object");

    static const std::set<std::string> known = {
        "version",   "command", "spectral_density", "scheme", "L",
        "L_list",    "time_grid", "bound_inputs",   "plan",   "simulator",
        "output_prefix"};
    check_keys(j, "$", known);

    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != 1)
        fail("$.version", "must be the integer 1");
    if (!j.contains("command") || !j["command"].is_string())
        fail("$.command", "missing or not a string");

    RunConfig cfg;
    const std::string cmd = j["command"].get<std::string>();
    if (cmd == "discretize") cfg.command = Command::discretize;
    else if (cmd == "chain") cfg.command = Command::chain;
    else if (cmd == "bound") cfg.command = Command::bound;
    else if (cmd == "plan") cfg.command = Command::plan;
    else if (cmd == "verify") cfg.command = Command::verify;
    else if (cmd == "compare") cfg.command = Command::compare;
    else fail("$.command", "unknown command '" + cmd + "'");

    // fields each command accepts (beyond version/command/spectral_density/output_prefix)
    std::set<std::string> allowed = {"version", "command", "spectral_density", "output_prefix"};
    switch (cfg.command) {
        case Command::discretize:
        case Command::chain:
            allowed.insert({"scheme", "L"});
            break;
        case Command::bound:
            allowed.insert({"scheme", "L", "L_list", "time_grid", "bound_inputs"});
            break;
        case Command::plan:
            allowed.insert({"scheme", "bound_inputs", "plan"});
            break;
        case Command::verify:
            allowed.insert({"scheme", "time_grid", "simulator"});
            break;
        case Command::compare:
            allowed.insert({"L", "time_grid", "bound_inputs", "plan"});
            break;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("unknown_field", "field '$." + it.key() +
                                                       "' is not accepted by command '" + cmd + "'");

    if (!j.contains("spectral_density")) fail("$.spectral_density", "missing required field");
    cfg.sd = SpectralDensity::from_json(j["spectral_density"]);

    if (j.contains("scheme")) cfg.scheme = parse_scheme(j["scheme"], "$.scheme");
    if (j.contains("L")) {
        if (!j["L"].is_number_integer()) fail("$.L", "must be an integer");
        cfg.L = j["L"].get<int>();
        if (*cfg.L < 1) fail("$.L", "must be >= 1");
    }
    if (j.contains("L_list")) {
        if (!j["L_list"].is_array()) fail("$.L_list", "must be an array of integers");
        for (const auto& e : j["L_list"]) {
            if (!e.is_number_integer()) fail("$.L_list", "must contain integers only");
            const int L = e.get<int>();
            if (L < 1) fail("$.L_list", "entries must be >= 1");
            cfg.L_list.push_back(L);
        }
        if (cfg.L_list.empty()) fail("$.L_list", "must not be empty");
    }
    if (j.contains("time_grid")) cfg.time_grid = parse_time_grid(j["time_grid"], "$.time_grid");
    if (j.contains("bound_inputs"))
        cfg.bound_params = parse_bound_inputs(j["bound_inputs"], "$.bound_inputs");
    if (j.contains("plan")) cfg.plan = parse_plan(j["plan"], "$.plan");
    if (j.contains("simulator")) cfg.simulator = parse_simulator(j["simulator"], "$.simulator");
    if (j.contains("output_prefix")) {
        if (!j["output_prefix"].is_string()) fail("$.output_prefix", "must be a string");
        cfg.output_prefix = j["output_prefix"].get<std::string>();
    }

    // per-command required fields
    auto require = [&](bool present, const char* what) {
        if (!present) fail(std::string("$.") + what,
                           std::string("required by command '") + cmd + "'");
    };
    switch (cfg.command) {
        case Command::discretize:
        case Command::chain:
            require(cfg.scheme.has_value(), "scheme");
            require(cfg.L.has_value(), "L");
            break;
        case Command::bound:
            require(cfg.scheme.has_value(), "scheme");
            require(cfg.L.has_value() || !cfg.L_list.empty(), "L");
            require(cfg.time_grid.has_value(), "time_grid");
            require(cfg.bound_params.has_value(), "bound_inputs");
            break;
        case Command::plan:
            require(cfg.scheme.has_value(), "scheme");
            require(cfg.bound_params.has_value(), "bound_inputs");
            require(cfg.plan.has_value(), "plan");
            break;
        case Command::verify:
            require(cfg.scheme.has_value(), "scheme");
            require(cfg.time_grid.has_value(), "time_grid");
            require(cfg.simulator.has_value(), "simulator");
            break;
        case Command::compare:
            require(cfg.L.has_value(), "L");
            require(cfg.time_grid.has_value(), "time_grid");
            require(cfg.bound_params.has_value(), "bound_inputs");
            break;
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("invalid_config", std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

} // namespace bathdisc
