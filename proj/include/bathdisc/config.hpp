#ifndef BATHDISC_CONFIG_HPP
#define BATHDISC_CONFIG_HPP

#include "bathdisc/bounds.hpp"
#include "bathdisc/measures.hpp"
#include "bathdisc/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bathdisc {

enum class Command { discretize, chain, bound, plan, verify, compare };

const char* to_string(Command c);

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int steps = 2;

    std::vector<double> points() const;
};

struct SimulatorConfig {
    std::string model = "spin_boson";
    double alpha = 0.5;
    std::string observable = "sigma_z";
    int fock_cutoff = 3;
    int n0 = 0;
    int L = 2;
    int L_ref = 5;
    int dimension_cap = 8192;
};

struct PlanConfig {
    double epsilon = 1e-6;
    double t_horizon = 1.0;
    int l_max = 10000;
};

// Parsed CLI run configuration. Parsing is strict: any unknown key anywhere
// fails validation with the offending path.
struct RunConfig {
    Command command = Command::discretize;
    std::optional<SpectralDensity> sd;
    std::optional<Scheme> scheme;
    std::optional<int> L;
    std::vector<int> L_list;
    std::optional<TimeGrid> time_grid;
    std::optional<BoundParams> bound_params;
    std::optional<PlanConfig> plan;
    std::optional<SimulatorConfig> simulator;
    std::string output_prefix = "out";

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
};

} // namespace bathdisc

#endif
