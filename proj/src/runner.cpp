#include "bathdisc/runner.hpp"
#include "bathdisc/errors.hpp"
#include "bathdisc/io.hpp"
#include "bathdisc/log.hpp"
#include "bathdisc/simsuite.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace bathdisc {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

std::string artifact_path(const std::string& prefix, const std::string& suffix) {
    return prefix + "_" + suffix;
}

void emit(RunResult& res, const std::string& path, const std::string& content) {
    write_text_file(path, content);
    res.artifacts.push_back(path);
    log_info("wrote " + path);
}

RunResult run_discretize(const RunConfig& cfg, const std::string& prefix) {
    RunResult res;
    const auto bath = discretize(*cfg.sd, *cfg.scheme, *cfg.L);
    emit(res, artifact_path(prefix, "bath.csv"), io::to_csv(bath).to_string());
    emit(res, artifact_path(prefix, "bath.json"), io::to_json(bath).dump(2) + "\n");
    return res;
}

RunResult run_chain(const RunConfig& cfg, const std::string& prefix) {
    RunResult res;
    const int q = *cfg.scheme == Scheme::BC ? 0 : 1;
    const auto cc = chain_coefficients(*cfg.sd, q, *cfg.L);
    emit(res, artifact_path(prefix, "chain.csv"), io::to_csv(cc).to_string());
    emit(res, artifact_path(prefix, "chain.json"), io::to_json(cc).dump(2) + "\n");
    return res;
}

RunResult run_bound(const RunConfig& cfg, const std::string& prefix, int threads) {
    RunResult res;
    std::vector<int> Ls = cfg.L_list;
    if (Ls.empty()) Ls.push_back(*cfg.L);
    const auto times = cfg.time_grid->points();
    const bool massless =
        cfg.bound_params->massless_override.value_or(cfg.sd->massless());

    std::vector<BoundCurvePoint> curve(Ls.size() * times.size());
    parallel_for(static_cast<int>(curve.size()), threads, [&](int idx) {
        const int li = idx / static_cast<int>(times.size());
        const int ti = idx % static_cast<int>(times.size());
        BoundCurvePoint p;
        p.t = times[ti];
        p.L = Ls[li];
        p.scheme = *cfg.scheme;
        p.massless = massless;
        p.value = bound_for(*cfg.sd, *cfg.scheme, *cfg.bound_params, p.t, p.L);
        curve[idx] = p;
    });
    emit(res, artifact_path(prefix, "bounds.csv"), io::to_csv(curve).to_string());
    return res;
}

RunResult run_plan(const RunConfig& cfg, const std::string& prefix) {
    RunResult res;
    PlanOptions opts;
    opts.L_max = cfg.plan->l_max;
    const int L = plan_modes(*cfg.sd, *cfg.scheme, cfg.plan->t_horizon, cfg.plan->epsilon,
                             *cfg.bound_params, opts);
    const double at_L = bound_for(*cfg.sd, *cfg.scheme, *cfg.bound_params, cfg.plan->t_horizon, L);
    CsvTable t;
    t.header = {"t_horizon", "epsilon", "scheme", "L", "bound_at_L"};
    t.rows.push_back({format_double(cfg.plan->t_horizon), format_double(cfg.plan->epsilon),
                      to_string(*cfg.scheme), std::to_string(L), format_double(at_L)});
    emit(res, artifact_path(prefix, "plan.csv"), t.to_string());
    res.stdout_text = std::to_string(L) + "\n";
    return res;
}

RunResult run_verify(const RunConfig& cfg, const std::string& prefix) {
    RunResult res;
    const auto& sim = *cfg.simulator;
    ModelOptions opts;
    opts.sb_alpha = sim.alpha;
    opts.fock_cutoff = sim.fock_cutoff;
    opts.n0 = sim.n0;
    opts.dimension_cap = sim.dimension_cap;
    if (sim.observable == "sigma_z")
        opts.observable << 1, 0, 0, -1;
    else
        opts.observable << 0, 1, 1, 0;
    const auto table =
        bound_vs_empirical(*cfg.sd, *cfg.scheme, sim.L, sim.L_ref, cfg.time_grid->points(), opts);
    emit(res, artifact_path(prefix, "verify.csv"), io::to_csv(table).to_string());
    int violations = 0;
    for (const auto& r : table.rows)
        if (r.violation) ++violations;
    res.stdout_text = "violations=" + std::to_string(violations) + "\n";
    return res;
}

RunResult run_compare(const RunConfig& cfg, const std::string& prefix, int threads) {
    RunResult res;
    const int L = *cfg.L;
    const auto bc = discretize(*cfg.sd, Scheme::BC, L);
    const auto s2 = discretize(*cfg.sd, Scheme::S2, L);

    CsvTable knots;
    knots.header = {"n", "bc_frequency", "bc_coupling", "s2_frequency", "s2_coupling"};
    for (int n = 0; n < L; ++n)
        knots.rows.push_back({std::to_string(n + 1), format_double(bc.frequencies[n]),
                              format_double(bc.couplings[n]), format_double(s2.frequencies[n]),
                              format_double(s2.couplings[n])});
    emit(res, artifact_path(prefix, "compare_knots.csv"), knots.to_string());

    const auto times = cfg.time_grid->points();
    std::vector<double> bc_vals(times.size()), s2_vals(times.size());
    parallel_for(static_cast<int>(times.size()), threads, [&](int i) {
        bc_vals[i] = bound_for(*cfg.sd, Scheme::BC, *cfg.bound_params, times[i], L);
        s2_vals[i] = bound_for(*cfg.sd, Scheme::S2, *cfg.bound_params, times[i], L);
    });
    CsvTable bounds;
    bounds.header = {"t", "L", "bound_bc", "bound_s2"};
    for (std::size_t i = 0; i < times.size(); ++i)
        bounds.rows.push_back({format_double(times[i]), std::to_string(L),
                               format_double(bc_vals[i]), format_double(s2_vals[i])});
    emit(res, artifact_path(prefix, "compare_bounds.csv"), bounds.to_string());

    if (cfg.plan) {
        PlanOptions popts;
        popts.L_max = cfg.plan->l_max;
        const int L_bc = plan_modes(*cfg.sd, Scheme::BC, cfg.plan->t_horizon, cfg.plan->epsilon,
                                    *cfg.bound_params, popts);
        const int L_s2 = plan_modes(*cfg.sd, Scheme::S2, cfg.plan->t_horizon, cfg.plan->epsilon,
                                    *cfg.bound_params, popts);
        CsvTable plan;
        plan.header = {"t_horizon", "epsilon", "L_bc", "L_s2"};
        plan.rows.push_back({format_double(cfg.plan->t_horizon), format_double(cfg.plan->epsilon),
                             std::to_string(L_bc), std::to_string(L_s2)});
        emit(res, artifact_path(prefix, "compare_plan.csv"), plan.to_string());
    }
    return res;
}

} // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
    const std::string prefix =
        opts.output_prefix.empty() ? cfg.output_prefix : opts.output_prefix;
    log_debug(std::string("running command ") + to_string(cfg.command) + " -> " + prefix);
    switch (cfg.command) {
        case Command::discretize: return run_discretize(cfg, prefix);
        case Command::chain: return run_chain(cfg, prefix);
        case Command::bound: return run_bound(cfg, prefix, opts.threads);
        case Command::plan: return run_plan(cfg, prefix);
        case Command::verify: return run_verify(cfg, prefix);
        case Command::compare: return run_compare(cfg, prefix, opts.threads);
    }
    throw ValidationError("invalid_config", "unknown command");
}

} // namespace bathdisc
