#include "bathdisc/config.hpp"
#include "bathdisc/errors.hpp"
#include "bathdisc/log.hpp"
#include "bathdisc/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Gauss-quadrature bath discretisation, dynamical error bounds and desk-scale verification"};

    std::string config_path;
    std::string out_prefix;
    int threads = 0;
    std::uint64_t seed = 0;

    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_prefix, "output path prefix (overrides config)");
    app.add_option("--threads", threads, "worker threads for grid sweeps (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed,
                   "reserved; the pipeline is deterministic and seed-free");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = bathdisc::RunConfig::from_file(config_path);
        bathdisc::RunOptions opts;
        opts.output_prefix = out_prefix;
        opts.threads = threads;
        const auto result = bathdisc::run(cfg, opts);
        std::cout << result.stdout_text;
        return 0;
    } catch (const bathdisc::ValidationError& e) {
        bathdisc::log_error(std::string(e.code()) + ": " + e.what());
        return 1;
    } catch (const bathdisc::NumericalError& e) {
        bathdisc::log_error(std::string(e.code()) + ": " + e.what());
        return 2;
    } catch (const std::exception& e) {
        bathdisc::log_error(std::string("unexpected: ") + e.what());
        return 2;
    }
}
