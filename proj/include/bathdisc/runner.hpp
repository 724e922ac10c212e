#ifndef BATHDISC_RUNNER_HPP
#define BATHDISC_RUNNER_HPP

#include "bathdisc/config.hpp"

#include <string>
#include <vector>

namespace bathdisc {

struct RunOptions {
    std::string output_prefix; // overrides config when nonempty
    int threads = 0;           // 0 = auto
};

struct RunResult {
    std::vector<std::string> artifacts; // files written, in order
    std::string stdout_text;            // printed by the CLI after a run
};

// Dispatch a validated config. Pure function of (config, options): identical
// inputs produce byte-identical artifacts regardless of thread count.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});

// Deterministic helper: evaluates fn(i) for i in [0, n) on `threads` workers,
// results landing in index order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace bathdisc

#endif
