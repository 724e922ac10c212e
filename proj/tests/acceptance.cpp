// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include "bathdisc/bounds.hpp"
#include "bathdisc/csv.hpp"
#include "bathdisc/discretize.hpp"
#include "bathdisc/io.hpp"
#include "bathdisc/orthopoly.hpp"
#include "bathdisc/simsuite.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace bathdisc;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ACHECK(cond, msg)                                                  \
    do {                                                                   \
        if (!(cond)) {                                                     \
            std::ostringstream os_;                                        \
            os_ << msg;                                                    \
            throw Failure(os_.str());                                      \
        }                                                                  \
    } while (0)

SpectralDensity flat_pi() { return SpectralDensity::power_law(0.0, 0.5, 0.0, 1.0); }

struct NamedDensity {
    std::string name;
    SpectralDensity sd;
};

std::vector<NamedDensity> criterion_families() {
    return {
        {"flat", flat_pi()},
        {"power_law(s=-1/2)", SpectralDensity::power_law(-0.5, 1.0, 0.0, 1.0)},
        {"power_law(s=0)", SpectralDensity::power_law(0.0, 1.0, 0.0, 1.0)},
        {"power_law(s=1/2)", SpectralDensity::power_law(0.5, 1.0, 0.0, 1.0)},
        {"power_law(s=1)", SpectralDensity::power_law(1.0, 0.25, 0.0, 1.0)},
        {"semicircle", SpectralDensity::semicircle(1.0, 0.0, 2.0)},
        {"rubin", SpectralDensity::rubin(1.0, 0.0, 1.0)},
        {"gapped", SpectralDensity::gapped(SpectralDensity::semicircle(1.0, 0.0, 2.0), 0.8, 1.2)},
    };
}

std::string cli_path;
fs::path work_dir;

// 1. closed-form Chebyshev knots reproduced by the generic machinery
void criterion_closed_form_knots() {
    const auto semi = SpectralDensity::semicircle(1.0, 0.0, 2.0);
    const auto rc0 = recurrence_for(Measure(semi, 0), 50);
    for (int L = 1; L <= 50; ++L) {
        const auto rule = gauss_rule(rc0, L);
        for (int k = 1; k <= L; ++k) {
            // descending knot k corresponds to index L+1-k of the ascending form
            const double formula = -std::cos((L + 1 - k) * M_PI / (L + 1)) + 1.0;
            ACHECK(std::abs(rule.knots[k - 1] - formula) < 1e-12,
                   "semicircle knot mismatch at L=" << L << " k=" << k << ": "
                                                    << rule.knots[k - 1] << " vs " << formula);
        }
    }
    const auto rubin = SpectralDensity::rubin(1.0, 0.0, 1.0);
    const auto rc1 = recurrence_for(Measure(rubin, 1), 50);
    for (int L = 1; L <= 50; ++L) {
        const auto bath_knots = gauss_rule(rc1, L);
        for (int k = 1; k <= L; ++k) {
            const double freq = std::sqrt(std::max(0.0, bath_knots.knots[k - 1]));
            const double inner =
                0.5 * std::cos((L + 1 - k) * M_PI / (L + 1)) * (0.0 - 1.0) + 0.5;
            const double formula = std::sqrt(inner);
            ACHECK(std::abs(freq - formula) < 1e-12,
                   "rubin frequency mismatch at L=" << L << " k=" << k << ": " << freq << " vs "
                                                    << formula);
        }
    }
}

// 2. Gauss exactness against adaptively computed moments
void criterion_gauss_exactness() {
    for (const auto& fam : criterion_families()) {
        for (int q = 0; q <= 1; ++q) {
            const Measure m(fam.sd, q);
            const auto rc = recurrence_for(m, 20);
            std::vector<double> moments(40);
            for (int mm = 0; mm < 40; ++mm) moments[mm] = m.moment(mm);
            for (int L = 1; L <= 20; ++L) {
                const auto rule = gauss_rule(rc, L);
                for (int mm = 0; mm <= 2 * L - 1; ++mm) {
                    double s = 0.0;
                    for (int i = 0; i < L; ++i)
                        s += rule.weights[i] * std::pow(rule.knots[i], mm);
                    const double exact = moments[mm];
                    const double rel = std::abs(s - exact) / std::max(std::abs(exact), 1e-300);
                    ACHECK(rel < 1e-9, fam.name << " q=" << q << " L=" << L << " m=" << mm
                                                << ": relative error " << rel);
                }
            }
        }
    }
}

// 3. strict interlacing between consecutive rules
void criterion_interlacing() {
    for (const auto& fam : criterion_families()) {
        for (int q = 0; q <= 1; ++q) {
            const auto rc = recurrence_for(Measure(fam.sd, q), 101);
            auto prev = gauss_rule(rc, 1);
            for (int L = 1; L <= 100; ++L) {
                const auto next = gauss_rule(rc, L + 1);
                for (int i = 0; i < prev.L; ++i) {
                    ACHECK(next.knots[i] > prev.knots[i] && prev.knots[i] > next.knots[i + 1],
                           fam.name << " q=" << q << ": interlacing violated between L=" << L
                                    << " and L+1 at knot " << i);
                }
                prev = next;
            }
        }
    }
}

// 4. computed knots lie strictly inside their Buell brackets
void criterion_buell() {
    for (double s : {-0.4, 0.0, 0.4}) {
        for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{0.5, 2.0}}) {
            const auto sd = SpectralDensity::power_law(s, 1.0, lo, hi);
            const auto rc = recurrence_for(Measure(sd, 0), 40);
            for (int L = 1; L <= 40; ++L) {
                const auto rule = gauss_rule(rc, L);
                for (int k = 1; k <= L; ++k) {
                    const auto br = buell_bounds(Scheme::BC, s, lo, hi, L, k);
                    ACHECK(rule.knots[k - 1] > br.lower && rule.knots[k - 1] < br.upper,
                           "BC s=" << s << " [" << lo << "," << hi << "] L=" << L << " k=" << k
                                   << ": knot " << rule.knots[k - 1] << " outside ("
                                   << br.lower << ", " << br.upper << ")");
                }
            }
        }
    }
    for (double s : {-0.5, 0.5, 1.0}) {
        const auto sd = SpectralDensity::power_law(s, 1.0, 0.0, 1.0);
        const auto rc = recurrence_for(Measure(sd, 1), 40);
        for (int L = 1; L <= 40; ++L) {
            const auto rule = gauss_rule(rc, L);
            for (int k = 1; k <= L; ++k) {
                const double freq = std::sqrt(std::max(0.0, rule.knots[k - 1]));
                const auto br = buell_bounds(Scheme::S2, s, 0.0, 1.0, L, k);
                ACHECK(freq > br.lower && freq < br.upper,
                       "S2 s=" << s << " L=" << L << " k=" << k << ": frequency " << freq
                               << " outside (" << br.lower << ", " << br.upper << ")");
            }
        }
    }
}

// 5. chain -> star equals the direct discretisation
void criterion_chain_star() {
    for (const auto& fam : criterion_families()) {
        for (Scheme scheme : {Scheme::BC, Scheme::S2}) {
            const int q = scheme == Scheme::BC ? 0 : 1;
            const auto cc = chain_coefficients(fam.sd, q, 50);
            for (int L = 1; L <= 50; ++L) {
                const auto star = chain_to_star(cc, L);
                const auto direct = discretize(fam.sd, scheme, L);
                for (int n = 0; n < L; ++n) {
                    ACHECK(std::abs(star.frequencies[n] - direct.frequencies[n]) < 1e-9,
                           fam.name << " " << to_string(scheme) << " L=" << L
                                    << ": frequency mismatch at " << n);
                    ACHECK(std::abs(star.couplings[n] - direct.couplings[n]) < 1e-9,
                           fam.name << " " << to_string(scheme) << " L=" << L
                                    << ": coupling mismatch at " << n);
                }
            }
        }
    }
}

// 6. Appendix-value reproduction: gamma norms and the basis-change diagnostic
void criterion_gamma() {
    for (int n0 = 0; n0 <= 10; ++n0)
        ACHECK(gamma_norm_number_state(n0) == double(n0 + 1),
               "gamma_norm_number_state(" << n0 << ") != " << n0 + 1);
    for (int M : {1, 2, 8}) {
        for (int n0 : {0, 2, 7}) {
            const double norm = gamma_norm_from_blocks(number_state_blocks(n0, M));
            ACHECK(std::abs(norm - (n0 + 1.0)) < 1e-10,
                   "block norm at M=" << M << ", n0=" << n0 << " is " << norm);
        }
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int M : {2, 4, 8, 16}) {
        const double defect = gamma_basis_change(flat_pi(), M).symplectic_defect;
        ACHECK(defect <= prev + 1e-8,
               "symplectic defect increased at M=" << M << ": " << defect << " > " << prev);
        prev = defect;
    }
}

// 7. bound evaluator identities
void criterion_bounds() {
    BoundInputs in;
    in.norm_O = in.norm_A = in.omega_max = in.eta = in.gamma_norm = 1.0;

    in.t = 0.0;
    in.L = 3;
    ACHECK(bc_error_bound(in) == 0.0, "BC bound nonzero at t = 0");
    ACHECK(s2_error_bound(in) == 0.0, "S2 bound nonzero at t = 0");

    double prev1 = 0.0, prev2 = 0.0;
    for (int i = 1; i <= 64; ++i) {
        in.t = 2.0 * i / 64.0;
        const double b1 = bc_error_bound(in);
        in.massless = false;
        const double b2 = s2_error_bound(in);
        ACHECK(b1 > prev1 && b2 > prev2, "bound not strictly increasing at t = " << in.t);
        prev1 = b1;
        prev2 = b2;
    }

    for (int L = 1; L <= 20; ++L) {
        for (double t : {0.1, 0.5, 1.0, 2.5, 5.0}) {
            in.t = t;
            in.L = L;
            in.eta = 1.7;
            in.gamma_norm = 3.0;
            const double x = in.omega_max * t;
            const double d1 = std::sqrt(8.0 * in.eta * std::pow(x, L + 1) / std::tgamma(L + 2.0) *
                                        (std::exp(x) + 1.0) * (std::sqrt(3.0) + 1.7 * t));
            const double b1 = bc_error_bound(in);
            ACHECK(std::isfinite(d1) &&
                       std::abs(b1 - d1) <= 1e-12 * std::max(std::abs(b1), std::abs(d1)),
                   "log-space vs direct BC bound at L=" << L << " t=" << t);
            const double d2 =
                std::sqrt(4.0 * in.eta * std::pow(x, 2 * L + 1) / std::tgamma(2 * L + 2.0) *
                          (std::exp(x) + 1.0) * (std::sqrt(3.0) + 1.7 * t));
            const double b2 = s2_error_bound(in);
            ACHECK(std::isfinite(d2) &&
                       std::abs(b2 - d2) <= 1e-12 * std::max(std::abs(b2), std::abs(d2)),
                   "log-space vs direct S2 bound at L=" << L << " t=" << t);
        }
    }

    MultiBathSpec spec;
    spec.norm_O = 1.2;
    spec.baths.push_back({flat_pi(), Scheme::BC, 2, 0.8});
    spec.baths.push_back({SpectralDensity::rubin(1.0, 0.0, 1.0), Scheme::S2, 3, 1.3});
    spec.baths.push_back({SpectralDensity::semicircle(1.0, 0.0, 2.0), Scheme::BC, 4, 1.0});
    const std::vector<double> gammas{1.0, 2.0, 1.5};
    for (double t : {0.0, 0.3, 0.9}) {
        double parts = 0.0;
        for (std::size_t m = 0; m < spec.baths.size(); ++m) {
            BoundParams p;
            p.norm_O = spec.norm_O;
            p.norm_A = spec.baths[m].norm_A;
            p.gamma_norm = gammas[m];
            parts += bound_for(spec.baths[m].sd, spec.baths[m].scheme, p, t, spec.baths[m].L);
        }
        const double total = bound_multibath(spec, gammas, t);
        ACHECK(std::abs(total - parts) <= 1e-15 * std::max(parts, 1e-300),
               "multibath bound deviates from the sum of parts at t = " << t);
    }
}

// 8. observed spin-boson error dominated by the certified ceiling
void criterion_dominance() {
    std::vector<double> times(32);
    for (int i = 0; i < 32; ++i) times[i] = i / 31.0;
    ModelOptions opts;
    opts.sb_alpha = 0.5;
    opts.fock_cutoff = 3;
    opts.n0 = 0;
    for (Scheme scheme : {Scheme::BC, Scheme::S2}) {
        const auto table = bound_vs_empirical(flat_pi(), scheme, 2, 5, times, opts);
        for (const auto& row : table.rows) {
            ACHECK(row.empirical <= row.ceiling,
                   to_string(scheme) << " t=" << row.t << ": empirical " << row.empirical
                                     << " exceeds ceiling " << row.ceiling);
        }
    }
}

// 9. S2 reaches a target with at most half the modes on matched inputs
void criterion_scheme_comparison() {
    // factorial/power structure: theorem 2 at L vs theorem 1 at 2L
    for (double t : {0.1, 0.4, 1.0}) {
        for (int L : {1, 2, 5, 10}) {
            const double s2_term = log_power_factorial(t, 2 * L + 1);
            const double bc_term = log_power_factorial(t, (2 * L) + 1);
            ACHECK(std::abs(s2_term - bc_term) <= 1e-12 * std::max(1.0, std::abs(bc_term)),
                   "log-term mismatch at t=" << t << " L=" << L);
        }
    }
    BoundInputs in;
    in.norm_O = in.norm_A = in.omega_max = in.eta = in.gamma_norm = 1.0;
    // the S2 bound at L never exceeds the BC bound at 2L (same power/factorial
    // term, half the prefactor), so S2 needs at most half the modes; the
    // smaller prefactor can buy at most one further mode, whence the window
    // L_bc - 1 <= 2 L_s2 + 1 <= L_bc + 2 for omega_max * t <= 1
    for (double t : {0.2, 0.5, 1.0}) {
        for (int L : {1, 2, 4, 8, 16}) {
            in.t = t;
            in.L = L;
            const double s2 = s2_error_bound(in);
            in.L = 2 * L;
            const double bc = bc_error_bound(in);
            ACHECK(s2 <= bc, "S2 at L=" << L << " exceeds BC at 2L for t=" << t);
        }
        for (double eps : {1e-3, 1e-6, 1e-10}) {
            in.t = t;
            int L_bc = 1, L_s2 = 1;
            for (;; ++L_bc) {
                in.L = L_bc;
                if (bc_error_bound(in) <= eps) break;
            }
            for (;; ++L_s2) {
                in.L = L_s2;
                if (s2_error_bound(in) <= eps) break;
            }
            ACHECK(2 * L_s2 <= L_bc + 1, "S2 planner needed more than half the BC modes at t="
                                             << t << " eps=" << eps << ": L_bc=" << L_bc
                                             << " L_s2=" << L_s2);
            ACHECK(2 * L_s2 + 1 >= L_bc - 1, "factorial-argument parity window violated at t="
                                                 << t << " eps=" << eps << ": L_bc=" << L_bc
                                                 << " L_s2=" << L_s2);
        }
    }
}

// 10. CLI byte determinism across repeats and thread counts
void criterion_cli_determinism() {
    ACHECK(!cli_path.empty(), "no --cli path provided");
    fs::create_directories(work_dir);

    const std::string cfg_bound = R"({
  "version": 1,
  "command": "bound",
  "spectral_density": {"family": "power_law", "params": {"s": 0.0, "alpha": 0.5},
                        "omega_min": 0.0, "omega_max": 1.0},
  "scheme": "S2",
  "L_list": [1, 2, 4, 8],
  "time_grid": {"t_start": 0.0, "t_end": 1.0, "steps": 33},
  "bound_inputs": {"norm_O": 1.0, "norm_A": 1.0, "gamma_norm": 1.0}
})";
    const std::string cfg_disc = R"({
  "version": 1,
  "command": "discretize",
  "spectral_density": {"family": "rubin", "params": {"C": 1.0},
                        "omega_min": 0.0, "omega_max": 1.0},
  "scheme": "S2",
  "L": 6
})";

    auto run_cli = [&](const std::string& cfg_text, const std::string& tag, int threads,
                       std::vector<std::string> suffixes) {
        const fs::path cfg_path = work_dir / (tag + ".json");
        write_text_file(cfg_path.string(), cfg_text);
        const fs::path prefix = work_dir / tag;
        std::ostringstream cmd;
        cmd << '"' << cli_path << '"' << " --config \"" << cfg_path.string() << "\" --out \""
            << prefix.string() << "\" --threads " << threads << " > /dev/null 2>&1";
        const int rc = std::system(cmd.str().c_str());
        ACHECK(rc == 0, "CLI exited with status " << rc << " for " << tag);
        std::string blob;
        for (const auto& s : suffixes) blob += read_text_file(prefix.string() + "_" + s);
        return blob;
    };

    const auto b1 = run_cli(cfg_bound, "bound_t1", 1, {"bounds.csv"});
    const auto b4 = run_cli(cfg_bound, "bound_t4", 4, {"bounds.csv"});
    const auto b1b = run_cli(cfg_bound, "bound_t1b", 1, {"bounds.csv"});
    ACHECK(b1 == b4, "bound outputs differ between 1 and 4 threads");
    ACHECK(b1 == b1b, "bound outputs differ between repeat runs");

    const auto d1 = run_cli(cfg_disc, "disc_t1", 1, {"bath.csv", "bath.json"});
    const auto d4 = run_cli(cfg_disc, "disc_t4", 4, {"bath.csv", "bath.json"});
    ACHECK(d1 == d4, "discretize outputs differ between 1 and 4 threads");
}

struct Criterion {
    int id;
    std::string name;
    std::function<void()> fn;
    double budget_seconds;
};

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") cli_path = argv[i + 1];
        if (flag == "--workdir") work_dir = argv[i + 1];
    }
    if (work_dir.empty()) work_dir = fs::temp_directory_path() / "bathdisc_acceptance";

    const std::vector<Criterion> criteria = {
        {1, "closed-form Chebyshev knots (semicircle BC, rubin S2)", criterion_closed_form_knots, 1.0},
        {2, "Gauss exactness to degree 2L-1", criterion_gauss_exactness, 30.0},
        {3, "strict knot interlacing up to L = 100", criterion_interlacing, 30.0},
        {4, "Buell brackets contain all knots", criterion_buell, 30.0},
        {5, "chain-star equivalence to 1e-9", criterion_chain_star, 120.0},
        {6, "gamma norms and symplectic-defect decay", criterion_gamma, 60.0},
        {7, "bound evaluator identities", criterion_bounds, 30.0},
        {8, "empirical error within the certified ceiling", criterion_dominance, 300.0},
        {9, "S2/BC factorial-argument parity", criterion_scheme_comparison, 30.0},
        {10, "CLI byte determinism", criterion_cli_determinism, 120.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.fn();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && secs > c.budget_seconds) {
            std::ostringstream os;
            os << "exceeded runtime budget: " << secs << " s > " << c.budget_seconds << " s";
            error = os.str();
        }
        if (error.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.2f s)\n", c.id, c.name.c_str(), secs);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.2f s)\n        %s\n", c.id, c.name.c_str(),
                        secs, error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
