#ifndef BATHDISC_BOUNDS_HPP
#define BATHDISC_BOUNDS_HPP

#include "bathdisc/discretize.hpp"
#include "bathdisc/measures.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace bathdisc {

// Everything a single-bath bound evaluation needs. eta/gamma_norm refer to
// (eta_0, ||gamma_0||) for the BC bound and (eta_1, ||gamma_0'||) for S2.
struct BoundInputs {
    double norm_O = 1.0;
    double norm_A = 1.0;
    double omega_max = 1.0;
    double eta = 1.0;
    double gamma_norm = 1.0;
    bool massless = false;
    double t = 0.0;
    int L = 1;

    void validate() const;
};

// n*ln(x) - ln(n!), the log of the power/factorial ratio both bounds share.
double log_power_factorial(double x, int n);

// Rigorous bound on |<O>_continuum - <O>_L| for the BC discretisation,
// evaluated in log space; exactly 0 at t = 0.
double bc_error_bound(const BoundInputs& in);

// Bound for the S2 discretisation; the massless flag picks the branch with
// the extra exponential factors.
double s2_error_bound(const BoundInputs& in);

// Bound parameters that do not derive from the spectral density.
struct BoundParams {
    double norm_O = 1.0;
    double norm_A = 1.0;
    double gamma_norm = 1.0;
    std::optional<bool> massless_override;
};

BoundInputs make_bound_inputs(const SpectralDensity& sd, Scheme scheme,
                              const BoundParams& p, double t, int L);

// Scheme-dispatching single-bath bound.
double bound_for(const SpectralDensity& sd, Scheme scheme, const BoundParams& p,
                 double t, int L);

// Corollary bound: sum of the per-bath Deltas, each evaluated with its own
// omega_max, eta and ||A_S^{(m)}|| and the shared ||O||.
double bound_multibath(const MultiBathSpec& spec, const std::vector<double>& gamma_norms,
                       double t);

// ||gamma_0|| for the product state with n0 excitations in every mode.
double gamma_norm_number_state(int n0);

// Two-point correlation blocks in a quadrature basis, truncated at M modes.
struct CorrelationMatrix {
    int M = 0;
    Eigen::MatrixXcd xx, xp, px, pp;
};

CorrelationMatrix number_state_blocks(int n0, int M);

// Operator norm of the assembled self-adjoint 2M x 2M matrix; rejects inputs
// whose blocks violate self-adjointness beyond 1e-10. The result certifies
// the M-truncation only: callers should grow M until doubling it moves the
// value by less than 1e-6 and report that delta with the norm.
double gamma_norm_from_blocks(const CorrelationMatrix& cm);

// Truncated blocks of the non-unitary map between the unprimed and primed
// quadrature bases. The symplectic identity C^T Omega C = Omega holds mode by
// mode only in the infinite sum over primed indices, so the reported defect is
// the M-term truncation of that identity on the leading two-mode corner; it
// converges to zero as M grows. (The norm over the full M x M truncation does
// not converge: the highest rows are always cut mid-expansion.)
struct BasisChange {
    Eigen::MatrixXd A; // couples momenta: sqrt(2/w_max) int mu0 x P'_n(x^2) P_m(x)
    Eigen::MatrixXd B; // couples positions: sqrt(2 w_max) int mu0 P'_n(x^2) P_m(x)
    double symplectic_defect = 0.0;
};

BasisChange gamma_basis_change(const SpectralDensity& sd, int M);

struct PlanOptions {
    int L_max = 10000;
};

// Smallest L with bound(t_horizon, L) <= epsilon; NumericalError("plan_saturated")
// if none up to L_max suffices.
int plan_modes(const SpectralDensity& sd, Scheme scheme, double t_horizon, double epsilon,
               const BoundParams& p, const PlanOptions& opts = {});

struct BoundCurvePoint {
    double t = 0.0;
    int L = 1;
    Scheme scheme = Scheme::BC;
    bool massless = false;
    double value = 0.0;
};

} // namespace bathdisc

#endif
