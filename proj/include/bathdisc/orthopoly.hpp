#ifndef BATHDISC_ORTHOPOLY_HPP
#define BATHDISC_ORTHOPOLY_HPP

#include "bathdisc/measures.hpp"
#include "bathdisc/types.hpp"

#include <optional>
#include <vector>

namespace bathdisc {

// Recurrence coefficients of the orthonormal polynomials of a measure:
// alpha_k on the Jacobi diagonal, beta_0 the measure mass and beta_k (k>=1)
// the squared off-diagonal entries.
struct RecurrenceCoefficients {
    std::vector<double> alpha;
    std::vector<double> beta;
    MeasureTag measure;
    int size() const { return static_cast<int>(alpha.size()); }
};

// First n coefficient pairs of the (affinely shifted) Jacobi weight
// (x-a)^left_exp * (b-x)^right_exp on [a, b], with beta_0 set to `mass`.
RecurrenceCoefficients recurrence_jacobi(double left_exp, double right_exp,
                                         double a, double b, double mass, int n);

// Dispatch to the known Jacobi recurrence; throws
// ValidationError("unsupported_family") when the measure is not Jacobi-type.
RecurrenceCoefficients recurrence_analytic(const Measure& m, int n);

// Discretised Stieltjes procedure with panel-doubling convergence
// (relative change < 1e-10 between doublings, total points capped at 2^20).
RecurrenceCoefficients recurrence_stieltjes(const Measure& m, int n, int panels = 8);

// Analytic recurrence when available, Stieltjes otherwise.
RecurrenceCoefficients recurrence_for(const Measure& m, int n);

// Orthonormal polynomial P_n(x); P_0 = 1/sqrt(beta_0). Scaled against
// intermediate overflow for x far outside the support.
double eval_orthonormal(const RecurrenceCoefficients& rc, int n, double x);

// P_0(x) .. P_{count-1}(x)
std::vector<double> orthonormal_values(const RecurrenceCoefficients& rc, int count, double x);

// L-point Gauss rule: knots descending, weights positive summing to beta_0.
struct GaussRule {
    int L = 0;
    std::vector<double> knots;
    std::vector<double> weights;
    MeasureTag measure;
};

GaussRule gauss_rule(const RecurrenceCoefficients& rc, int L);

// Eigen-decomposition of a symmetric tridiagonal matrix by implicit-shift QL.
// Returns eigenvalues in `diag`; `first_row` (entering as e_0^T) exits as the
// first components of the normalised eigenvectors.
void symtridiag_eigen(std::vector<double>& diag, std::vector<double>& offdiag,
                      std::vector<double>& first_row);

// Closed-form Chebyshev knots: semicircle under BC, Rubin under S2.
// Returned descending, matching GaussRule ordering.
std::vector<double> chebyshev_knots_closed_form(const SpectralDensity& sd, Scheme scheme, int L);

struct KnotBracket {
    double lower = 0.0;
    double upper = 0.0;
};

// Bracketing interval for the k-th (descending) knot of the power-law
// discretisation: BC for -1/2 <= s <= 1/2, S2 (massless) for -1 < s <= 1.
KnotBracket buell_bounds(Scheme scheme, double s, double omega_min, double omega_max,
                         int L, int k);

} // namespace bathdisc

#endif
