#ifndef BATHDISC_QUADRATURE_HPP
#define BATHDISC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace bathdisc {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int n);

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// Adaptive composite Gauss-Legendre integration by panel bisection.
// Converges when the summed panel error estimate drops below
// max(abs_tol, rel_tol * |value|); throws NumericalError("quadrature_tolerance")
// with the achieved estimate otherwise.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     double a, double b,
                                     double abs_tol = 1e-12, double rel_tol = 1e-10,
                                     int max_depth = 60);

// Substitution power k for an endpoint where the integrand behaves like
// (distance)^expo: x = endpoint +/- u^k regularises the algebraic factor.
int substitution_power(double expo);

// Integral of f over [a, b] where f has algebraic endpoint behaviour
// (x-a)^left_exp and (b-x)^right_exp. Splits at the midpoint and applies
// the power substitution on each half before integrating adaptively.
IntegrationResult integrate_endpoint_weighted(const std::function<double(double)>& f,
                                              double a, double b,
                                              double left_exp, double right_exp,
                                              double abs_tol = 1e-12, double rel_tol = 1e-10);

} // namespace bathdisc

#endif
