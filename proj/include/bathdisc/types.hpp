#ifndef BATHDISC_TYPES_HPP
#define BATHDISC_TYPES_HPP

#include <string>

namespace bathdisc {

// Discretisation scheme: BC takes the Gauss rule of the weight J(.)/pi,
// S2 the rule of J(sqrt(.))/pi with square-rooted knots.
enum class Scheme { BC, S2 };

inline const char* to_string(Scheme s) { return s == Scheme::BC ? "BC" : "S2"; }

// Identifies which measure a set of coefficients/knots belongs to:
// q = 0 or 1, the support interval [a, b] of mu_q, and a display label.
struct MeasureTag {
    int q = 0;
    double a = 0.0;
    double b = 0.0;
    std::string label;
};

} // namespace bathdisc

#endif
