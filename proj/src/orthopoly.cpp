#include "bathdisc/orthopoly.hpp"
#include "bathdisc/errors.hpp"
#include "bathdisc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace bathdisc {

RecurrenceCoefficients recurrence_jacobi(double left_exp, double right_exp,
                                         double a, double b, double mass, int n) {
    if (n < 1) throw ValidationError("invalid_params", "need n >= 1 recurrence coefficients");
    if (!(b > a)) throw ValidationError("invalid_params", "need a < b");
    if (!(mass > 0.0)) throw ValidationError("invalid_params", "measure mass must be > 0");
    if (!(left_exp > -1.0) || !(right_exp > -1.0))
        throw ValidationError("invalid_params", "Jacobi exponents must be > -1");

    // standard-interval recurrence for w(u) = (1-u)^A (1+u)^B on [-1,1]
    const double A = right_exp, B = left_exp;
    RecurrenceCoefficients rc;
    rc.alpha.resize(n);
    rc.beta.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    rc.alpha[0] = mid + half * (B - A) / (A + B + 2.0);
    rc.beta[0] = mass;
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + A + B;
        rc.alpha[k] = mid + half * (B * B - A * A) / (t * (t + 2.0));
        double bk;
        if (k == 1)
            bk = 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + A + B) * (2.0 + A + B) * (3.0 + A + B));
        else
            bk = 4.0 * k * (k + A) * (k + B) * (k + A + B) / (t * t * (t + 1.0) * (t - 1.0));
        rc.beta[k] = bk * half * half;
    }
    return rc;
}

RecurrenceCoefficients recurrence_analytic(const Measure& m, int n) {
    const auto exps = m.jacobi_exponents();
    if (!exps)
        throw ValidationError("unsupported_family",
                              std::string("measure ") + m.tag().label +
                                  " is not an affinely shifted Jacobi weight; use the Stieltjes route");
    auto rc = recurrence_jacobi(exps->first, exps->second, m.a(), m.b(), m.mass(), n);
    rc.measure = m.tag();
    return rc;
}

namespace {

struct DiscreteMeasure {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite Gauss-Legendre discretisation of the measure, applying the same
// endpoint substitutions as the adaptive integrator so algebraic weight
// singularities are resolved by polynomially smooth integrands.
DiscreteMeasure discretise_measure(const Measure& m, int panels_per_half) {
    const GaussLegendre& gl = gauss_legendre(64);
    DiscreteMeasure dm;
    auto add_segment = [&](double lo, double hi, double endpoint, int kpow, bool from_left) {
        // integrate over u in [0, (hi-lo)^{1/k}] with x = endpoint +- u^k
        const double umax = std::pow(hi - lo, 1.0 / kpow);
        const double step = umax / panels_per_half;
        for (int p = 0; p < panels_per_half; ++p) {
            const double ua = p * step, ub = ua + step;
            const double c = 0.5 * (ua + ub), h = 0.5 * (ub - ua);
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double u = c + h * gl.nodes[i];
                const double x = from_left ? endpoint + std::pow(u, kpow)
                                           : endpoint - std::pow(u, kpow);
                const double jac = kpow * std::pow(u, kpow - 1);
                const double w = h * gl.weights[i] * jac * m.weight(x);
                if (w != 0.0) {
                    dm.nodes.push_back(x);
                    dm.weights.push_back(w);
                }
            }
        }
    };
    for (const auto& piece : m.pieces()) {
        const double mid = 0.5 * (piece.a + piece.b);
        add_segment(piece.a, mid, piece.a, substitution_power(piece.left_exp), true);
        add_segment(mid, piece.b, piece.b, substitution_power(piece.right_exp), false);
    }
    return dm;
}

// one orthonormal-Stieltjes pass over a fixed discrete measure
RecurrenceCoefficients stieltjes_pass(const DiscreteMeasure& dm, int n) {
    const std::size_t M = dm.nodes.size();
    RecurrenceCoefficients rc;
    rc.alpha.resize(n);
    rc.beta.resize(n);

    double beta0 = 0.0;
    for (double w : dm.weights) beta0 += w;
    rc.beta[0] = beta0;

    std::vector<double> phi_prev(M, 0.0), phi(M, 1.0 / std::sqrt(beta0)), next(M);
    double sqrt_beta_k = 0.0;
    for (int k = 0; k < n; ++k) {
        double ak = 0.0;
        for (std::size_t j = 0; j < M; ++j) ak += dm.weights[j] * dm.nodes[j] * phi[j] * phi[j];
        rc.alpha[k] = ak;
        if (k + 1 >= n) break;
        double norm2 = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            next[j] = (dm.nodes[j] - ak) * phi[j] - sqrt_beta_k * phi_prev[j];
            norm2 += dm.weights[j] * next[j] * next[j];
        }
        if (!(norm2 > 0.0))
            throw NumericalError("stieltjes_divergence",
                                 "discretised measure has too few points for the requested order");
        rc.beta[k + 1] = norm2;
        sqrt_beta_k = std::sqrt(norm2);
        for (std::size_t j = 0; j < M; ++j) {
            double t = next[j] / sqrt_beta_k;
            phi_prev[j] = phi[j];
            phi[j] = t;
        }
    }
    return rc;
}

double recurrence_delta(const RecurrenceCoefficients& x, const RecurrenceCoefficients& y,
                        double scale) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.alpha.size(); ++k) {
        d = std::max(d, std::abs(x.alpha[k] - y.alpha[k]) / scale);
        d = std::max(d, std::abs(x.beta[k] - y.beta[k]) / std::max(std::abs(y.beta[k]), 1e-300));
    }
    return d;
}

} // namespace

RecurrenceCoefficients recurrence_stieltjes(const Measure& m, int n, int panels) {
    if (n < 1) throw ValidationError("invalid_params", "need n >= 1");
    const int halves = 2 * static_cast<int>(m.pieces().size());
    int p = std::max(panels, 1);
    // enough support points for orthogonality up to order n
    while (64 * halves * p < 2 * n) p *= 2;

    const double scale = std::max({std::abs(m.a()), std::abs(m.b()), m.b() - m.a()});
    RecurrenceCoefficients prev;
    double last_delta = std::numeric_limits<double>::infinity();
    for (;;) {
        if (64.0 * halves * p > double(1 << 20)) {
            std::ostringstream os;
            os << "Stieltjes procedure did not converge within the point budget; last delta "
               << last_delta;
            throw NumericalError("stieltjes_divergence", os.str());
        }
        auto dm = discretise_measure(m, p);
        auto rc = stieltjes_pass(dm, n);
        rc.measure = m.tag();
        if (!prev.alpha.empty()) {
            last_delta = recurrence_delta(rc, prev, scale);
            if (last_delta < 1e-10) return rc;
        }
        prev = std::move(rc);
        p *= 2;
    }
}

RecurrenceCoefficients recurrence_for(const Measure& m, int n) {
    if (m.jacobi_exponents()) return recurrence_analytic(m, n);
    return recurrence_stieltjes(m, n);
}

double eval_orthonormal(const RecurrenceCoefficients& rc, int n, double x) {
    if (n < 0 || n >= rc.size())
        throw ValidationError("invalid_params", "polynomial order exceeds recurrence length");
    double p_prev = 0.0;
    double p = 1.0 / std::sqrt(rc.beta[0]);
    int scale_bits = 0;
    for (int k = 0; k < n; ++k) {
        const double sb_next = std::sqrt(rc.beta[k + 1]);
        const double sb = k > 0 ? std::sqrt(rc.beta[k]) : 0.0;
        double p_next = ((x - rc.alpha[k]) * p - sb * p_prev) / sb_next;
        p_prev = p;
        p = p_next;
        double m = std::max(std::abs(p), std::abs(p_prev));
        if (m > 0x1p512) {
            p = std::ldexp(p, -512);
            p_prev = std::ldexp(p_prev, -512);
            scale_bits += 512;
        }
    }
    return std::ldexp(p, scale_bits);
}

std::vector<double> orthonormal_values(const RecurrenceCoefficients& rc, int count, double x) {
    if (count < 1 || count > rc.size())
        throw ValidationError("invalid_params", "requested more values than recurrence length");
    std::vector<double> vals(count);
    vals[0] = 1.0 / std::sqrt(rc.beta[0]);
    if (count == 1) return vals;
    vals[1] = (x - rc.alpha[0]) * vals[0] / std::sqrt(rc.beta[1]);
    for (int k = 1; k + 1 < count; ++k)
        vals[k + 1] = ((x - rc.alpha[k]) * vals[k] - std::sqrt(rc.beta[k]) * vals[k - 1]) /
                      std::sqrt(rc.beta[k + 1]);
    return vals;
}

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating only the
// first row of the orthogonal transform (all that Gauss weights need).
void symtridiag_eigen(std::vector<double>& d, std::vector<double>& e,
                      std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0); // e[i] couples i and i+1; e[n-1] is workspace
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw NumericalError("eigensolver", "QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

GaussRule gauss_rule(const RecurrenceCoefficients& rc, int L) {
    if (L < 1) throw ValidationError("invalid_params", "Gauss rule needs L >= 1");
    if (L > rc.size())
        throw ValidationError("invalid_params", "Gauss rule order exceeds available coefficients");
    std::vector<double> d(rc.alpha.begin(), rc.alpha.begin() + L);
    std::vector<double> e(L, 0.0);
    for (int k = 1; k < L; ++k) {
        if (!(rc.beta[k] > 0.0))
            throw ValidationError("invalid_params", "off-diagonal beta coefficients must be > 0");
        e[k - 1] = std::sqrt(rc.beta[k]);
    }
    std::vector<double> z(L, 0.0);
    z[0] = 1.0;
    symtridiag_eigen(d, e, z);

    std::vector<int> order(L);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] > d[j]; });

    GaussRule rule;
    rule.L = L;
    rule.measure = rc.measure;
    rule.knots.resize(L);
    rule.weights.resize(L);
    for (int i = 0; i < L; ++i) {
        rule.knots[i] = d[order[i]];
        rule.weights[i] = rc.beta[0] * z[order[i]] * z[order[i]];
    }
    // knots of a determinate measure are simple; treat near-coincidence as
    // ill-conditioning rather than merging silently
    const double span = rc.measure.b > rc.measure.a ? rc.measure.b - rc.measure.a
                                                    : std::abs(rule.knots.front() - rule.knots.back());
    for (int i = 0; i + 1 < L; ++i) {
        if (rule.knots[i] - rule.knots[i + 1] < 1e-12 * span) {
            std::ostringstream os;
            os << "Gauss knots " << i << " and " << i + 1 << " separated by less than 1e-12*span ("
               << rule.knots[i] - rule.knots[i + 1] << "); rule is ill-conditioned";
            throw NumericalError("ill_conditioned_rule", os.str());
        }
    }
    return rule;
}

std::vector<double> chebyshev_knots_closed_form(const SpectralDensity& sd, Scheme scheme, int L) {
    if (L < 1) throw ValidationError("invalid_params", "need L >= 1");
    std::vector<double> knots(L);
    const double lo = sd.omega_min(), hi = sd.omega_max();
    if (sd.family() == Family::semicircle && scheme == Scheme::BC) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (int k = 1; k <= L; ++k)
            knots[k - 1] = half * std::cos(k * M_PI / (L + 1)) + mid;
        return knots;
    }
    if (sd.family() == Family::rubin && scheme == Scheme::S2) {
        const double half = 0.5 * (hi * hi - lo * lo), mid = 0.5 * (hi * hi + lo * lo);
        for (int k = 1; k <= L; ++k)
            knots[k - 1] = std::sqrt(half * std::cos(k * M_PI / (L + 1)) + mid);
        return knots;
    }
    throw ValidationError("unsupported_family",
                          "closed-form knots exist only for semicircle under BC and rubin under S2");
}

KnotBracket buell_bounds(Scheme scheme, double s, double omega_min, double omega_max,
                         int L, int k) {
    if (L < 1 || k < 1 || k > L)
        throw ValidationError("invalid_params", "need 1 <= k <= L");
    if (!(omega_max > omega_min) || omega_min < 0.0)
        throw ValidationError("invalid_params", "need 0 <= omega_min < omega_max");

    if (scheme == Scheme::BC) {
        if (s < -0.5 || s > 0.5)
            throw ValidationError("range",
                                  "Buell bracket for the BC scheme requires -1/2 <= s <= 1/2");
        const double nn = L + 0.5 * (s + 1.0);
        const double delta = omega_max - omega_min;
        // k-th knot in descending order
        const double lo = omega_min + 0.5 * delta * (1.0 + std::cos(k * M_PI / nn));
        const double hi = omega_min + 0.5 * delta * (1.0 + std::cos((k + 0.5 * (s - 1.0)) * M_PI / nn));
        return {lo, hi};
    }
    // S2 bracket is stated for the massless case only
    if (omega_min != 0.0)
        throw ValidationError("range", "S2 Buell bracket applies to the massless case (omega_min = 0)");
    if (s <= -1.0 || s > 1.0)
        throw ValidationError("range", "Buell bracket for the S2 scheme requires -1 < s <= 1");
    const double nn = L + 0.5 * (0.5 * s + 1.0);
    const double lo = omega_max * std::sqrt(0.5 * (1.0 + std::cos(k * M_PI / nn)));
    const double hi =
        omega_max * std::sqrt(0.5 * (1.0 + std::cos((k + 0.5 * (0.5 * s - 1.0)) * M_PI / nn)));
    return {lo, hi};
}

} // namespace bathdisc
