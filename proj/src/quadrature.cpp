#include "bathdisc/quadrature.hpp"
#include "bathdisc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace bathdisc {

static GaussLegendre compute_gauss_legendre(int n) {
    // Newton iteration on the Legendre polynomial, exploiting root symmetry.
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[n - 1 - i] = gl.weights[i];
    }
    return gl;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

namespace {

double panel_value(const std::function<double(double)>& f, double a, double b,
                   const GaussLegendre& gl) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        s += gl.weights[i] * f(c + h * gl.nodes[i]);
    return s * h;
}

struct Panel {
    double a, b, value, error;
    int depth;
};

} // namespace

IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     double a, double b,
                                     double abs_tol, double rel_tol, int max_depth) {
    IntegrationResult res;
    if (a == b) return res;
    const GaussLegendre& gl = gauss_legendre(21);

    auto eval_panel = [&](double pa, double pb, int depth) {
        double whole = panel_value(f, pa, pb, gl);
        double mid = 0.5 * (pa + pb);
        double halves = panel_value(f, pa, mid, gl) + panel_value(f, mid, pb, gl);
        return Panel{pa, pb, halves, std::abs(whole - halves), depth};
    };

    std::vector<Panel> work{eval_panel(a, b, 0)};
    std::vector<Panel> done;
    double total = work.front().value;
    int evals = 1;

    while (!work.empty()) {
        // refine the worst panel first
        auto worst = std::max_element(work.begin(), work.end(),
                                      [](const Panel& x, const Panel& y) { return x.error < y.error; });
        double err_sum = 0.0;
        for (const auto& p : work) err_sum += p.error;
        for (const auto& p : done) err_sum += p.error;
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (err_sum <= tol) break;

        Panel p = *worst;
        work.erase(worst);
        if (p.depth >= max_depth || evals > 100000) {
            done.push_back(p);
            if (work.empty()) {
                double rem = p.error;
                for (const auto& q : done) rem = std::max(rem, q.error);
                double total_err = 0.0;
                for (const auto& q : done) total_err += q.error;
                if (total_err > tol) {
                    std::ostringstream os;
                    os << "adaptive quadrature did not reach tolerance " << tol
                       << "; achieved error estimate " << total_err;
                    throw NumericalError("quadrature_tolerance", os.str());
                }
            }
            continue;
        }
        double mid = 0.5 * (p.a + p.b);
        Panel left = eval_panel(p.a, mid, p.depth + 1);
        Panel right = eval_panel(mid, p.b, p.depth + 1);
        evals += 2;
        total += left.value + right.value - p.value;
        work.push_back(left);
        work.push_back(right);
    }

    double err = 0.0;
    int count = 0;
    for (const auto& p : work) {
        err += p.error;
        ++count;
    }
    for (const auto& p : done) {
        err += p.error;
        ++count;
    }
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err > tol) {
        std::ostringstream os;
        os << "adaptive quadrature did not reach tolerance " << tol
           << "; achieved error estimate " << err;
        throw NumericalError("quadrature_tolerance", os.str());
    }
    res.value = total;
    res.error_estimate = err;
    res.panels = count;
    return res;
}

int substitution_power(double expo) {
    if (expo > -1e-12 && std::abs(expo - std::round(expo)) < 1e-12) return 1;
    // prefer the smallest k making k*(1+expo) a positive integer, so the
    // substituted integrand u^(k(1+e)-1) is polynomially smooth
    for (int k = 2; k <= 16; ++k) {
        double v = k * (1.0 + expo);
        if (v >= 1.0 - 1e-9 && std::abs(v - std::round(v)) < 1e-9) return k;
    }
    int k = static_cast<int>(std::ceil(3.0 / (1.0 + expo)));
    return std::clamp(k, 2, 16);
}

IntegrationResult integrate_endpoint_weighted(const std::function<double(double)>& f,
                                              double a, double b,
                                              double left_exp, double right_exp,
                                              double abs_tol, double rel_tol) {
    if (a == b) return {};
    const double mid = 0.5 * (a + b);
    const int kl = substitution_power(left_exp);
    const int kr = substitution_power(right_exp);

    IntegrationResult total;
    auto accumulate = [&](const IntegrationResult& r) {
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.panels += r.panels;
    };

    if (kl == 1) {
        accumulate(integrate_adaptive(f, a, mid, abs_tol * 0.5, rel_tol));
    } else {
        const double umax = std::pow(mid - a, 1.0 / kl);
        accumulate(integrate_adaptive(
            [&f, a, kl](double u) { return kl * std::pow(u, kl - 1) * f(a + std::pow(u, kl)); },
            0.0, umax, abs_tol * 0.5, rel_tol));
    }
    if (kr == 1) {
        accumulate(integrate_adaptive(f, mid, b, abs_tol * 0.5, rel_tol));
    } else {
        const double umax = std::pow(b - mid, 1.0 / kr);
        accumulate(integrate_adaptive(
            [&f, b, kr](double u) { return kr * std::pow(u, kr - 1) * f(b - std::pow(u, kr)); },
            0.0, umax, abs_tol * 0.5, rel_tol));
    }
    return total;
}

} // namespace bathdisc
