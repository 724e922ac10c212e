#include "bathdisc/bounds.hpp"
#include "bathdisc/errors.hpp"
#include "bathdisc/orthopoly.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace bathdisc {

void BoundInputs::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError("invalid_params",
                                  std::string("bound input ") + name + " must be finite and > 0");
    };
    pos(norm_O, "norm_O");
    pos(norm_A, "norm_A");
    pos(omega_max, "omega_max");
    pos(eta, "eta");
    if (!(gamma_norm >= 0.0) || !std::isfinite(gamma_norm))
        throw ValidationError("invalid_params", "gamma_norm must be finite and >= 0");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ValidationError("invalid_params", "t must be finite and >= 0");
    if (L < 1) throw ValidationError("invalid_params", "L must be >= 1");
}

double log_power_factorial(double x, int n) {
    return n * std::log(x) - std::lgamma(n + 1.0);
}

namespace {

// ln(e^x + 1) without overflow
double log_exp_plus_one(double x) { return x + std::log1p(std::exp(-x)); }

// ln(a + c * (e^x - 1)) for a >= 0, c > 0, x > 0
double log_a_plus_c_expm1(double a, double c, double x) {
    if (x < 500.0) return std::log(a + c * std::expm1(x));
    return std::log(c) + x + std::log1p((a - c) * std::exp(-x) / c);
}

} // namespace

double bc_error_bound(const BoundInputs& in) {
    in.validate();
    if (in.t == 0.0) return 0.0;
    const double x = in.omega_max * in.t;
    double log_sq = std::log(8.0 * in.eta * in.norm_O * in.norm_O * in.norm_A / in.omega_max);
    log_sq += log_power_factorial(x, in.L + 1);
    log_sq += log_exp_plus_one(x);
    log_sq += std::log(std::sqrt(in.gamma_norm) + in.eta * in.norm_A * in.t);
    return std::exp(0.5 * log_sq);
}

double s2_error_bound(const BoundInputs& in) {
    in.validate();
    if (in.t == 0.0) return 0.0;
    const double x = in.omega_max * in.t;
    double log_sq = std::log(4.0 * in.eta * in.norm_O * in.norm_O * in.norm_A / in.omega_max);
    log_sq += log_power_factorial(x, 2 * in.L + 1);
    log_sq += log_exp_plus_one(x);
    if (in.massless) {
        log_sq += log_a_plus_c_expm1(std::sqrt(in.gamma_norm),
                                     in.eta * in.norm_A / in.omega_max, x);
        log_sq += x;
    } else {
        log_sq += std::log(std::sqrt(in.gamma_norm) + in.eta * in.norm_A * in.t);
    }
    return std::exp(0.5 * log_sq);
}

BoundInputs make_bound_inputs(const SpectralDensity& sd, Scheme scheme,
                              const BoundParams& p, double t, int L) {
    const auto [eta0, eta1] = eta_constants(sd);
    BoundInputs in;
    in.norm_O = p.norm_O;
    in.norm_A = p.norm_A;
    in.omega_max = sd.omega_max();
    in.eta = scheme == Scheme::BC ? eta0 : eta1;
    in.gamma_norm = p.gamma_norm;
    in.massless = p.massless_override.value_or(sd.massless());
    in.t = t;
    in.L = L;
    return in;
}

double bound_for(const SpectralDensity& sd, Scheme scheme, const BoundParams& p,
                 double t, int L) {
    const BoundInputs in = make_bound_inputs(sd, scheme, p, t, L);
    return scheme == Scheme::BC ? bc_error_bound(in) : s2_error_bound(in);
}

double bound_multibath(const MultiBathSpec& spec, const std::vector<double>& gamma_norms,
                       double t) {
    if (gamma_norms.size() != spec.baths.size())
        throw ValidationError("invalid_params",
                              "need one gamma norm per bath in the multibath spec");
    double total = 0.0;
    for (std::size_t m = 0; m < spec.baths.size(); ++m) {
        const auto& entry = spec.baths[m];
        BoundParams p;
        p.norm_O = spec.norm_O;
        p.norm_A = entry.norm_A;
        p.gamma_norm = gamma_norms[m];
        total += bound_for(entry.sd, entry.scheme, p, t, entry.L);
    }
    return total;
}

double gamma_norm_number_state(int n0) {
    if (n0 < 0) throw ValidationError("invalid_params", "occupation n0 must be >= 0");
    return n0 + 1.0;
}

CorrelationMatrix number_state_blocks(int n0, int M) {
    if (n0 < 0 || M < 0) throw ValidationError("invalid_params", "need n0 >= 0, M >= 0");
    CorrelationMatrix cm;
    cm.M = M;
    const std::complex<double> i2(0.0, 0.5);
    cm.xx = (n0 + 0.5) * Eigen::MatrixXcd::Identity(M, M);
    cm.pp = cm.xx;
    cm.xp = i2 * Eigen::MatrixXcd::Identity(M, M);
    cm.px = -i2 * Eigen::MatrixXcd::Identity(M, M);
    return cm;
}

double gamma_norm_from_blocks(const CorrelationMatrix& cm) {
    const int M = cm.M;
    if (cm.xx.rows() != M || cm.xx.cols() != M || cm.xp.rows() != M || cm.xp.cols() != M ||
        cm.px.rows() != M || cm.px.cols() != M || cm.pp.rows() != M || cm.pp.cols() != M)
        throw ValidationError("invalid_params", "correlation blocks must all be M x M");
    if (M == 0) return 0.0;
    const double defect = std::max({(cm.xx - cm.xx.adjoint()).cwiseAbs().maxCoeff(),
                                    (cm.pp - cm.pp.adjoint()).cwiseAbs().maxCoeff(),
                                    (cm.px - cm.xp.adjoint()).cwiseAbs().maxCoeff()});
    if (defect > 1e-10) {
        std::ostringstream os;
        os << "correlation matrix violates self-adjointness by " << defect;
        throw ValidationError("invalid_state", os.str());
    }
    Eigen::MatrixXcd full(2 * M, 2 * M);
    full.topLeftCorner(M, M) = cm.xx;
    full.topRightCorner(M, M) = cm.xp;
    full.bottomLeftCorner(M, M) = cm.px;
    full.bottomRightCorner(M, M) = cm.pp;
    full = 0.5 * (full + full.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(full, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

BasisChange gamma_basis_change(const SpectralDensity& sd, int M) {
    if (M < 0) throw ValidationError("invalid_params", "truncation M must be >= 0");
    BasisChange bc;
    bc.A.resize(M, M);
    bc.B.resize(M, M);
    if (M == 0) return bc;

    const Measure m0(sd, 0), m1(sd, 1);
    const auto rc0 = recurrence_for(m0, M);
    const auto rc1 = recurrence_for(m1, M);
    const double wmax = sd.omega_max();
    const double ca = std::sqrt(2.0 / wmax);
    const double cb = std::sqrt(2.0 * wmax);

    for (int n = 0; n < M; ++n) {
        for (int m = 0; m < M; ++m) {
            auto plain = [&](double x) {
                return eval_orthonormal(rc1, n, x * x) * eval_orthonormal(rc0, m, x);
            };
            bc.A(n, m) = ca * m0.integrate([&](double x) { return x * plain(x); }, 1e-12, 1e-11);
            bc.B(n, m) = cb * m0.integrate(plain, 1e-12, 1e-11);
        }
    }
    const int K = std::min(M, 2);
    const Eigen::MatrixXd corner =
        (bc.A.transpose() * bc.B).topLeftCorner(K, K) - Eigen::MatrixXd::Identity(K, K);
    bc.symplectic_defect = corner.jacobiSvd().singularValues()(0);
    return bc;
}

int plan_modes(const SpectralDensity& sd, Scheme scheme, double t_horizon, double epsilon,
               const BoundParams& p, const PlanOptions& opts) {
    if (!(epsilon > 0.0)) throw ValidationError("invalid_params", "epsilon must be > 0");
    if (!(t_horizon >= 0.0)) throw ValidationError("invalid_params", "t_horizon must be >= 0");
    double last = 0.0;
    for (int L = 1; L <= opts.L_max; ++L) {
        last = bound_for(sd, scheme, p, t_horizon, L);
        if (last <= epsilon) return L;
    }
    std::ostringstream os;
    os << "no L <= " << opts.L_max << " reaches epsilon " << epsilon << "; bound at L_max is "
       << last;
    throw NumericalError("plan_saturated", os.str());
}

} // namespace bathdisc
