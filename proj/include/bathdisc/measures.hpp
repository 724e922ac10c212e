#ifndef BATHDISC_MEASURES_HPP
#define BATHDISC_MEASURES_HPP

#include "bathdisc/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bathdisc {

enum class Family { power_law, semicircle, rubin, gapped, tabulated };

const char* to_string(Family f);

// Spectral density J(omega) supported on [omega_min, omega_max], the sole
// physical input. Units: hbar = 1, frequencies in rad/time.
class SpectralDensity {
public:
    // defaults to the flat density J = pi on [0, 1]
    SpectralDensity() = default;

    // J(w) = 2*pi*alpha*(w_max - w_min)*(w - w_min)^s, s > -1
    static SpectralDensity power_law(double s, double alpha, double omega_min, double omega_max);
    // J(w) = C*sqrt((w_max - w)*(w - w_min))
    static SpectralDensity semicircle(double C, double omega_min, double omega_max);
    // J(w) = C*sqrt((w_max^2 - w^2)*(w^2 - w_min^2))
    static SpectralDensity rubin(double C, double omega_min, double omega_max);
    // base density with J forced to zero on [omega_i, omega_f]
    static SpectralDensity gapped(SpectralDensity base, double omega_i, double omega_f);
    // piecewise-linear interpolation through sorted (omega, J) samples,
    // treated as exact thereafter
    static SpectralDensity tabulated(std::vector<std::pair<double, double>> samples);

    double operator()(double omega) const; // eval_density: 0 outside support

    Family family() const { return family_; }
    double omega_min() const { return omega_min_; }
    double omega_max() const { return omega_max_; }
    bool massless() const; // omega_min < 1e-12 * omega_max

    // parameter accessors (valid for the matching family only)
    double power_s() const { return s_; }
    double power_alpha() const { return alpha_; }
    double amplitude() const { return C_; }
    double gap_lo() const { return gap_lo_; }
    double gap_hi() const { return gap_hi_; }
    const SpectralDensity& base() const { return *base_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    nlohmann::ordered_json to_json() const;
    static SpectralDensity from_json(const nlohmann::json& j);

private:
    void check_support() const;

    Family family_ = Family::power_law;
    double omega_min_ = 0.0, omega_max_ = 1.0;
    double s_ = 0.0, alpha_ = 0.5; // power_law
    double C_ = 0.0;               // semicircle / rubin
    double gap_lo_ = 0.0, gap_hi_ = 0.0;
    std::shared_ptr<const SpectralDensity> base_; // gapped
    std::vector<std::pair<double, double>> samples_;
};

// One maximal subinterval on which the measure weight is smooth and positive,
// with the algebraic exponents of the weight at its two endpoints.
struct SupportPiece {
    double a, b;
    double left_exp = 0.0, right_exp = 0.0;
};

// Induced measure mu_q: q=0 is J(x)dx/pi on [omega_min, omega_max],
// q=1 is J(sqrt(x))dx/pi on [omega_min^2, omega_max^2].
class Measure {
public:
    Measure(SpectralDensity sd, int q);

    int q() const { return q_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const SpectralDensity& density() const { return sd_; }
    const std::vector<SupportPiece>& pieces() const { return pieces_; }

    double weight(double x) const;
    double mass() const { return mass_; } // beta_0(q)

    // exponents of the weight as an affinely shifted Jacobi weight
    // (x-a)^left * (b-x)^right, when the family admits one
    std::optional<std::pair<double, double>> jacobi_exponents() const;

    // integral of weight * phi over the support, endpoint singularities handled
    double integrate(const std::function<double(double)>& phi,
                     double abs_tol = 1e-12, double rel_tol = 1e-10) const;
    double moment(int m) const;

    MeasureTag tag() const;

private:
    double compute_mass() const;

    SpectralDensity sd_;
    int q_;
    double a_, b_;
    std::vector<SupportPiece> pieces_;
    double mass_ = 0.0;
};

// eta_0 = sqrt((2/pi) * int J), eta_1 = sqrt(int J(sqrt(x)) dx / (pi * omega_max))
std::pair<double, double> eta_constants(const SpectralDensity& sd);

double measure_mass(const Measure& m);

} // namespace bathdisc

#endif
