#include "bathdisc/measures.hpp"
#include "bathdisc/errors.hpp"
#include "bathdisc/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bathdisc {

const char* to_string(Family f) {
    switch (f) {
        case Family::power_law: return "power_law";
        case Family::semicircle: return "semicircle";
        case Family::rubin: return "rubin";
        case Family::gapped: return "gapped";
        case Family::tabulated: return "tabulated";
    }
    return "?";
}

void SpectralDensity::check_support() const {
    if (!std::isfinite(omega_min_) || !std::isfinite(omega_max_))
        throw ValidationError("unbounded_support",
                              "spectral density support must be finite (omega_max < inf)");
    if (omega_min_ < 0.0)
        throw ValidationError("invalid_support", "omega_min must be >= 0");
    if (!(omega_min_ < omega_max_))
        throw ValidationError("invalid_support", "omega_min must be < omega_max");
}

SpectralDensity SpectralDensity::power_law(double s, double alpha, double omega_min, double omega_max) {
    SpectralDensity sd;
    sd.family_ = Family::power_law;
    sd.omega_min_ = omega_min;
    sd.omega_max_ = omega_max;
    sd.s_ = s;
    sd.alpha_ = alpha;
    sd.check_support();
    if (!(s > -1.0))
        throw ValidationError("invalid_params", "power_law exponent must satisfy s > -1");
    if (!(alpha > 0.0))
        throw ValidationError("invalid_params", "power_law amplitude must be > 0");
    return sd;
}

SpectralDensity SpectralDensity::semicircle(double C, double omega_min, double omega_max) {
    SpectralDensity sd;
    sd.family_ = Family::semicircle;
    sd.omega_min_ = omega_min;
    sd.omega_max_ = omega_max;
    sd.C_ = C;
    sd.check_support();
    if (!(C > 0.0)) throw ValidationError("invalid_params", "semicircle amplitude must be > 0");
    return sd;
}

SpectralDensity SpectralDensity::rubin(double C, double omega_min, double omega_max) {
    SpectralDensity sd;
    sd.family_ = Family::rubin;
    sd.omega_min_ = omega_min;
    sd.omega_max_ = omega_max;
    sd.C_ = C;
    sd.check_support();
    if (!(C > 0.0)) throw ValidationError("invalid_params", "rubin amplitude must be > 0");
    return sd;
}

SpectralDensity SpectralDensity::gapped(SpectralDensity base, double omega_i, double omega_f) {
    if (base.family_ == Family::gapped)
        throw ValidationError("invalid_params", "gapped base must not itself be gapped");
    SpectralDensity sd;
    sd.family_ = Family::gapped;
    sd.omega_min_ = base.omega_min_;
    sd.omega_max_ = base.omega_max_;
    sd.gap_lo_ = omega_i;
    sd.gap_hi_ = omega_f;
    sd.base_ = std::make_shared<SpectralDensity>(std::move(base));
    sd.check_support();
    if (!(sd.omega_min_ < omega_i && omega_i < omega_f && omega_f < sd.omega_max_))
        throw ValidationError("invalid_params",
                              "gap must satisfy omega_min < omega_i < omega_f < omega_max");
    return sd;
}

SpectralDensity SpectralDensity::tabulated(std::vector<std::pair<double, double>> samples) {
    SpectralDensity sd;
    sd.family_ = Family::tabulated;
    if (samples.size() < 2)
        throw ValidationError("invalid_params", "tabulated density needs at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second))
            throw ValidationError("invalid_params", "tabulated samples must be finite");
        if (samples[i].second < 0.0)
            throw ValidationError("invalid_params", "tabulated J values must be >= 0");
        if (i > 0 && !(samples[i - 1].first < samples[i].first))
            throw ValidationError("invalid_params", "tabulated omega values must be strictly increasing");
    }
    bool positive = false;
    for (const auto& p : samples)
        if (p.second > 0.0) positive = true;
    if (!positive)
        throw ValidationError("invalid_params", "tabulated density must be positive somewhere");
    sd.omega_min_ = samples.front().first;
    sd.omega_max_ = samples.back().first;
    sd.samples_ = std::move(samples);
    sd.check_support();
    return sd;
}

bool SpectralDensity::massless() const { return omega_min_ < 1e-12 * omega_max_; }

double SpectralDensity::operator()(double omega) const {
    if (omega < omega_min_ || omega > omega_max_) return 0.0;
    switch (family_) {
        case Family::power_law:
            return 2.0 * M_PI * alpha_ * (omega_max_ - omega_min_) * std::pow(omega - omega_min_, s_);
        case Family::semicircle:
            return C_ * std::sqrt(std::max(0.0, (omega_max_ - omega) * (omega - omega_min_)));
        case Family::rubin:
            return C_ * std::sqrt(std::max(0.0, (omega_max_ * omega_max_ - omega * omega) *
                                                    (omega * omega - omega_min_ * omega_min_)));
        case Family::gapped:
            if (omega >= gap_lo_ && omega <= gap_hi_) return 0.0;
            return (*base_)(omega);
        case Family::tabulated: {
            auto it = std::upper_bound(samples_.begin(), samples_.end(), omega,
                                       [](double w, const std::pair<double, double>& p) {
                                           return w < p.first;
                                       });
            if (it == samples_.begin()) return samples_.front().second;
            if (it == samples_.end()) return samples_.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double f = (omega - lo.first) / (hi.first - lo.first);
            return lo.second + f * (hi.second - lo.second);
        }
    }
    return 0.0;
}

nlohmann::ordered_json SpectralDensity::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = to_string(family_);
    nlohmann::ordered_json p;
    switch (family_) {
        case Family::power_law:
            p["s"] = s_;
            p["alpha"] = alpha_;
            break;
        case Family::semicircle:
        case Family::rubin:
            p["C"] = C_;
            break;
        case Family::gapped:
            p["base"] = base_->to_json();
            p["omega_i"] = gap_lo_;
            p["omega_f"] = gap_hi_;
            break;
        case Family::tabulated: {
            nlohmann::ordered_json pts = nlohmann::ordered_json::array();
            for (const auto& s : samples_) pts.push_back({s.first, s.second});
            p["samples"] = pts;
            break;
        }
    }
    j["params"] = p;
    j["omega_min"] = omega_min_;
    j["omega_max"] = omega_max_;
    return j;
}

namespace {

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw ValidationError("missing_field", std::string("spectral density missing field '") + key + "'");
    if (!j[key].is_number())
        throw ValidationError("invalid_field", std::string("spectral density field '") + key + "' must be a number");
    return j[key].get<double>();
}

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw ValidationError("unknown_field", "unknown field '" + it.key() + "' in " + where);
    }
}

} // namespace

SpectralDensity SpectralDensity::from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ValidationError("invalid_field", "spectral density must be a JSON object");
    reject_unknown(j, {"family", "params", "omega_min", "omega_max"}, "spectral density");
    if (!j.contains("family") || !j["family"].is_string())
        throw ValidationError("missing_field", "spectral density needs a string 'family'");
    const std::string fam = j["family"].get<std::string>();
    const nlohmann::json params = j.contains("params") ? j["params"] : nlohmann::json::object();
    if (!params.is_object())
        throw ValidationError("invalid_field", "spectral density 'params' must be an object");

    if (fam == "power_law") {
        reject_unknown(params, {"s", "alpha"}, "power_law params");
        return power_law(require_number(params, "s"), require_number(params, "alpha"),
                         require_number(j, "omega_min"), require_number(j, "omega_max"));
    }
    if (fam == "semicircle") {
        reject_unknown(params, {"C"}, "semicircle params");
        return semicircle(require_number(params, "C"), require_number(j, "omega_min"),
                          require_number(j, "omega_max"));
    }
    if (fam == "rubin") {
        reject_unknown(params, {"C"}, "rubin params");
        return rubin(require_number(params, "C"), require_number(j, "omega_min"),
                     require_number(j, "omega_max"));
    }
    if (fam == "gapped") {
        reject_unknown(params, {"base", "omega_i", "omega_f"}, "gapped params");
        if (!params.contains("base"))
            throw ValidationError("missing_field", "gapped density needs params.base");
        return gapped(from_json(params["base"]), require_number(params, "omega_i"),
                      require_number(params, "omega_f"));
    }
    if (fam == "tabulated") {
        reject_unknown(params, {"samples"}, "tabulated params");
        if (!params.contains("samples") || !params["samples"].is_array())
            throw ValidationError("missing_field", "tabulated density needs params.samples array");
        std::vector<std::pair<double, double>> pts;
        for (const auto& e : params["samples"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ValidationError("invalid_field", "tabulated samples must be [omega, J] pairs");
            pts.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return tabulated(std::move(pts));
    }
    throw ValidationError("unknown_family", "unknown spectral density family '" + fam + "'");
}

// ---------------------------------------------------------------------------

namespace {

// weight exponents of the base density at its own support endpoints,
// in the omega domain
std::pair<double, double> omega_domain_exponents(const SpectralDensity& sd) {
    switch (sd.family()) {
        case Family::power_law: return {sd.power_s(), 0.0};
        case Family::semicircle: return {0.5, 0.5};
        case Family::rubin: return {sd.massless() ? 1.0 : 0.5, 0.5};
        case Family::gapped: return omega_domain_exponents(sd.base());
        case Family::tabulated: return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

// exponents of J(sqrt(x))/pi at the endpoints of [omega_min^2, omega_max^2]
std::pair<double, double> x_domain_exponents(const SpectralDensity& sd) {
    switch (sd.family()) {
        case Family::power_law:
            return {sd.massless() ? 0.5 * sd.power_s() : sd.power_s(), 0.0};
        case Family::semicircle: return {sd.massless() ? 0.25 : 0.5, 0.5};
        case Family::rubin: return {0.5, 0.5};
        case Family::gapped: return x_domain_exponents(sd.base());
        case Family::tabulated: return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

} // namespace

Measure::Measure(SpectralDensity sd, int q) : sd_(std::move(sd)), q_(q) {
    if (q != 0 && q != 1) throw ValidationError("invalid_params", "measure index q must be 0 or 1");
    auto sq = [](double v) { return v * v; };
    a_ = q == 0 ? sd_.omega_min() : sq(sd_.omega_min());
    b_ = q == 0 ? sd_.omega_max() : sq(sd_.omega_max());

    const auto exps = q == 0 ? omega_domain_exponents(sd_) : x_domain_exponents(sd_);
    auto map_x = [&](double w) { return q == 0 ? w : sq(w); };

    if (sd_.family() == Family::gapped) {
        pieces_.push_back({map_x(sd_.omega_min()), map_x(sd_.gap_lo()), exps.first, 0.0});
        pieces_.push_back({map_x(sd_.gap_hi()), map_x(sd_.omega_max()), 0.0, exps.second});
    } else if (sd_.family() == Family::tabulated) {
        for (std::size_t i = 0; i + 1 < sd_.samples().size(); ++i)
            pieces_.push_back({map_x(sd_.samples()[i].first), map_x(sd_.samples()[i + 1].first), 0.0, 0.0});
    } else {
        pieces_.push_back({a_, b_, exps.first, exps.second});
    }
    mass_ = compute_mass();
    if (!(mass_ > 0.0) || !std::isfinite(mass_))
        throw ValidationError("invalid_measure", "measure mass must be finite and positive");
}

double Measure::weight(double x) const {
    if (q_ == 0) return sd_(x) / M_PI;
    if (x < 0.0) return 0.0;
    return sd_(std::sqrt(x)) / M_PI;
}

std::optional<std::pair<double, double>> Measure::jacobi_exponents() const {
    switch (sd_.family()) {
        case Family::power_law:
            if (q_ == 0) return std::make_pair(sd_.power_s(), 0.0);
            if (sd_.massless()) return std::make_pair(0.5 * sd_.power_s(), 0.0);
            return std::nullopt;
        case Family::semicircle:
            if (q_ == 0) return std::make_pair(0.5, 0.5);
            return std::nullopt;
        case Family::rubin:
            if (q_ == 1) return std::make_pair(0.5, 0.5);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

double Measure::compute_mass() const {
    // closed forms where the family admits one, quadrature otherwise
    const double wmin = sd_.omega_min(), wmax = sd_.omega_max();
    const double delta = wmax - wmin;
    switch (sd_.family()) {
        case Family::power_law: {
            const double s = sd_.power_s(), al = sd_.power_alpha();
            if (q_ == 0) return 2.0 * al * std::pow(delta, s + 2.0) / (s + 1.0);
            if (sd_.massless())
                return 4.0 * al * std::pow(wmax, s + 3.0) / (s + 2.0);
            break;
        }
        case Family::semicircle:
            if (q_ == 0) return sd_.amplitude() * delta * delta / 8.0;
            break;
        case Family::rubin:
            if (q_ == 1) {
                const double d2 = wmax * wmax - wmin * wmin;
                return sd_.amplitude() * d2 * d2 / 8.0;
            }
            break;
        default:
            break;
    }
    return integrate([](double) { return 1.0; }, 1e-12, 1e-11);
}

double Measure::integrate(const std::function<double(double)>& phi,
                          double abs_tol, double rel_tol) const {
    double total = 0.0;
    for (const auto& p : pieces_) {
        auto f = [&](double x) { return weight(x) * phi(x); };
        total += integrate_endpoint_weighted(f, p.a, p.b, p.left_exp, p.right_exp,
                                             abs_tol / pieces_.size(), rel_tol)
                     .value;
    }
    return total;
}

double Measure::moment(int m) const {
    return integrate([m](double x) { return std::pow(x, m); }, 1e-13, 1e-11);
}

MeasureTag Measure::tag() const {
    std::ostringstream os;
    os << "mu" << q_ << ":" << to_string(sd_.family());
    return MeasureTag{q_, a_, b_, os.str()};
}

std::pair<double, double> eta_constants(const SpectralDensity& sd) {
    const Measure m0(sd, 0), m1(sd, 1);
    const double eta0 = std::sqrt(2.0 * m0.mass());
    const double eta1 = std::sqrt(m1.mass() / sd.omega_max());
    return {eta0, eta1};
}

double measure_mass(const Measure& m) { return m.mass(); }

} // namespace bathdisc
