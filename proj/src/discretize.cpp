#include "bathdisc/discretize.hpp"
#include "bathdisc/errors.hpp"

#include <cmath>

namespace bathdisc {

namespace {

DiscretizedBath bath_from_rule(const GaussRule& rule, Scheme scheme, SpectralDensity sd) {
    DiscretizedBath bath;
    bath.scheme = scheme;
    bath.L = rule.L;
    bath.source = std::move(sd);
    bath.measure = rule.measure;
    bath.frequencies.resize(rule.L);
    bath.couplings.resize(rule.L);
    for (int i = 0; i < rule.L; ++i) {
        const double h = std::sqrt(rule.weights[i]);
        if (scheme == Scheme::BC) {
            bath.frequencies[i] = rule.knots[i];
            bath.couplings[i] = h;
        } else {
            // massless mu_1 knots can round a hair below zero
            const double knot = std::max(rule.knots[i], 0.0);
            const double freq = std::sqrt(knot);
            if (!(freq > 0.0))
                throw NumericalError("ill_conditioned_rule",
                                     "S2 knot collapsed to zero frequency");
            bath.frequencies[i] = freq;
            bath.couplings[i] = h / std::sqrt(2.0 * freq);
        }
    }
    return bath;
}

} // namespace

DiscretizedBath discretize(const SpectralDensity& sd, Scheme scheme, int L) {
    if (L < 1) throw ValidationError("invalid_params", "discretisation needs L >= 1");
    const Measure m(sd, scheme == Scheme::BC ? 0 : 1);
    const auto rc = recurrence_for(m, L);
    return bath_from_rule(gauss_rule(rc, L), scheme, sd);
}

ChainCoefficients chain_coefficients(const SpectralDensity& sd, int q, int n) {
    if (n < 1) throw ValidationError("invalid_params", "chain needs n >= 1 sites");
    if (q != 0 && q != 1) throw ValidationError("invalid_params", "q must be 0 or 1");
    const Measure m(sd, q);
    const auto rc = recurrence_for(m, n);
    ChainCoefficients cc;
    cc.q = q;
    cc.source = sd;
    cc.measure = rc.measure;
    cc.site_energies = rc.alpha;
    cc.hops.resize(n - 1);
    for (int k = 0; k + 1 < n; ++k) cc.hops[k] = std::sqrt(rc.beta[k + 1]);
    cc.system_coupling = q == 0 ? std::sqrt(rc.beta[0])
                                : std::sqrt(rc.beta[0] / sd.omega_max());
    return cc;
}

DiscretizedBath chain_to_star(const ChainCoefficients& cc, int L) {
    if (L < 1 || L > cc.size())
        throw ValidationError("invalid_params", "chain truncation must satisfy 1 <= L <= N");
    RecurrenceCoefficients rc;
    rc.measure = cc.measure;
    rc.alpha.assign(cc.site_energies.begin(), cc.site_energies.begin() + L);
    rc.beta.resize(L);
    const double wmax = cc.source.omega_max();
    rc.beta[0] = cc.q == 0 ? cc.system_coupling * cc.system_coupling
                           : cc.system_coupling * cc.system_coupling * wmax;
    for (int k = 1; k < L; ++k) rc.beta[k] = cc.hops[k - 1] * cc.hops[k - 1];
    return bath_from_rule(gauss_rule(rc, L), cc.q == 0 ? Scheme::BC : Scheme::S2, cc.source);
}

std::vector<DiscretizedBath> assemble_multibath(const MultiBathSpec& spec) {
    if (spec.baths.empty())
        throw ValidationError("invalid_params", "multibath spec needs at least one bath");
    std::vector<DiscretizedBath> out;
    out.reserve(spec.baths.size());
    for (const auto& entry : spec.baths) out.push_back(discretize(entry.sd, entry.scheme, entry.L));
    return out;
}

} // namespace bathdisc
