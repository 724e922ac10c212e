#ifndef BATHDISC_DISCRETIZE_HPP
#define BATHDISC_DISCRETIZE_HPP

#include "bathdisc/orthopoly.hpp"

#include <vector>

namespace bathdisc {

// Star-form bath coefficients. BC: frequencies are the mu_0 Gauss knots and
// couplings the square-rooted weights h_n. S2: frequencies are the square
// roots of the mu_1 knots and couplings h'_n / sqrt(2*frequency).
struct DiscretizedBath {
    Scheme scheme = Scheme::BC;
    int L = 0;
    std::vector<double> frequencies; // descending
    std::vector<double> couplings;   // positive amplitudes
    SpectralDensity source;
    MeasureTag measure;
};

DiscretizedBath discretize(const SpectralDensity& sd, Scheme scheme, int L);

// Nearest-neighbour chain form: site energies alpha_n(q), hops sqrt(beta_{n+1}(q)),
// system coupling sqrt(beta_0(0)) or sqrt(beta_0(1)/omega_max).
struct ChainCoefficients {
    int q = 0;
    std::vector<double> site_energies;
    std::vector<double> hops; // size N-1
    double system_coupling = 0.0;
    SpectralDensity source;
    MeasureTag measure;
    int size() const { return static_cast<int>(site_energies.size()); }
};

ChainCoefficients chain_coefficients(const SpectralDensity& sd, int q, int n);

// Diagonalise the L-truncated chain and return the star form; must agree with
// discretize(source, scheme, L) elementwise.
DiscretizedBath chain_to_star(const ChainCoefficients& cc, int L);

struct BathEntry {
    SpectralDensity sd;
    Scheme scheme = Scheme::BC;
    int L = 1;
    double norm_A = 1.0; // ||A_S^{(m)}||
};

struct MultiBathSpec {
    std::vector<BathEntry> baths;
    double norm_O = 1.0; // shared ||O||
    std::string system;
};

std::vector<DiscretizedBath> assemble_multibath(const MultiBathSpec& spec);

} // namespace bathdisc

#endif
