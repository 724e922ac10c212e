#ifndef BATHDISC_SIMSUITE_HPP
#define BATHDISC_SIMSUITE_HPP

#include "bathdisc/bounds.hpp"
#include "bathdisc/discretize.hpp"

#include <Eigen/Dense>

#include <vector>

namespace bathdisc {

// Rotating-wave verification harness restricted to the single-excitation
// sector {|e, vac>, |g, 1_n>}; the Hamiltonian is a real symmetric
// (L+1) x (L+1) arrowhead matrix.
struct SingleExcitationModel {
    DiscretizedBath bath;
    double system_gap = 1.0;     // Omega
    double coupling_scale = 1.0; // multiplies the bath couplings
};

// survival probabilities |<e,vac| e^{-iHt} |e,vac>|^2
std::vector<double> evolve_single_excitation(const SingleExcitationModel& m,
                                             const std::vector<double>& times);

// Quadratic (Gaussian) instance with full x (x) x coupling; evolves covariance
// matrices by the symplectic propagator of the classical generator.
struct GaussianModel {
    DiscretizedBath bath;
    double system_frequency = 1.0; // Omega
    double lambda = 1.0;           // linear coupling scale, A_S = lambda * x_s
    Eigen::MatrixXd sigma0;        // 2(L+1) x 2(L+1), ordering (x..., p...)
};

Eigen::MatrixXd vacuum_covariance(int n_modes);
double gaussian_occupation(const Eigen::MatrixXd& sigma, int mode);

std::vector<Eigen::MatrixXd> evolve_gaussian(const GaussianModel& m,
                                             const std::vector<double>& times);

// Spin-boson instance H = alpha*sigma_z + sigma_x (x) sum h_n (c'+c) + sum w_n c'c
// on a per-mode Fock truncation. ||A_S|| = 1.
struct SpinBosonModel {
    DiscretizedBath bath;
    double alpha = 0.5;                       // H_S = alpha * sigma_z
    int fock_cutoff = 3;                      // levels per mode = cutoff + 1
    int n0 = 0;                               // number-product initial bath state
    Eigen::Vector2cd system_state{1.0, 0.0};  // (e, g) amplitudes
    int dimension_cap = 8192;
    int dense_threshold = 4096; // eigendecomposition below, Lanczos above

    long dimension() const;
};

// expectation values <O (x) 1>(t); dense eigendecomposition below dimension
// 4096, Lanczos propagation above it
std::vector<double> evolve_spin_boson(const SpinBosonModel& m, const Eigen::Matrix2cd& O,
                                      const std::vector<double>& times);

// Spin-boson instance in the chain representation: the bath is the truncated
// nearest-neighbour chain, the initial bath state a number product over chain
// sites. This is the state family whose gamma norm the number-state formula
// certifies, and chain truncations of different length share it exactly.
struct SpinBosonChainModel {
    ChainCoefficients chain;
    double alpha = 0.5;
    int fock_cutoff = 3;
    int n0 = 0;
    Eigen::Vector2cd system_state{1.0, 0.0};
    int dimension_cap = 8192;
    int dense_threshold = 4096;
};

std::vector<double> evolve_spin_boson_chain(const SpinBosonChainModel& m,
                                            const Eigen::Matrix2cd& O,
                                            const std::vector<double>& times);

enum class ModelKind { single_excitation, gaussian, spin_boson };

struct ModelOptions {
    double system_gap = 1.0;
    double coupling_scale = 1.0;
    double lambda = 1.0;
    double system_occupation = 1.0; // gaussian initial occupation of the system mode
    double sb_alpha = 0.5;
    int fock_cutoff = 3;
    int n0 = 0;
    Eigen::Vector2cd system_state{1.0, 0.0};
    int dimension_cap = 8192;
    Eigen::Matrix2cd observable = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
};

struct ErrorCurve {
    std::vector<double> times;
    std::vector<double> errors; // |<O>_L - <O>_{L_ref}|
};

// Discretisation error against a large-L reference, same initial state
// embedded in both truncations.
ErrorCurve empirical_discretisation_error(const SpectralDensity& sd, Scheme scheme,
                                          ModelKind kind, int L, int L_ref,
                                          const std::vector<double>& times,
                                          const ModelOptions& opts);

struct ComparisonRow {
    double t = 0.0;
    double empirical = 0.0;
    double bound_L = 0.0;
    double bound_Lref = 0.0;
    double ceiling = 0.0; // bound_L + bound_Lref + cutoff_delta
    double cutoff_delta = 0.0;
    bool violation = false;
};

struct ComparisonTable {
    Scheme scheme = Scheme::BC;
    int L = 1;
    int L_ref = 2;
    std::vector<ComparisonRow> rows;
};

// Analytic bound next to the observed L-vs-L_ref spin-boson error; the
// certified ceiling is bound(L) + bound(L_ref) + cutoff_delta, with the delta
// measured by re-running at fock_cutoff + 1.
ComparisonTable bound_vs_empirical(const SpectralDensity& sd, Scheme scheme, int L, int L_ref,
                                   const std::vector<double>& times, const ModelOptions& opts);

} // namespace bathdisc

#endif
