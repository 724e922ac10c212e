#include "bathdisc/simsuite.hpp"
#include "bathdisc/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <map>
#include <sstream>

namespace bathdisc {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;

std::vector<double> evolve_single_excitation(const SingleExcitationModel& m,
                                             const std::vector<double>& times) {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw ValidationError("invalid_params", "times must be sorted ascending");
    const int L = m.bath.L;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(L + 1, L + 1);
    H(0, 0) = m.system_gap;
    for (int n = 0; n < L; ++n) {
        H(n + 1, n + 1) = m.bath.frequencies[n];
        H(0, n + 1) = H(n + 1, 0) = m.coupling_scale * m.bath.couplings[n];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        if (t == 0.0) {
            out.push_back(1.0);
            continue;
        }
        Complex amp(0.0, 0.0);
        for (int j = 0; j <= L; ++j) {
            const double c = vecs(0, j);
            amp += c * c * std::exp(Complex(0.0, -vals(j) * t));
        }
        out.push_back(std::norm(amp));
    }
    return out;
}

Eigen::MatrixXd vacuum_covariance(int n_modes) {
    return 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
}

double gaussian_occupation(const Eigen::MatrixXd& sigma, int mode) {
    const int n = static_cast<int>(sigma.rows()) / 2;
    return 0.5 * (sigma(mode, mode) + sigma(n + mode, n + mode) - 1.0);
}

std::vector<Eigen::MatrixXd> evolve_gaussian(const GaussianModel& m,
                                             const std::vector<double>& times) {
    const int L = m.bath.L;
    const int N = L + 1;
    if (m.sigma0.rows() != 2 * N || m.sigma0.cols() != 2 * N)
        throw ValidationError("invalid_params", "sigma0 must be 2(L+1) x 2(L+1)");
    if ((m.sigma0 - m.sigma0.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("invalid_params", "sigma0 must be symmetric");

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    J.topRightCorner(N, N) = Eigen::MatrixXd::Identity(N, N);
    J.bottomLeftCorner(N, N) = -Eigen::MatrixXd::Identity(N, N);

    // sigma + (i/2) J >= 0 up to numerical floor
    {
        Eigen::MatrixXcd heis = m.sigma0.cast<Complex>() + Complex(0.0, 0.5) * J.cast<Complex>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(heis, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-8)
            throw ValidationError("invalid_params",
                                  "sigma0 violates the uncertainty relation");
    }

    Eigen::MatrixXd MX = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd MP = Eigen::MatrixXd::Zero(N, N);
    MX(0, 0) = MP(0, 0) = m.system_frequency;
    for (int n = 0; n < L; ++n) {
        MX(n + 1, n + 1) = MP(n + 1, n + 1) = m.bath.frequencies[n];
        MX(0, n + 1) = MX(n + 1, 0) = std::sqrt(2.0) * m.lambda * m.bath.couplings[n];
    }
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    G.topRightCorner(N, N) = MP;
    G.bottomLeftCorner(N, N) = -MX;

    std::vector<Eigen::MatrixXd> out;
    out.reserve(times.size());
    for (double t : times) {
        Eigen::MatrixXd S = (t * G).exp();
        const double defect = (S * J * S.transpose() - J).cwiseAbs().maxCoeff();
        if (defect > 1e-8) {
            std::ostringstream os;
            os << "symplectic propagator defect " << defect << " at t = " << t;
            throw NumericalError("symplectic_defect", os.str());
        }
        out.push_back(S * m.sigma0 * S.transpose());
    }
    return out;
}

// ---------------------------------------------------------------------------
// spin-boson
// ---------------------------------------------------------------------------

long SpinBosonModel::dimension() const {
    const int levels = fock_cutoff + 1;
    long b = 1;
    for (int i = 0; i < bath.L; ++i) {
        b *= levels;
        if (b > (1L << 40)) return b;
    }
    return 2 * b;
}

namespace {

// Real symmetric Hamiltonian on (spin) x (L modes with `levels` Fock states),
// assembled from mode-operator terms into CSR storage.
class FockSpinHamiltonian {
public:
    FockSpinHamiltonian(int L, int levels) : L_(L), levels_(levels) {
        block_ = 1;
        strides_.resize(L);
        for (int i = 0; i < L; ++i) {
            strides_[i] = block_;
            block_ *= levels;
        }
        rows_.assign(2 * block_, {});
    }

    long block() const { return block_; }
    long dim() const { return 2 * block_; }

    int digit(long f, int i) const { return int((f / strides_[i]) % levels_); }

    // sigma_z splitting: +alpha on the first spin block, -alpha on the second
    void add_sigma_z(double alpha) {
        for (long f = 0; f < block_; ++f) {
            rows_[f][f] += alpha;
            rows_[block_ + f][block_ + f] -= alpha;
        }
    }

    // diagonal bath energy sum_i e_i * n_i
    void add_number(const std::vector<double>& energies) {
        for (long f = 0; f < block_; ++f) {
            double en = 0.0;
            for (int i = 0; i < L_; ++i) en += energies[i] * digit(f, i);
            rows_[f][f] += en;
            rows_[block_ + f][block_ + f] += en;
        }
    }

    // c * sigma_x (x) (b_i' + b_i)
    void add_spin_flip_displacement(int i, double c) {
        for (int s = 0; s < 2; ++s) {
            const long off = s * block_, flip = (1 - s) * block_;
            for (long f = 0; f < block_; ++f) {
                const int ni = digit(f, i);
                if (ni + 1 < levels_)
                    rows_[flip + f + strides_[i]][off + f] += c * std::sqrt(double(ni + 1));
                if (ni > 0) rows_[flip + f - strides_[i]][off + f] += c * std::sqrt(double(ni));
            }
        }
    }

    // c * (b_i' b_j + b_j' b_i), i != j
    void add_hop(int i, int j, double c) {
        for (int s = 0; s < 2; ++s) {
            const long off = s * block_;
            for (long f = 0; f < block_; ++f) {
                const int ni = digit(f, i), nj = digit(f, j);
                if (nj > 0 && ni + 1 < levels_) {
                    const double amp = c * std::sqrt(double(nj)) * std::sqrt(double(ni + 1));
                    rows_[off + f - strides_[j] + strides_[i]][off + f] += amp;
                    rows_[off + f][off + f - strides_[j] + strides_[i]] += amp;
                }
            }
        }
    }

    // c * (b_i' + b_i)(b_j' + b_j), i != j
    void add_displacement_product(int i, int j, double c) {
        for (int s = 0; s < 2; ++s) {
            const long off = s * block_;
            for (long f = 0; f < block_; ++f) {
                const int ni = digit(f, i), nj = digit(f, j);
                const double up_i = ni + 1 < levels_ ? std::sqrt(double(ni + 1)) : 0.0;
                const double dn_i = ni > 0 ? std::sqrt(double(ni)) : 0.0;
                const double up_j = nj + 1 < levels_ ? std::sqrt(double(nj + 1)) : 0.0;
                const double dn_j = nj > 0 ? std::sqrt(double(nj)) : 0.0;
                if (up_i != 0.0 && up_j != 0.0)
                    rows_[off + f + strides_[i] + strides_[j]][off + f] += c * up_i * up_j;
                if (up_i != 0.0 && dn_j != 0.0)
                    rows_[off + f + strides_[i] - strides_[j]][off + f] += c * up_i * dn_j;
                if (dn_i != 0.0 && up_j != 0.0)
                    rows_[off + f - strides_[i] + strides_[j]][off + f] += c * dn_i * up_j;
                if (dn_i != 0.0 && dn_j != 0.0)
                    rows_[off + f - strides_[i] - strides_[j]][off + f] += c * dn_i * dn_j;
            }
        }
    }

    // c * (b_i'^2 + b_i^2)
    void add_squeeze(int i, double c) {
        for (int s = 0; s < 2; ++s) {
            const long off = s * block_;
            for (long f = 0; f < block_; ++f) {
                const int ni = digit(f, i);
                if (ni + 2 < levels_) {
                    const double amp = c * std::sqrt(double(ni + 1)) * std::sqrt(double(ni + 2));
                    rows_[off + f + 2 * strides_[i]][off + f] += amp;
                    rows_[off + f][off + f + 2 * strides_[i]] += amp;
                }
            }
        }
    }

    void finalize() {
        row_ptr_.assign(dim() + 1, 0);
        long nnz = 0;
        for (long r = 0; r < dim(); ++r) {
            row_ptr_[r] = nnz;
            nnz += static_cast<long>(rows_[r].size());
        }
        row_ptr_[dim()] = nnz;
        col_.resize(nnz);
        val_.resize(nnz);
        long k = 0;
        for (long r = 0; r < dim(); ++r)
            for (const auto& [c, v] : rows_[r]) {
                col_[k] = c;
                val_[k] = v;
                ++k;
            }
        rows_.clear();
        rows_.shrink_to_fit();
    }

    void apply(const VectorXcd& x, VectorXcd& y) const {
        const long D = dim();
        for (long r = 0; r < D; ++r) {
            Complex acc(0.0, 0.0);
            for (long k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += val_[k] * x[col_[k]];
            y[r] = acc;
        }
    }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim(), dim());
        for (long r = 0; r < dim(); ++r)
            for (long k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) H(r, col_[k]) = val_[k];
        return H;
    }

private:
    int L_, levels_;
    long block_ = 1;
    std::vector<long> strides_;
    std::vector<std::map<long, double>> rows_;
    std::vector<long> row_ptr_, col_;
    std::vector<double> val_;
};

long fock_dimension(int L, int levels, int cap) {
    long b = 1;
    for (int i = 0; i < L; ++i) {
        b *= levels;
        if (2 * b > 4 * long(cap)) return 2 * b; // early out, already over any cap
    }
    return 2 * b;
}

VectorXcd number_product_state(const Eigen::Vector2cd& system_state, int n0, int L,
                               int levels, const FockSpinHamiltonian& h) {
    if (n0 >= levels)
        throw ValidationError("invalid_params", "initial occupation n0 exceeds the Fock cutoff");
    const double norm = std::sqrt(std::norm(system_state[0]) + std::norm(system_state[1]));
    if (!(norm > 0.0))
        throw ValidationError("invalid_params", "system state must be nonzero");
    long f0 = 0;
    long stride = 1;
    for (int i = 0; i < L; ++i) {
        f0 += long(n0) * stride;
        stride *= levels;
    }
    VectorXcd psi = VectorXcd::Zero(h.dim());
    psi[f0] = system_state[0] / norm;
    psi[h.block() + f0] = system_state[1] / norm;
    return psi;
}

double observable_expectation(const Eigen::Matrix2cd& O, const VectorXcd& psi, long block) {
    Complex acc(0.0, 0.0);
    for (long f = 0; f < block; ++f) {
        const Complex a = psi[f];         // |e> component
        const Complex b = psi[block + f]; // |g> component
        acc += std::conj(a) * (O(0, 0) * a + O(0, 1) * b);
        acc += std::conj(b) * (O(1, 0) * a + O(1, 1) * b);
    }
    return acc.real();
}

// one Lanczos approximation of e^{-i dt H} v; returns the error estimate
double lanczos_exp_step(const FockSpinHamiltonian& op, VectorXcd& v, double dt, int m_max) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) return 0.0;
    const long D = v.size();
    const int m = int(std::min<long>(m_max, D));

    std::vector<VectorXcd> basis;
    basis.reserve(m + 1);
    basis.push_back(v / beta0);
    std::vector<double> a(m, 0.0), b(m, 0.0);
    VectorXcd w(D);
    int used = m;
    for (int j = 0; j < m; ++j) {
        op.apply(basis[j], w);
        a[j] = std::real(basis[j].dot(w));
        w -= a[j] * basis[j];
        if (j > 0) w -= b[j - 1] * basis[j - 1];
        // one reorthogonalisation pass keeps the basis clean at these sizes
        for (const auto& u : basis) w -= u.dot(w) * u;
        const double nb = w.norm();
        if (j + 1 < m) b[j] = nb;
        if (nb < 1e-14) {
            used = j + 1;
            break;
        }
        if (j + 1 < m) basis.push_back(w / nb);
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
    for (int j = 0; j < used; ++j) {
        T(j, j) = a[j];
        if (j + 1 < used) T(j, j + 1) = T(j + 1, j) = b[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    VectorXcd e1 = VectorXcd::Zero(used);
    e1[0] = 1.0;
    VectorXcd small = es.eigenvectors().cast<Complex>().adjoint() * e1;
    for (int j = 0; j < used; ++j)
        small[j] *= std::exp(Complex(0.0, -es.eigenvalues()(j) * dt));
    small = es.eigenvectors().cast<Complex>() * small;

    VectorXcd result = VectorXcd::Zero(D);
    for (int j = 0; j < used; ++j) result += small[j] * basis[j];
    v = beta0 * result;
    const double err = used < m ? 0.0 : std::abs(b[used - 2]) * std::abs(small[used - 1]);
    return err;
}

void propagate_lanczos(const FockSpinHamiltonian& op, VectorXcd& psi, double dt) {
    if (dt == 0.0) return;
    const double tol = 1e-10;
    double remaining = dt;
    double step = dt;
    int guard = 0;
    while (remaining > 1e-15 * std::abs(dt)) {
        if (++guard > 100000)
            throw NumericalError("krylov_stagnation", "Lanczos propagation failed to advance");
        const double h = std::min(step, remaining);
        VectorXcd trial = psi;
        const double err = lanczos_exp_step(op, trial, h, 40);
        if (err > tol && h > 1e-8 * std::abs(dt)) {
            step = 0.5 * h;
            continue;
        }
        psi = trial;
        remaining -= h;
        if (err < 0.01 * tol) step = std::min(2.0 * h, remaining > 0 ? remaining : h);
    }
}

} // namespace

namespace {

std::vector<double> evolve_fock(const FockSpinHamiltonian& op, const VectorXcd& psi0,
                                const Eigen::Matrix2cd& O, const std::vector<double>& times,
                                int dense_threshold) {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw ValidationError("invalid_params", "times must be sorted ascending");
    if ((O - O.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("invalid_params", "observable must be self-adjoint");
    const long D = op.dim();
    std::vector<double> out;
    out.reserve(times.size());

    if (D < dense_threshold) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
        const VectorXcd coeff = es.eigenvectors().cast<Complex>().adjoint() * psi0;
        for (double t : times) {
            if (t == 0.0) {
                out.push_back(observable_expectation(O, psi0, op.block()));
                continue;
            }
            VectorXcd phase = coeff;
            for (long j = 0; j < phase.size(); ++j)
                phase[j] *= std::exp(Complex(0.0, -es.eigenvalues()(j) * t));
            const VectorXcd psi = es.eigenvectors().cast<Complex>() * phase;
            out.push_back(observable_expectation(O, psi, op.block()));
        }
        return out;
    }

    VectorXcd psi = psi0;
    double current = 0.0;
    for (double t : times) {
        propagate_lanczos(op, psi, t - current);
        current = t;
        const double norm = psi.norm();
        if (std::abs(norm - 1.0) > 1e-8)
            throw NumericalError("unitarity_loss", "propagated state lost normalisation");
        out.push_back(observable_expectation(O, psi, op.block()));
    }
    return out;
}

void check_dimension(long D, int cap) {
    if (D > cap) {
        std::ostringstream os;
        os << "spin-boson dimension " << D << " exceeds the cap " << cap;
        throw ValidationError("dimension_cap", os.str());
    }
}

} // namespace

std::vector<double> evolve_spin_boson(const SpinBosonModel& m, const Eigen::Matrix2cd& O,
                                      const std::vector<double>& times) {
    const int levels = m.fock_cutoff + 1;
    check_dimension(fock_dimension(m.bath.L, levels, m.dimension_cap), m.dimension_cap);
    FockSpinHamiltonian h(m.bath.L, levels);
    h.add_sigma_z(m.alpha);
    h.add_number(m.bath.frequencies);
    for (int i = 0; i < m.bath.L; ++i) h.add_spin_flip_displacement(i, m.bath.couplings[i]);
    h.finalize();
    const VectorXcd psi0 = number_product_state(m.system_state, m.n0, m.bath.L, levels, h);
    return evolve_fock(h, psi0, O, times, m.dense_threshold);
}

std::vector<double> evolve_spin_boson_chain(const SpinBosonChainModel& m,
                                            const Eigen::Matrix2cd& O,
                                            const std::vector<double>& times) {
    const int levels = m.fock_cutoff + 1;
    const int L = m.chain.size();
    check_dimension(fock_dimension(L, levels, m.dimension_cap), m.dimension_cap);
    FockSpinHamiltonian h(L, levels);
    h.add_sigma_z(m.alpha);
    if (m.chain.q == 0) {
        // number-conserving hopping chain: sum alpha_n b'b + sqrt(beta_{n+1}) (b'b + h.c.)
        h.add_number(m.chain.site_energies);
        for (int n = 0; n + 1 < L; ++n) h.add_hop(n, n + 1, m.chain.hops[n]);
        h.add_spin_flip_displacement(0, m.chain.system_coupling);
    } else {
        // position-coupled chain in canonical quadratures:
        // site terms (alpha_n/(2w)) x^2 + (w/2) p^2, hops (beta^{1/2}/w) x x,
        // coupling kappa sigma_x x_0 with kappa = sqrt(beta_0(1)/w)
        const double wmax = m.chain.source.omega_max();
        std::vector<double> number_coeff(L);
        for (int n = 0; n < L; ++n) {
            const double a = m.chain.site_energies[n] / (2.0 * wmax);
            const double b = 0.5 * wmax;
            number_coeff[n] = a + b;
            h.add_squeeze(n, 0.5 * (a - b));
        }
        h.add_number(number_coeff);
        for (int n = 0; n + 1 < L; ++n)
            h.add_displacement_product(n, n + 1, 0.5 * m.chain.hops[n] / wmax);
        h.add_spin_flip_displacement(0, m.chain.system_coupling / std::sqrt(2.0));
    }
    h.finalize();
    const VectorXcd psi0 = number_product_state(m.system_state, m.n0, L, levels, h);
    return evolve_fock(h, psi0, O, times, m.dense_threshold);
}

namespace {

std::vector<double> model_curve(const SpectralDensity& sd, Scheme scheme, ModelKind kind,
                                int L, const std::vector<double>& times,
                                const ModelOptions& opts, int cutoff) {
    switch (kind) {
        case ModelKind::single_excitation: {
            SingleExcitationModel m{discretize(sd, scheme, L), opts.system_gap,
                                    opts.coupling_scale};
            return evolve_single_excitation(m, times);
        }
        case ModelKind::gaussian: {
            GaussianModel m;
            m.bath = discretize(sd, scheme, L);
            m.system_frequency = opts.system_gap;
            m.lambda = opts.lambda;
            m.sigma0 = vacuum_covariance(L + 1);
            m.sigma0(0, 0) += opts.system_occupation;
            m.sigma0(L + 1, L + 1) += opts.system_occupation;
            auto sigmas = evolve_gaussian(m, times);
            std::vector<double> occ;
            occ.reserve(sigmas.size());
            for (const auto& s : sigmas) occ.push_back(gaussian_occupation(s, 0));
            return occ;
        }
        case ModelKind::spin_boson: {
            // chain representation: number-product initial states over chain
            // sites are the family the gamma-norm formula certifies, and
            // truncations of different length share them exactly
            SpinBosonChainModel m;
            m.chain = chain_coefficients(sd, scheme == Scheme::BC ? 0 : 1, L);
            m.alpha = opts.sb_alpha;
            m.fock_cutoff = cutoff;
            m.n0 = opts.n0;
            m.system_state = opts.system_state;
            m.dimension_cap = opts.dimension_cap;
            return evolve_spin_boson_chain(m, opts.observable, times);
        }
    }
    throw ValidationError("invalid_params", "unknown model kind");
}

} // namespace

ErrorCurve empirical_discretisation_error(const SpectralDensity& sd, Scheme scheme,
                                          ModelKind kind, int L, int L_ref,
                                          const std::vector<double>& times,
                                          const ModelOptions& opts) {
    if (L < 1 || L_ref < L)
        throw ValidationError("invalid_params", "need 1 <= L <= L_ref");
    ErrorCurve curve;
    curve.times = times;
    const auto a = model_curve(sd, scheme, kind, L, times, opts, opts.fock_cutoff);
    const auto b = L_ref == L ? a : model_curve(sd, scheme, kind, L_ref, times, opts, opts.fock_cutoff);
    curve.errors.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) curve.errors[i] = std::abs(a[i] - b[i]);
    return curve;
}

ComparisonTable bound_vs_empirical(const SpectralDensity& sd, Scheme scheme, int L, int L_ref,
                                   const std::vector<double>& times, const ModelOptions& opts) {
    if (L < 1 || L_ref < L)
        throw ValidationError("invalid_params", "need 1 <= L <= L_ref");
    const double norm_O = [&] {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(opts.observable,
                                                           Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }();
    BoundParams p;
    p.norm_O = norm_O;
    p.norm_A = 1.0; // ||sigma_x||
    p.gamma_norm = gamma_norm_number_state(opts.n0);

    const auto y_L = model_curve(sd, scheme, ModelKind::spin_boson, L, times, opts, opts.fock_cutoff);
    const auto y_R =
        model_curve(sd, scheme, ModelKind::spin_boson, L_ref, times, opts, opts.fock_cutoff);
    const auto y_L1 =
        model_curve(sd, scheme, ModelKind::spin_boson, L, times, opts, opts.fock_cutoff + 1);
    const auto y_R1 =
        model_curve(sd, scheme, ModelKind::spin_boson, L_ref, times, opts, opts.fock_cutoff + 1);

    ComparisonTable table;
    table.scheme = scheme;
    table.L = L;
    table.L_ref = L_ref;
    table.rows.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        ComparisonRow& row = table.rows[i];
        row.t = times[i];
        row.empirical = std::abs(y_L[i] - y_R[i]);
        row.bound_L = bound_for(sd, scheme, p, times[i], L);
        row.bound_Lref = bound_for(sd, scheme, p, times[i], L_ref);
        row.cutoff_delta = std::abs(y_L1[i] - y_L[i]) + std::abs(y_R1[i] - y_R[i]);
        row.ceiling = row.bound_L + row.bound_Lref + row.cutoff_delta;
        row.violation = row.empirical > row.ceiling;
    }
    return table;
}

} // namespace bathdisc
