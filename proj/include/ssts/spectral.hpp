/// @file spectral.hpp
/// @brief Spectral analysis behind parameter selection: generalized
///        eigenvalue extremes of (W, T), the eta -> mu map, spectral radii of
///        the iteration operators, the convergence threshold, the optimal
///        (alpha, omega) pair, and dense verification of the iteration-matrix
///        and preconditioned-matrix spectra.
///
/// Conventions. Generalized eigenvalues are oriented as T v = eta W v with
/// W SPD; eigenvalues mu of St = Wt^-1 Tt then satisfy
/// mu = (omega*eta - 1) / (omega + eta). The iteration matrix of the
/// triangular splitting is
///     H = [[0, St], [0, (a-1)/a I - St^2 / a]],
/// whose nonzero eigenvalues are 1 - (1 + mu_i^2)/a; the preconditioned
/// matrix is Gamma = [[I, -St], [0, (I + St^2)/a]] with eigenvalue 1 of
/// multiplicity >= n and the rest (1 + mu_i^2)/a.

#ifndef SSTS_SPECTRAL_HPP
#define SSTS_SPECTRAL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ssts/eigen_bridge.hpp"
#include "ssts/lanczos.hpp"
#include "ssts/sparse.hpp"
#include "ssts/spd_solve.hpp"
#include "ssts/transform.hpp"

namespace ssts {

enum class EigMode { dense, lanczos };

inline constexpr index_t kDenseEigMaxN = 4096;

namespace detail {
inline void ensure_dense_scale(index_t n) {
    if (n > kDenseEigMaxN)
        throw std::invalid_argument("dense spectral verification capped at n=4096, got n=" +
                                    std::to_string(n));
}

inline Eigen::MatrixXd checked_spd_dense(const SparseSym& W) {
    Eigen::MatrixXd Wd = to_eigen_dense(W);
    Eigen::LLT<Eigen::MatrixXd> llt(Wd);
    if (llt.info() != Eigen::Success) throw NotSpdError("dense eigensolve: W not SPD", -1);
    return Wd;
}
}  // namespace detail

/// All generalized eigenvalues of T v = eta W v, ascending. Dense mode is
/// exact (n <= 4096) via the SPD reduction; lanczos mode returns Ritz values
/// whose extremes are sharp and whose interior is heuristic.
inline std::vector<double> gen_eig_spectrum(const SparseSym& W, const SparseSym& T, EigMode mode,
                                            const LanczosOptions& opts = {}) {
    if (W.rows() != T.rows()) throw std::invalid_argument("gen_eig_spectrum: dimension mismatch");
    if (mode == EigMode::lanczos) return generalized_ritz_values(W, T, opts);
    detail::ensure_dense_scale(W.rows());
    const Eigen::MatrixXd Wd = detail::checked_spd_dense(W);
    const Eigen::MatrixXd Td = to_eigen_dense(T);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
        Td, Wd, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    const Eigen::VectorXd& ev = ges.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

inline std::pair<double, double> gen_eig_extremes(const SparseSym& W, const SparseSym& T,
                                                  EigMode mode, const LanczosOptions& opts = {}) {
    const std::vector<double> etas = gen_eig_spectrum(W, T, mode, opts);
    if (etas.empty()) throw std::runtime_error("gen_eig_extremes: empty spectrum");
    return {etas.front(), etas.back()};
}

/// mu = (omega*eta - 1) / (omega + eta), the eigenvalue map from the pencil
/// (W, T) to St at parameter omega. Signed value; the denominator is positive
/// for omega > 0, eta >= 0.
inline double mu_from_eta(double eta, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("mu_from_eta: omega must be > 0");
    if (eta < 0.0) throw std::invalid_argument("mu_from_eta: eta must be >= 0");
    return (omega * eta - 1.0) / (omega + eta);
}

/// Spectral radius of St from the eta extremes:
/// max{(1 - w*eta_min)/(w + eta_min), (w*eta_max - 1)/(w + eta_max)}.
inline double rho_s(double eta_min, double eta_max, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("rho_s: omega must be > 0");
    return std::max((1.0 - omega * eta_min) / (omega + eta_min),
                    (omega * eta_max - 1.0) / (omega + eta_max));
}

/// omega minimizing mu_max:
/// (1 - eta_min*eta_max + sqrt((1 + eta_min^2)(1 + eta_max^2))) / (eta_min + eta_max).
inline double optimal_omega(double eta_min, double eta_max) {
    if (eta_min < 0.0 || eta_max < eta_min)
        throw std::invalid_argument("optimal_omega: need 0 <= eta_min <= eta_max");
    if (eta_min + eta_max == 0.0)
        throw std::invalid_argument("optimal_omega: degenerate pair (eta_min = eta_max = 0)");
    return (1.0 - eta_min * eta_max +
            std::sqrt((1.0 + eta_min * eta_min) * (1.0 + eta_max * eta_max))) /
           (eta_min + eta_max);
}

/// alpha minimizing the iteration-matrix radius: (2 + mu_min^2 + mu_max^2)/2.
inline double optimal_alpha(double mu_min, double mu_max) {
    if (!(mu_min >= 0.0 && mu_max >= mu_min))
        throw std::invalid_argument("optimal_alpha: need 0 <= mu_min <= mu_max");
    return 0.5 * (2.0 + mu_min * mu_min + mu_max * mu_max);
}

/// Iteration-matrix spectral radius from the |mu| extremes:
/// max{|1 - (1 + mu_min^2)/a|, |1 - (1 + mu_max^2)/a|}.
inline double rho_h(double mu_min, double mu_max, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("rho_h: alpha must be > 0");
    return std::max(std::abs(1.0 - (1.0 + mu_min * mu_min) / alpha),
                    std::abs(1.0 - (1.0 + mu_max * mu_max) / alpha));
}

/// Convergence boundary: the iteration converges iff alpha > (1 + mu_max^2)/2.
inline double alpha_threshold(double mu_max) {
    if (mu_max < 0.0) throw std::invalid_argument("alpha_threshold: mu_max must be >= 0");
    return 0.5 * (1.0 + mu_max * mu_max);
}

struct SpectralEstimates {
    double eta_min = 0.0;
    double eta_max = 0.0;
    double mu_min = 0.0;   // min |mu| over the (mapped) spectrum at omega_mu
    double mu_max = 0.0;   // max |mu|
    double alpha_opt = 0.0;
    double omega_opt = 0.0;
    double rho_opt = 0.0;  // (mu_max^2 - mu_min^2) / (2 + mu_min^2 + mu_max^2)
    double omega_mu = 0.0; // omega the mu extremes were computed at (= omega_opt)
    EigMode mode = EigMode::dense;
};

/// The full parameter-selection pipeline: eta spectrum -> omega_opt ->
/// mu extremes at omega_opt -> alpha_opt and the optimal convergence factor.
/// In dense mode mu_min uses the complete spectrum; in lanczos mode it is the
/// minimum over mapped Ritz values (extreme and interior), which is heuristic
/// for interior accuracy but second-order for alpha_opt.
inline SpectralEstimates analyze(const SparseSym& W, const SparseSym& T, EigMode mode,
                                 const LanczosOptions& opts = {}) {
    const std::vector<double> etas = gen_eig_spectrum(W, T, mode, opts);
    SpectralEstimates est;
    est.mode = mode;
    est.eta_min = etas.front();
    est.eta_max = etas.back();
    est.omega_opt = optimal_omega(est.eta_min, est.eta_max);
    est.omega_mu = est.omega_opt;
    est.mu_min = std::numeric_limits<double>::infinity();
    est.mu_max = 0.0;
    for (double eta : etas) {
        const double am = std::abs(mu_from_eta(eta, est.omega_opt));
        est.mu_min = std::min(est.mu_min, am);
        est.mu_max = std::max(est.mu_max, am);
    }
    est.alpha_opt = optimal_alpha(est.mu_min, est.mu_max);
    est.rho_opt = (est.mu_max * est.mu_max - est.mu_min * est.mu_min) /
                  (2.0 + est.mu_min * est.mu_min + est.mu_max * est.mu_max);
    return est;
}

// ---------------------------------------------------------------------------
// Dense verification utilities (size-guarded).
// ---------------------------------------------------------------------------

/// Dense St = Wt^-1 Tt.
inline Eigen::MatrixXd dense_stilde(const TransformedSystem& ts) {
    detail::ensure_dense_scale(ts.Wt.rows());
    const Eigen::MatrixXd Wd = to_eigen_dense(ts.Wt);
    const Eigen::MatrixXd Td = to_eigen_dense(ts.Tt);
    Eigen::LLT<Eigen::MatrixXd> llt(Wd);
    if (llt.info() != Eigen::Success) throw NotSpdError("dense_stilde: Wt not SPD", -1);
    return llt.solve(Td);
}

/// Spectrum of St through the symmetric route (real by construction).
inline std::vector<double> stilde_spectrum(const TransformedSystem& ts) {
    detail::ensure_dense_scale(ts.Wt.rows());
    const Eigen::MatrixXd Wd = detail::checked_spd_dense(ts.Wt);
    const Eigen::MatrixXd Td = to_eigen_dense(ts.Tt);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
        Td, Wd, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    const Eigen::VectorXd& ev = ges.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

/// Explicit dense iteration matrix H = [[0, St], [0, (a-1)/a I - St^2/a]].
/// Verification only.
inline Eigen::MatrixXd dense_iteration_matrix(const TransformedSystem& ts, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("dense_iteration_matrix: alpha must be > 0");
    const Eigen::MatrixXd S = dense_stilde(ts);
    const Eigen::Index n = S.rows();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    H.topRightCorner(n, n) = S;
    H.bottomRightCorner(n, n) =
        ((alpha - 1.0) / alpha) * Eigen::MatrixXd::Identity(n, n) - (S * S) / alpha;
    return H;
}

/// Explicit dense preconditioned matrix Gamma = M^-1 At.
inline Eigen::MatrixXd dense_preconditioned_matrix(const TransformedSystem& ts, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("dense_preconditioned_matrix: alpha > 0");
    const Eigen::MatrixXd S = dense_stilde(ts);
    const Eigen::Index n = S.rows();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    G.topLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    G.topRightCorner(n, n) = -S;
    G.bottomRightCorner(n, n) = (Eigen::MatrixXd::Identity(n, n) + S * S) / alpha;
    return G;
}

inline double dense_spectral_radius(const Eigen::MatrixXd& M) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace detail {
/// Max elementwise distance between two sorted real multisets, normalized by
/// max(1, largest magnitude involved).
inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double scale = 1.0;
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
        err = std::max(err, std::abs(a[i] - b[i]));
    }
    return err / scale;
}
}  // namespace detail

struct IterationMatrixCheck {
    index_t n = 0;
    double tail_singular_ratio = 0.0;  // max sv beyond the first n over sv_max
    double multiset_err = 0.0;         // spectrum vs {0 x n} u {1 - (1+mu^2)/a}
    double max_imag = 0.0;
    bool pass = false;
};

/// Verifies the iteration-matrix spectrum claim: eigenvalue 0 with
/// multiplicity >= n (rank <= n) and nonzero part {1 - (1 + mu_i^2)/alpha}.
inline IterationMatrixCheck check_iteration_matrix_spectrum(const TransformedSystem& ts,
                                                            double alpha) {
    IterationMatrixCheck out;
    out.n = ts.Wt.rows();
    const Eigen::MatrixXd H = dense_iteration_matrix(ts, alpha);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(H);
    const Eigen::VectorXd& sv = svd.singularValues();
    out.tail_singular_ratio = sv[0] > 0.0 ? sv.tail(out.n).maxCoeff() / sv[0] : 0.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(H, false);
    out.max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
    std::vector<double> actual(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        actual[static_cast<std::size_t>(i)] = es.eigenvalues()[i].real();

    std::vector<double> expected(static_cast<std::size_t>(out.n), 0.0);
    for (double mu : stilde_spectrum(ts)) expected.push_back(1.0 - (1.0 + mu * mu) / alpha);

    out.multiset_err = detail::multiset_distance(actual, expected);
    out.pass = out.tail_singular_ratio <= 1e-10 && out.multiset_err <= 1e-8 &&
               out.max_imag <= 1e-8;
    return out;
}

struct PrecondSpectrumCheck {
    index_t n = 0;
    int unit_count = 0;        // eigenvalues within 1e-8 of 1 (>= n required)
    double max_imag = 0.0;
    double min_real = 0.0;     // all eigenvalues must be positive
    double multiset_err = 0.0; // spectrum vs {1 x n} u {(1+mu^2)/a}
    bool pass = false;
};

/// Verifies the preconditioned-matrix spectrum claim: eigenvalue 1 with
/// multiplicity >= n; remaining eigenvalues real, positive, (1 + mu_i^2)/alpha.
inline PrecondSpectrumCheck precond_spectrum_check(const TransformedSystem& ts, double alpha) {
    PrecondSpectrumCheck out;
    out.n = ts.Wt.rows();
    const Eigen::MatrixXd G = dense_preconditioned_matrix(ts, alpha);
    Eigen::EigenSolver<Eigen::MatrixXd> es(G, false);

    out.max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
    out.min_real = es.eigenvalues().real().minCoeff();
    std::vector<double> actual(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        actual[static_cast<std::size_t>(i)] = es.eigenvalues()[i].real();
        if (std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0)) <= 1e-8)
            out.unit_count++;
    }

    std::vector<double> expected(static_cast<std::size_t>(out.n), 1.0);
    for (double mu : stilde_spectrum(ts)) expected.push_back((1.0 + mu * mu) / alpha);

    out.multiset_err = detail::multiset_distance(actual, expected);
    out.pass = out.unit_count >= out.n && out.max_imag <= 1e-8 && out.min_real > 0.0 &&
               out.multiset_err <= 1e-8;
    return out;
}

}  // namespace ssts

#endif  // SSTS_SPECTRAL_HPP
