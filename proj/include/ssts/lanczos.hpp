/// @file lanczos.hpp
/// @brief Lanczos tridiagonalization with full reorthogonalization, used for
///        generalized eigenvalue extremes of (W, T) pairs too large for the
///        dense path. The pencil T v = eta W v is reduced through the sparse
///        Cholesky W = P' L L' P to the symmetric operator
///        C = L^-1 P T P' L^-T, whose Ritz values approximate the etas.

#ifndef SSTS_LANCZOS_HPP
#define SSTS_LANCZOS_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <functional>
#include <random>
#include <vector>

#include "ssts/eigen_bridge.hpp"
#include "ssts/sparse.hpp"
#include "ssts/spd_solve.hpp"

namespace ssts {

struct LanczosOptions {
    int max_steps = 250;
    std::uint32_t seed = 42;  // start vector is seeded: runs are reproducible
    double breakdown_tol = 1e-14;
};

/// Ritz values (ascending) of a symmetric operator of dimension n.
inline std::vector<double> lanczos_ritz_values(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& op,
    Eigen::Index n, const LanczosOptions& opts = {}) {
    const int steps = static_cast<int>(std::min<Eigen::Index>(n, opts.max_steps));

    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = unit(rng);
    v.normalize();

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(static_cast<std::size_t>(steps) + 1);
    basis.push_back(v);

    Eigen::VectorXd alphas(steps), betas(steps);
    Eigen::VectorXd w(n);
    double scale = 0.0;
    int k = 0;
    for (; k < steps; ++k) {
        op(basis.back(), w);
        const double alpha = basis.back().dot(w);
        alphas[k] = alpha;
        scale = std::max({scale, std::abs(alpha)});
        // Three-term recurrence plus two full reorthogonalization passes.
        w -= alpha * basis.back();
        if (k > 0) w -= betas[k - 1] * basis[static_cast<std::size_t>(k) - 1];
        for (int pass = 0; pass < 2; ++pass)
            for (const Eigen::VectorXd& u : basis) w -= u.dot(w) * u;
        const double beta = w.norm();
        betas[k] = beta;
        scale = std::max(scale, beta);
        if (beta <= opts.breakdown_tol * std::max(scale, 1.0)) {
            ++k;
            break;  // invariant subspace captured
        }
        basis.push_back(w / beta);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(alphas.head(k), betas.head(std::max(k - 1, 0)),
                              Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

/// Ritz values of the pencil T v = eta W v (W SPD). The extremes converge to
/// eta_min/eta_max; interior Ritz values sample the spectrum and are only
/// heuristically accurate.
inline std::vector<double> generalized_ritz_values(const SparseSym& W, const SparseSym& T,
                                                   const LanczosOptions& opts = {}) {
    if (W.rows() != T.rows())
        throw std::invalid_argument("generalized_ritz_values: dimension mismatch");
    const Eigen::SparseMatrix<double> Ws = to_eigen_sparse(W);
    const Eigen::SparseMatrix<double> Ts = to_eigen_sparse(T);
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(Ws);
    if (llt.info() != Eigen::Success)
        throw NotSpdError("generalized_ritz_values: W not SPD", -1);

    auto op = [&](const Eigen::VectorXd& u, Eigen::VectorXd& out) {
        Eigen::VectorXd a = llt.matrixU().solve(u);          // L^-T u
        Eigen::VectorXd b = llt.permutationPinv() * a;       // P^T .
        Eigen::VectorXd c = Ts * b;                          // T .
        Eigen::VectorXd d = llt.permutationP() * c;          // P .
        out = llt.matrixL().solve(d);                        // L^-1 .
    };
    return lanczos_ritz_values(op, Ws.rows(), opts);
}

}  // namespace ssts

#endif  // SSTS_LANCZOS_HPP
