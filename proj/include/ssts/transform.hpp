/// @file transform.hpp
/// @brief The omega-parameterized preconditioning transform and the
///        triangular splitting built on it. Premultiplying the block system
///        by [[wI, I], [-I, wI]] yields an equivalent system whose (1,1)
///        block Wt = w*W + T is SPD; Tt = w*T - W stays symmetric.

#ifndef SSTS_TRANSFORM_HPP
#define SSTS_TRANSFORM_HPP

#include <Eigen/Dense>
#include <stdexcept>

#include "ssts/eigen_bridge.hpp"
#include "ssts/problems.hpp"
#include "ssts/sparse.hpp"

namespace ssts {

struct TransformedSystem {
    SparseSym Wt;    // w*W + T, SPD for w > 0 under the null-space condition
    SparseSym Tt;    // w*T - W, symmetric, generally indefinite
    DenseVector pt;  // w*p + q
    DenseVector qt;  // w*q - p
    double omega = 0.0;
};

inline TransformedSystem transform(const BlockSystem& sys, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("transform: omega must be > 0");
    TransformedSystem ts;
    ts.omega = omega;
    ts.Wt = add_scaled(omega, sys.W, 1.0, sys.T);
    ts.Tt = add_scaled(omega, sys.T, -1.0, sys.W);
    ts.pt = linear_combo(omega, sys.p, 1.0, sys.q);
    ts.qt = linear_combo(omega, sys.q, -1.0, sys.p);
    return ts;
}

/// Dense 2n x 2n block matrix [[A, -B], [B, A]].
inline Eigen::MatrixXd dense_block_matrix(const SparseSym& A, const SparseSym& B) {
    const index_t n = A.rows();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.topLeftCorner(n, n) = to_eigen_dense(A);
    M.bottomRightCorner(n, n) = M.topLeftCorner(n, n);
    M.topRightCorner(n, n) = -to_eigen_dense(B);
    M.bottomLeftCorner(n, n) = -M.topRightCorner(n, n);
    return M;
}

struct InvarianceReport {
    double solution_rel_diff = 0.0;
    bool pass = false;
};

/// Diagnostic: dense-solves the original and transformed systems and compares
/// solutions; the transform must not move the solution. Desk scale only.
inline InvarianceReport solution_invariance_check(const BlockSystem& sys, double omega) {
    if (sys.n > 256)
        throw std::invalid_argument("solution_invariance_check: dense check capped at n=256");
    const TransformedSystem ts = transform(sys, omega);
    const index_t n = sys.n;

    Eigen::MatrixXd A = dense_block_matrix(sys.W, sys.T);
    Eigen::MatrixXd At = dense_block_matrix(ts.Wt, ts.Tt);
    Eigen::VectorXd b(2 * n), bt(2 * n);
    b << to_eigen(sys.p), to_eigen(sys.q);
    bt << to_eigen(ts.pt), to_eigen(ts.qt);

    Eigen::VectorXd z = A.partialPivLu().solve(b);
    Eigen::VectorXd zt = At.partialPivLu().solve(bt);

    InvarianceReport rep;
    rep.solution_rel_diff = (z - zt).norm() / z.norm();
    rep.pass = rep.solution_rel_diff <= 1e-10;
    return rep;
}

}  // namespace ssts

#endif  // SSTS_TRANSFORM_HPP
