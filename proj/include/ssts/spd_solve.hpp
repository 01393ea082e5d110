/// @file spd_solve.hpp
/// @brief Inner SPD solves: a cached sparse Cholesky factorization and a CG
///        fallback behind one interface. Every stationary sweep and
///        preconditioner application in this library funnels through here.

#ifndef SSTS_SPD_SOLVE_HPP
#define SSTS_SPD_SOLVE_HPP

#include <Eigen/SparseCholesky>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ssts/eigen_bridge.hpp"
#include "ssts/sparse.hpp"

namespace ssts {

class NotSpdError : public std::runtime_error {
public:
    NotSpdError(const std::string& msg, index_t index)
        : std::runtime_error(msg), index_(index) {}
    /// First non-positive pivot (original row index), -1 when unknown.
    index_t index() const { return index_; }

private:
    index_t index_;
};

struct InnerSolveConfig {
    enum class Mode { direct, cg };
    Mode mode = Mode::direct;
    // Two orders below the 1e-6 outer criterion so inner error never shows
    // up in outer residual histories.
    double cg_tol = 1e-13;
    int cg_max_iters = 20000;

    void validate() const {
        if (!(cg_tol > 0.0 && cg_tol < 1.0))
            throw std::invalid_argument("InnerSolveConfig: cg_tol must lie in (0,1)");
        if (cg_max_iters < 1)
            throw std::invalid_argument("InnerSolveConfig: cg_max_iters must be >= 1");
    }
};

/// Sparse Cholesky of an SPD matrix, reusable across many right-hand sides.
/// Backed by Eigen's SimplicialLLT with its (deterministic) AMD ordering.
class SpdFactorization {
public:
    explicit SpdFactorization(const SparseSym& A) : n_(A.rows()) {
        Eigen::SparseMatrix<double> M = to_eigen_sparse(A);
        llt_ = std::make_shared<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
        llt_->compute(M);
        if (llt_->info() != Eigen::Success)
            throw NotSpdError("matrix not SPD (pivot at index " +
                                  std::to_string(locate_bad_pivot(M)) + ")",
                              locate_bad_pivot(M));
    }

    index_t rows() const { return n_; }

    void solve(const DenseVector& b, DenseVector& x) const {
        if (static_cast<index_t>(b.size()) != n_)
            throw std::invalid_argument("SpdFactorization::solve: dimension mismatch");
        Eigen::VectorXd xv = llt_->solve(to_eigen(b));
        x.assign(xv.data(), xv.data() + xv.size());
    }

    DenseVector solve(const DenseVector& b) const {
        DenseVector x;
        solve(b, x);
        return x;
    }

    const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>& raw() const { return *llt_; }

private:
    static index_t locate_bad_pivot(const Eigen::SparseMatrix<double>& M) {
        // LDLt usually completes where LLt fails; its first non-positive
        // diagonal entry names the offending pivot (mapped back through the
        // fill-reducing permutation).
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(M);
        if (ldlt.info() != Eigen::Success) return -1;
        const Eigen::VectorXd d = ldlt.vectorD();
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (!(d[i] > 0.0)) {
                return static_cast<index_t>(ldlt.permutationPinv().indices()[i]);
            }
        }
        return -1;
    }

    // shared_ptr keeps factorizations cheap to copy into preconditioners and
    // report structures; the factor itself is immutable once built.
    std::shared_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> llt_;
    index_t n_ = 0;
};

struct CgResult {
    DenseVector x;
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

/// Plain conjugate gradients with zero start. Stops on ||r|| <= tol * ||b||.
/// On max-iteration exhaustion the best iterate is returned with the
/// diagnostic fields set, not thrown away.
inline CgResult cg_solve(const SparseSym& A, const DenseVector& b, const InnerSolveConfig& cfg) {
    cfg.validate();
    if (static_cast<index_t>(b.size()) != A.rows())
        throw std::invalid_argument("cg_solve: dimension mismatch");
    ensure_finite(b, "cg_solve rhs");

    CgResult out;
    const std::size_t n = b.size();
    out.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        out.converged = true;
        return out;
    }

    DenseVector r = b;
    DenseVector p = r;
    DenseVector q(n);
    double rs = dot(r, r);
    for (int k = 0; k < cfg.cg_max_iters; ++k) {
        A.multiply(p, q);
        const double alpha = rs / dot(p, q);
        axpy(alpha, p, out.x);
        axpy(-alpha, q, r);
        const double rs_new = dot(r, r);
        out.iterations = k + 1;
        out.rel_residual = std::sqrt(rs_new) / bnorm;
        if (out.rel_residual <= cfg.cg_tol) {
            out.converged = true;
            return out;
        }
        const double beta = rs_new / rs;
        rs = rs_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    return out;  // best iterate + diagnostics, converged=false
}

/// One interface over the direct and CG paths, per InnerSolveConfig::mode.
/// Direct mode factors once at construction; CG mode re-solves from scratch.
class InnerSolver {
public:
    InnerSolver(const SparseSym& A, const InnerSolveConfig& cfg) : A_(&A), cfg_(cfg) {
        cfg_.validate();
        if (cfg_.mode == InnerSolveConfig::Mode::direct) fact_.emplace(A);
    }

    DenseVector solve(const DenseVector& b) const {
        if (fact_) return fact_->solve(b);
        CgResult r = cg_solve(*A_, b, cfg_);
        if (!r.converged)
            throw std::runtime_error("InnerSolver: CG exceeded max iterations (rel res " +
                                     std::to_string(r.rel_residual) + ")");
        return r.x;
    }

private:
    const SparseSym* A_;
    InnerSolveConfig cfg_;
    std::optional<SpdFactorization> fact_;
};

}  // namespace ssts

#endif  // SSTS_SPD_SOLVE_HPP
