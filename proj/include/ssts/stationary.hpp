/// @file stationary.hpp
/// @brief The four stationary iterations: the single-step triangular
///        splitting method (SSTS) on the transformed system, the symmetric
///        block triangular splitting method (SBTS), its preconditioned
///        variant (PSBTS), and the modified HSS method (MHSS) in paired-real
///        arithmetic. All share the stopping rule
///            RES = ||b - A z^(k)||_2 / ||b||_2 < tol
///        evaluated on the ORIGINAL block system once per sweep, with
///        iteration 0 checked before any work.

#ifndef SSTS_STATIONARY_HPP
#define SSTS_STATIONARY_HPP

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssts/problems.hpp"
#include "ssts/sparse.hpp"
#include "ssts/spd_solve.hpp"
#include "ssts/transform.hpp"

namespace ssts {

struct SolverConfig {
    double alpha = 1.0;
    double omega = 1.0;  // ignored by MHSS and SBTS
    double tol = 1e-6;
    int max_iters = 5000;
    InnerSolveConfig inner;

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("SolverConfig: alpha must be > 0");
        if (!(omega > 0.0)) throw std::invalid_argument("SolverConfig: omega must be > 0");
        if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("SolverConfig: tol must lie in (0,1)");
        if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
        inner.validate();
    }
};

struct SolveReport {
    std::string method;
    int m = 0;  // grid side when n is a perfect square, 0 otherwise
    double alpha = 0.0;
    double omega = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;  // entry k = RES after sweep k, k=0 first
    double wall_time_s = 0.0;
    int inner_solves = 0;  // real SPD solves performed
};

struct SolveResult {
    DenseVector x;
    DenseVector y;
    SolveReport report;
};

struct Residual {
    double value = 0.0;
    bool absolute = false;  // true when the right-hand side is zero
};

/// RES of the original system at (x, y): ||(p - Wx + Ty, q - Tx - Wy)|| / ||(p, q)||.
/// Falls back to the absolute residual (flagged) when the right-hand side is zero.
inline Residual residual(const BlockSystem& sys, const DenseVector& x, const DenseVector& y) {
    if (static_cast<index_t>(x.size()) != sys.n || static_cast<index_t>(y.size()) != sys.n)
        throw std::invalid_argument("residual: dimension mismatch");
    const DenseVector Wx = sys.W.multiply(x);
    const DenseVector Ty = sys.T.multiply(y);
    const DenseVector Tx = sys.T.multiply(x);
    const DenseVector Wy = sys.W.multiply(y);
    double rr = 0.0;
    double bb = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r1 = sys.p[i] - Wx[i] + Ty[i];
        const double r2 = sys.q[i] - Tx[i] - Wy[i];
        rr += r1 * r1 + r2 * r2;
        bb += sys.p[i] * sys.p[i] + sys.q[i] * sys.q[i];
    }
    Residual out;
    if (bb == 0.0) {
        out.value = std::sqrt(rr);
        out.absolute = true;
    } else {
        out.value = std::sqrt(rr / bb);
    }
    return out;
}

namespace detail {

inline int grid_side(index_t n) {
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return static_cast<index_t>(m) * m == n ? m : 0;
}

inline void check_start(const BlockSystem& sys, const DenseVector& x0, const DenseVector& y0) {
    if (static_cast<index_t>(x0.size()) != sys.n || static_cast<index_t>(y0.size()) != sys.n)
        throw std::invalid_argument("stationary solve: start vector dimension mismatch");
    ensure_finite(sys.p, "rhs p");
    ensure_finite(sys.q, "rhs q");
    ensure_finite(x0, "start x0");
    ensure_finite(y0, "start y0");
}

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

/// Body shared by SBTS (identity transform) and PSBTS (omega transform):
/// four solves per sweep against one cached factorization of the (1,1) block.
inline SolveResult sbts_sweeps(const BlockSystem& sys, const SolverConfig& cfg,
                               const SparseSym& Wm, const SparseSym& Tm,
                               const DenseVector& pm, const DenseVector& qm,
                               const DenseVector& x0, const DenseVector& y0,
                               const std::string& method) {
    const Stopwatch timer;
    SolveResult res;
    res.x = x0;
    res.y = y0;
    SolveReport& rep = res.report;
    rep.method = method;
    rep.m = grid_side(sys.n);
    rep.alpha = cfg.alpha;
    rep.omega = cfg.omega;

    rep.residual_history.push_back(residual(sys, res.x, res.y).value);
    if (rep.residual_history.back() < cfg.tol) {
        rep.converged = true;
        rep.wall_time_s = timer.seconds();
        return res;
    }

    const InnerSolver solver(Wm, cfg.inner);
    const double a = cfg.alpha;
    DenseVector rhs(res.x.size());
    while (rep.iterations < cfg.max_iters) {
        const DenseVector xh = solver.solve(linear_combo(1.0, Tm.multiply(res.y), 1.0, pm));
        const DenseVector Txh = Tm.multiply(xh);

        DenseVector Wy = Wm.multiply(res.y);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = ((a - 1.0) * Wy[i] - Txh[i] + qm[i]) / a;
        const DenseVector yh = solver.solve(rhs);

        Wy = Wm.multiply(yh);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = ((a - 1.0) * Wy[i] - Txh[i] + qm[i]) / a;
        res.y = solver.solve(rhs);

        res.x = solver.solve(linear_combo(1.0, Tm.multiply(res.y), 1.0, pm));

        rep.inner_solves += 4;
        rep.iterations++;
        rep.residual_history.push_back(residual(sys, res.x, res.y).value);
        if (rep.residual_history.back() < cfg.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.wall_time_s = timer.seconds();
    return res;
}

}  // namespace detail

/// SSTS: on the transformed system, one sweep is
///     Wt x' = Tt y + pt
///     a Wt y' = (a-1) Wt y - Tt x' + qt
/// i.e. exactly two solves against one cached factorization of Wt.
inline SolveResult ssts_solve(const BlockSystem& sys, const SolverConfig& cfg,
                              const DenseVector& x0, const DenseVector& y0) {
    cfg.validate();
    detail::check_start(sys, x0, y0);

    const detail::Stopwatch timer;
    SolveResult res;
    res.x = x0;
    res.y = y0;
    SolveReport& rep = res.report;
    rep.method = "ssts";
    rep.m = detail::grid_side(sys.n);
    rep.alpha = cfg.alpha;
    rep.omega = cfg.omega;

    rep.residual_history.push_back(residual(sys, res.x, res.y).value);
    if (rep.residual_history.back() < cfg.tol) {
        rep.converged = true;
        rep.wall_time_s = timer.seconds();
        return res;
    }

    const TransformedSystem ts = transform(sys, cfg.omega);
    const InnerSolver solver(ts.Wt, cfg.inner);
    const double a = cfg.alpha;
    DenseVector rhs(res.x.size());
    while (rep.iterations < cfg.max_iters) {
        res.x = solver.solve(linear_combo(1.0, ts.Tt.multiply(res.y), 1.0, ts.pt));

        const DenseVector Wty = ts.Wt.multiply(res.y);
        const DenseVector Ttx = ts.Tt.multiply(res.x);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = ((a - 1.0) * Wty[i] - Ttx[i] + ts.qt[i]) / a;
        res.y = solver.solve(rhs);

        rep.inner_solves += 2;
        rep.iterations++;
        rep.residual_history.push_back(residual(sys, res.x, res.y).value);
        if (rep.residual_history.back() < cfg.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.wall_time_s = timer.seconds();
    return res;
}

/// SBTS: four W-solves per sweep on the untransformed system (W must be SPD).
inline SolveResult sbts_solve(const BlockSystem& sys, const SolverConfig& cfg,
                              const DenseVector& x0, const DenseVector& y0) {
    cfg.validate();
    detail::check_start(sys, x0, y0);
    return detail::sbts_sweeps(sys, cfg, sys.W, sys.T, sys.p, sys.q, x0, y0, "sbts");
}

/// PSBTS: the SBTS sweep applied verbatim to the omega-transformed system,
/// stopping still on the original-system residual.
inline SolveResult psbts_solve(const BlockSystem& sys, const SolverConfig& cfg,
                               const DenseVector& x0, const DenseVector& y0) {
    cfg.validate();
    detail::check_start(sys, x0, y0);
    const TransformedSystem ts = transform(sys, cfg.omega);
    return detail::sbts_sweeps(sys, cfg, ts.Wt, ts.Tt, ts.pt, ts.qt, x0, y0, "psbts");
}

/// MHSS on the complex form (W + iT) u = p + iq, carried in paired-real
/// arithmetic: u = (x, y). Per sweep, one complex-pair solve with aI + W and
/// one with aI + T (both real SPD, factorized once):
///     (aI + W) u^(k+1/2) = (aI - iT) u^(k) + b
///     (aI + T) u^(k+1)   = (aI + iW) u^(k+1/2) - ib
inline SolveResult mhss_solve(const BlockSystem& sys, const SolverConfig& cfg,
                              const DenseVector& x0, const DenseVector& y0) {
    cfg.validate();
    detail::check_start(sys, x0, y0);

    const detail::Stopwatch timer;
    SolveResult res;
    res.x = x0;  // real part
    res.y = y0;  // imaginary part
    SolveReport& rep = res.report;
    rep.method = "mhss";
    rep.m = detail::grid_side(sys.n);
    rep.alpha = cfg.alpha;
    rep.omega = cfg.omega;

    // Complex RES equals the block-system RES by the real equivalence.
    rep.residual_history.push_back(residual(sys, res.x, res.y).value);
    if (rep.residual_history.back() < cfg.tol) {
        rep.converged = true;
        rep.wall_time_s = timer.seconds();
        return res;
    }

    const double a = cfg.alpha;
    const SparseSym I = identity(sys.n);
    const InnerSolver solve_w(add_scaled(1.0, sys.W, a, I), cfg.inner);
    const InnerSolver solve_t(add_scaled(1.0, sys.T, a, I), cfg.inner);

    const std::size_t n = res.x.size();
    DenseVector rhs_r(n), rhs_i(n);
    while (rep.iterations < cfg.max_iters) {
        // (aI - iT)(x + iy) + (p + iq) = (a x + T y + p) + i(a y - T x + q)
        DenseVector Tx = sys.T.multiply(res.x);
        DenseVector Ty = sys.T.multiply(res.y);
        for (std::size_t i = 0; i < n; ++i) {
            rhs_r[i] = a * res.x[i] + Ty[i] + sys.p[i];
            rhs_i[i] = a * res.y[i] - Tx[i] + sys.q[i];
        }
        const DenseVector xr = solve_w.solve(rhs_r);
        const DenseVector xi = solve_w.solve(rhs_i);

        // (aI + iW)(xr + i xi) - i(p + iq) = (a xr - W xi + q) + i(a xi + W xr - p)
        DenseVector Wxr = sys.W.multiply(xr);
        DenseVector Wxi = sys.W.multiply(xi);
        for (std::size_t i = 0; i < n; ++i) {
            rhs_r[i] = a * xr[i] - Wxi[i] + sys.q[i];
            rhs_i[i] = a * xi[i] + Wxr[i] - sys.p[i];
        }
        res.x = solve_t.solve(rhs_r);
        res.y = solve_t.solve(rhs_i);

        rep.inner_solves += 4;  // 2 complex-pair solves
        rep.iterations++;
        rep.residual_history.push_back(residual(sys, res.x, res.y).value);
        if (rep.residual_history.back() < cfg.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.wall_time_s = timer.seconds();
    return res;
}

}  // namespace ssts

#endif  // SSTS_STATIONARY_HPP
