/// @file gmres.hpp
/// @brief Restarted GMRES with modified Gram-Schmidt Arnoldi, Givens-rotation
///        least squares, and a pluggable left preconditioner. The core is
///        templated on the scalar: the real instantiation serves the block
///        two-by-two systems (and the splitting preconditioner), the complex
///        instantiation serves (W + iT) u = b directly.
///
///        The splitting preconditioner M = [[Wt, 0], [Tt, a*Wt]] is applied
///        by two SPD solves:
///            (1) Wt e = r
///            (2) Wt f = (s - Tt e) / alpha
///
///        Convergence is declared only on the true relative residual of the
///        system being solved; the recurrence estimate merely triggers the
///        check.

#ifndef SSTS_GMRES_HPP
#define SSTS_GMRES_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ssts/sparse.hpp"
#include "ssts/spd_solve.hpp"
#include "ssts/transform.hpp"

namespace ssts {

struct GmresConfig {
    int restart = 10;
    double tol = 1e-6;
    int max_cycles = 1000;

    void validate() const {
        if (restart < 1) throw std::invalid_argument("GmresConfig: restart must be >= 1");
        if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("GmresConfig: tol in (0,1)");
        if (max_cycles < 1) throw std::invalid_argument("GmresConfig: max_cycles must be >= 1");
    }
};

struct GmresReport {
    int cycles = 0;      // restart cycles entered
    int inner_last = 0;  // inner steps performed in the final cycle
    int total_inner = 0;
    int total_matvecs = 0;
    bool converged = false;
    std::vector<double> residual_history;    // true relative residuals when checked
    std::vector<double> recurrence_history;  // per-step preconditioned estimates
};

/// Left preconditioner on the block pair structure: solves M (e, f) = (r, s).
class Preconditioner {
public:
    virtual ~Preconditioner() = default;
    virtual void apply(const DenseVector& r, const DenseVector& s,
                       DenseVector& e, DenseVector& f) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
public:
    void apply(const DenseVector& r, const DenseVector& s,
               DenseVector& e, DenseVector& f) const override {
        e = r;
        f = s;
    }
};

/// Applies the splitting preconditioner using a cached factorization of Wt:
/// exactly two SPD solves per residual equation.
inline void ssts_precond_apply(const SpdFactorization& Wt_fact, const SparseSym& Tt, double alpha,
                               const DenseVector& r, const DenseVector& s,
                               DenseVector& e, DenseVector& f) {
    if (r.size() != s.size() || static_cast<index_t>(r.size()) != Wt_fact.rows())
        throw std::invalid_argument("ssts_precond_apply: dimension mismatch");
    Wt_fact.solve(r, e);
    DenseVector rhs = Tt.multiply(e);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = (s[i] - rhs[i]) / alpha;
    Wt_fact.solve(rhs, f);
}

class SstsPreconditioner final : public Preconditioner {
public:
    SstsPreconditioner(const TransformedSystem& ts, double alpha)
        : Tt_(ts.Tt), alpha_(alpha), fact_(ts.Wt) {
        if (!(alpha > 0.0)) throw std::invalid_argument("SstsPreconditioner: alpha must be > 0");
    }

    void apply(const DenseVector& r, const DenseVector& s,
               DenseVector& e, DenseVector& f) const override {
        ssts_precond_apply(fact_, Tt_, alpha_, r, s, e, f);
    }

    const SpdFactorization& factorization() const { return fact_; }

private:
    SparseSym Tt_;
    double alpha_;
    SpdFactorization fact_;
};

using LinearOperator = std::function<void(const DenseVector&, DenseVector&)>;
using ComplexVector = std::vector<std::complex<double>>;
using ComplexOperator = std::function<void(const ComplexVector&, ComplexVector&)>;

/// Operator for [[A, -B], [B, A]] acting on stacked (x, y). Captures
/// references; the matrices must outlive the operator.
inline LinearOperator block_operator(const SparseSym& A, const SparseSym& B) {
    return [&A, &B](const DenseVector& in, DenseVector& out) {
        const std::size_t n = in.size() / 2;
        const DenseVector x(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n));
        const DenseVector y(in.begin() + static_cast<std::ptrdiff_t>(n), in.end());
        const DenseVector Ax = A.multiply(x);
        const DenseVector By = B.multiply(y);
        const DenseVector Bx = B.multiply(x);
        const DenseVector Ay = A.multiply(y);
        out.resize(in.size());
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = Ax[i] - By[i];
            out[n + i] = Bx[i] + Ay[i];
        }
    };
}

/// Operator for (W + iT) u on complex vectors, via the real kernels:
/// (W + iT)(x + iy) = (Wx - Ty) + i(Tx + Wy).
inline ComplexOperator complex_operator(const SparseSym& W, const SparseSym& T) {
    return [&W, &T](const ComplexVector& in, ComplexVector& out) {
        const std::size_t n = in.size();
        DenseVector x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = in[i].real();
            y[i] = in[i].imag();
        }
        const DenseVector Wx = W.multiply(x);
        const DenseVector Ty = T.multiply(y);
        const DenseVector Tx = T.multiply(x);
        const DenseVector Wy = W.multiply(y);
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = {Wx[i] - Ty[i], Tx[i] + Wy[i]};
    };
}

namespace detail {

inline double gmres_abs2(double v) { return v * v; }
inline double gmres_abs2(const std::complex<double>& v) { return std::norm(v); }
inline double gmres_conj(double v) { return v; }
inline std::complex<double> gmres_conj(const std::complex<double>& v) { return std::conj(v); }

template <typename Scalar>
double vec_norm(const std::vector<Scalar>& v) {
    double s = 0.0;
    for (const Scalar& x : v) s += gmres_abs2(x);
    return std::sqrt(s);
}

/// conj(v)^T w
template <typename Scalar>
Scalar vec_dotc(const std::vector<Scalar>& v, const std::vector<Scalar>& w) {
    Scalar s{};
    for (std::size_t i = 0; i < v.size(); ++i) s += gmres_conj(v[i]) * w[i];
    return s;
}

/// Givens pair (c real, s scalar) with G = [[c, s], [-conj(s), c]] zeroing the
/// second entry: G [a; b] = [(a/|a|) t; 0], t = sqrt(|a|^2 + |b|^2).
template <typename Scalar>
void make_givens(const Scalar& a, const Scalar& b, double& c, Scalar& s) {
    const double na = std::sqrt(gmres_abs2(a));
    const double nb = std::sqrt(gmres_abs2(b));
    if (nb == 0.0) {
        c = 1.0;
        s = Scalar{};
        return;
    }
    if (na == 0.0) {
        c = 0.0;
        s = gmres_conj(b) * (1.0 / nb);
        return;
    }
    const double t = std::hypot(na, nb);
    c = na / t;
    s = (a / na) * gmres_conj(b) * (1.0 / t);
}

template <typename Scalar>
std::pair<std::vector<Scalar>, GmresReport> gmres_core(
    const std::function<void(const std::vector<Scalar>&, std::vector<Scalar>&)>& A,
    const std::vector<Scalar>& b,
    const std::function<void(const std::vector<Scalar>&, std::vector<Scalar>&)>& precond,
    const GmresConfig& cfg) {
    using Vec = std::vector<Scalar>;
    cfg.validate();
    const std::size_t N = b.size();
    GmresReport rep;
    Vec x(N, Scalar{});

    const double bnorm = vec_norm(b);
    if (bnorm == 0.0) {
        rep.converged = true;
        rep.residual_history.push_back(0.0);
        return {x, rep};
    }
    const double happy_tol = 1e-14 * bnorm;

    auto apply_P = [&](const Vec& v, Vec& out) {
        if (precond) precond(v, out);
        else out = v;
    };

    auto true_residual = [&](const Vec& xc, Vec& r) {
        Vec Ax(N);
        A(xc, Ax);
        rep.total_matvecs++;
        r.resize(N);
        for (std::size_t i = 0; i < N; ++i) r[i] = b[i] - Ax[i];
        return vec_norm(r) / bnorm;
    };

    rep.residual_history.push_back(1.0);  // zero start: r0 = b

    Vec z(N);
    apply_P(b, z);
    const double beta0 = vec_norm(z);
    double beta = beta0;

    const int m = cfg.restart;
    std::vector<Vec> V;
    std::vector<std::vector<Scalar>> H(static_cast<std::size_t>(m) + 1,
                                       std::vector<Scalar>(static_cast<std::size_t>(m), Scalar{}));
    std::vector<double> cs(static_cast<std::size_t>(m));
    std::vector<Scalar> sn(static_cast<std::size_t>(m));
    std::vector<Scalar> g(static_cast<std::size_t>(m) + 1);

    // Solve the rotated upper-triangular system for k steps and form x + V y.
    auto form_iterate = [&](int k) {
        std::vector<Scalar> y(static_cast<std::size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            Scalar sum = g[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                sum -= H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                       y[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = sum / H[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        }
        Vec xc = x;
        for (int i = 0; i < k; ++i)
            for (std::size_t r = 0; r < N; ++r)
                xc[r] += y[static_cast<std::size_t>(i)] * V[static_cast<std::size_t>(i)][r];
        return xc;
    };

    Vec r(N), w(N), Av(N);
    for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
        rep.cycles = cycle;
        V.clear();
        V.push_back(z);
        for (Scalar& v : V[0]) v = v * (1.0 / beta);
        for (auto& row : H) std::fill(row.begin(), row.end(), Scalar{});
        std::fill(g.begin(), g.end(), Scalar{});
        g[0] = Scalar{beta};

        bool restart_from_happy = false;
        for (int j = 0; j < m; ++j) {
            A(V[static_cast<std::size_t>(j)], Av);
            rep.total_matvecs++;
            apply_P(Av, w);
            for (int i = 0; i <= j; ++i) {
                const Scalar hij = vec_dotc(V[static_cast<std::size_t>(i)], w);
                H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = hij;
                for (std::size_t r2 = 0; r2 < N; ++r2) w[r2] -= hij * V[static_cast<std::size_t>(i)][r2];
            }
            const double hnext = vec_norm(w);
            H[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)] = Scalar{hnext};
            rep.total_inner++;
            const bool happy = hnext < happy_tol;
            if (!happy) {
                V.push_back(w);
                for (Scalar& v : V.back()) v = v * (1.0 / hnext);
            }

            // Apply stored rotations to the new column, then make a new one.
            for (int i = 0; i < j; ++i) {
                const Scalar t1 = cs[static_cast<std::size_t>(i)] * H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                  sn[static_cast<std::size_t>(i)] * H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
                const Scalar t2 = -gmres_conj(sn[static_cast<std::size_t>(i)]) * H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                  cs[static_cast<std::size_t>(i)] * H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
                H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t1;
                H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] = t2;
            }
            make_givens(H[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)],
                        H[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)],
                        cs[static_cast<std::size_t>(j)], sn[static_cast<std::size_t>(j)]);
            H[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] =
                cs[static_cast<std::size_t>(j)] * H[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] +
                sn[static_cast<std::size_t>(j)] * H[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)];
            H[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)] = Scalar{};
            const Scalar gj = g[static_cast<std::size_t>(j)];
            const Scalar gj1 = g[static_cast<std::size_t>(j) + 1];
            g[static_cast<std::size_t>(j)] = cs[static_cast<std::size_t>(j)] * gj + sn[static_cast<std::size_t>(j)] * gj1;
            g[static_cast<std::size_t>(j) + 1] = -gmres_conj(sn[static_cast<std::size_t>(j)]) * gj + cs[static_cast<std::size_t>(j)] * gj1;

            const double est = std::sqrt(gmres_abs2(g[static_cast<std::size_t>(j) + 1]));
            rep.recurrence_history.push_back(est);

            if (est < cfg.tol * beta0 || happy) {
                const Vec xc = form_iterate(j + 1);
                const double tr = true_residual(xc, r);
                rep.residual_history.push_back(tr);
                if (tr < cfg.tol) {
                    rep.inner_last = j + 1;
                    rep.converged = true;
                    return {xc, rep};
                }
                if (happy) {  // exact within the space but not yet below tol: restart
                    x = xc;
                    rep.inner_last = j + 1;
                    restart_from_happy = true;
                    break;
                }
            }
        }

        if (!restart_from_happy) {
            x = form_iterate(m);
            rep.inner_last = m;
            const double tr = true_residual(x, r);
            rep.residual_history.push_back(tr);
            if (tr < cfg.tol) {
                rep.converged = true;
                return {x, rep};
            }
        } else {
            true_residual(x, r);  // refresh r = b - A x for the restart
        }

        apply_P(r, z);
        beta = vec_norm(z);
        if (beta == 0.0) break;  // preconditioned residual exactly zero
    }
    return {x, rep};
}

inline void apply_stacked(const Preconditioner& P, const DenseVector& v, DenseVector& out) {
    const std::size_t n = v.size() / 2;
    if (2 * n != v.size())
        throw std::invalid_argument("Preconditioner: stacked vector length must be even");
    const DenseVector r(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    const DenseVector s(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
    DenseVector e, f;
    P.apply(r, s, e, f);
    out.resize(v.size());
    std::copy(e.begin(), e.end(), out.begin());
    std::copy(f.begin(), f.end(), out.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace detail

/// Left-preconditioned restarted GMRES on a real (block two-by-two) system,
/// from the zero start. Counts follow the "cycles(inner-steps-of-last-cycle)"
/// convention.
inline std::pair<DenseVector, GmresReport> gmres_restarted(const LinearOperator& A,
                                                           const DenseVector& b,
                                                           const Preconditioner& P,
                                                           const GmresConfig& cfg) {
    ensure_finite(b, "gmres rhs");
    const std::function<void(const DenseVector&, DenseVector&)> precond =
        [&P](const DenseVector& v, DenseVector& out) { detail::apply_stacked(P, v, out); };
    return detail::gmres_core<double>(A, b, precond, cfg);
}

/// Unpreconditioned restarted GMRES in complex arithmetic, for
/// (W + iT) u = p + iq run directly on the complex system.
inline std::pair<ComplexVector, GmresReport> gmres_restarted_complex(const ComplexOperator& A,
                                                                     const ComplexVector& b,
                                                                     const GmresConfig& cfg) {
    return detail::gmres_core<std::complex<double>>(A, b, nullptr, cfg);
}

}  // namespace ssts

#endif  // SSTS_GMRES_HPP
