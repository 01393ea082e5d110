#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ssts/gmres.hpp"
#include "ssts/spectral.hpp"

using Catch::Approx;
using ssts::DenseVector;
using ssts::GmresConfig;

namespace {
DenseVector stack_pair(const DenseVector& a, const DenseVector& b) {
    DenseVector out(a.size() + b.size());
    std::copy(a.begin(), a.end(), out.begin());
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(a.size()));
    return out;
}
}  // namespace

TEST_CASE("gmres on the identity converges in one step") {
    const ssts::LinearOperator id = [](const DenseVector& in, DenseVector& out) { out = in; };
    const DenseVector b = oracles::random_vector(8, 3);
    const auto [x, rep] = ssts::gmres_restarted(id, b, ssts::IdentityPreconditioner{}, GmresConfig{});
    REQUIRE(rep.converged);
    REQUIRE(rep.cycles == 1);
    REQUIRE(rep.inner_last == 1);
    REQUIRE(rep.total_inner == 1);
    for (std::size_t i = 0; i < b.size(); ++i) REQUIRE(x[i] == Approx(b[i]).margin(1e-12));
}

TEST_CASE("gmres handles a zero right-hand side") {
    const ssts::LinearOperator id = [](const DenseVector& in, DenseVector& out) { out = in; };
    const auto [x, rep] = ssts::gmres_restarted(id, DenseVector(6, 0.0),
                                                ssts::IdentityPreconditioner{}, GmresConfig{});
    REQUIRE(rep.converged);
    REQUIRE(rep.total_inner == 0);
    REQUIRE(ssts::norm2(x) == 0.0);
}

TEST_CASE("splitting preconditioner application") {
    SECTION("diagonal arithmetic: Wt = 2I, Tt = 0") {
        ssts::BlockSystem sys;
        sys.W = ssts::identity(4);
        sys.T = ssts::identity(4);
        sys.n = 4;
        sys.p.assign(4, 1.0);
        sys.q.assign(4, 1.0);
        const ssts::TransformedSystem ts = ssts::transform(sys, 1.0);  // Wt = 2I, Tt = 0
        const ssts::SpdFactorization F(ts.Wt);
        const DenseVector r = oracles::random_vector(4, 40);
        const DenseVector s = oracles::random_vector(4, 41);
        DenseVector e, f;
        ssts::ssts_precond_apply(F, ts.Tt, 2.0, r, s, e, f);
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(e[i] == Approx(r[i] / 2.0).margin(1e-14));
            REQUIRE(f[i] == Approx(s[i] / 4.0).margin(1e-14));
        }
        ssts::ssts_precond_apply(F, ts.Tt, 1.0, r, s, e, f);
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(e[i] == Approx(r[i] / 2.0).margin(1e-14));
            REQUIRE(f[i] == Approx(s[i] / 2.0).margin(1e-14));
        }
    }
    SECTION("benchmark instance matches the dense block-LU oracle") {
        const ssts::TransformedSystem ts = ssts::transform(ssts::example1(4), 0.657);
        const double alpha = 1.019;
        const ssts::index_t n = ts.Wt.rows();
        const DenseVector r = oracles::random_vector(static_cast<std::size_t>(n), 50);
        const DenseVector s = oracles::random_vector(static_cast<std::size_t>(n), 51);
        DenseVector e, f;
        const ssts::SstsPreconditioner P(ts, alpha);
        P.apply(r, s, e, f);

        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        M.topLeftCorner(n, n) = ssts::to_eigen_dense(ts.Wt);
        M.bottomLeftCorner(n, n) = ssts::to_eigen_dense(ts.Tt);
        M.bottomRightCorner(n, n) = alpha * ssts::to_eigen_dense(ts.Wt);
        Eigen::VectorXd rs(2 * n);
        rs << ssts::to_eigen(r), ssts::to_eigen(s);
        const Eigen::VectorXd ef = M.partialPivLu().solve(rs);
        for (ssts::index_t i = 0; i < n; ++i) {
            REQUIRE(e[static_cast<std::size_t>(i)] == Approx(ef[i]).margin(1e-10));
            REQUIRE(f[static_cast<std::size_t>(i)] == Approx(ef[n + i]).margin(1e-10));
        }
    }
    SECTION("dimension mismatch") {
        const ssts::TransformedSystem ts = ssts::transform(ssts::example1(2), 1.0);
        const ssts::SpdFactorization F(ts.Wt);
        DenseVector e, f;
        REQUIRE_THROWS_AS(ssts::ssts_precond_apply(F, ts.Tt, 1.0, {1.0}, {1.0}, e, f),
                          std::invalid_argument);
    }
}

TEST_CASE("preconditioner application is linear") {
    const ssts::TransformedSystem ts = ssts::transform(ssts::example1(4), 0.657);
    const ssts::SstsPreconditioner P(ts, 1.019);
    const std::size_t n = 16;
    const DenseVector r1 = oracles::random_vector(n, 60), s1 = oracles::random_vector(n, 61);
    const DenseVector r2 = oracles::random_vector(n, 62), s2 = oracles::random_vector(n, 63);
    const double c = 0.7;

    DenseVector e1, f1, e2, f2, ec, fc;
    P.apply(r1, s1, e1, f1);
    P.apply(r2, s2, e2, f2);
    P.apply(ssts::linear_combo(c, r1, 1.0, r2), ssts::linear_combo(c, s1, 1.0, s2), ec, fc);
    for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(ec[i] == Approx(c * e1[i] + e2[i]).margin(1e-12));
        REQUIRE(fc[i] == Approx(c * f1[i] + f2[i]).margin(1e-12));
    }
}

TEST_CASE("unpreconditioned gmres reproduces the dense direct solution") {
    const ssts::BlockSystem sys = ssts::example1(2);
    const ssts::LinearOperator op = ssts::block_operator(sys.W, sys.T);
    const DenseVector b = stack_pair(sys.p, sys.q);
    const auto [z, rep] = ssts::gmres_restarted(op, b, ssts::IdentityPreconditioner{}, GmresConfig{});
    REQUIRE(rep.converged);
    const auto [xs, ys] = oracles::dense_block_solve(sys);
    const DenseVector want = stack_pair(xs, ys);
    double diff = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) diff = std::max(diff, std::abs(z[i] - want[i]));
    REQUIRE(diff <= 1e-5 * (1.0 + ssts::norm2(want)));
}

TEST_CASE("recurrence residual is monotone within each cycle") {
    const ssts::BlockSystem sys = ssts::example1(16);
    const ssts::ComplexOperator op = ssts::complex_operator(sys.W, sys.T);
    ssts::ComplexVector b(static_cast<std::size_t>(sys.n));
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = {sys.p[i], sys.q[i]};
    GmresConfig cfg;
    const auto [u, rep] = ssts::gmres_restarted_complex(op, b, cfg);
    REQUIRE(rep.converged);
    REQUIRE(rep.cycles > 1);
    for (std::size_t i = 0; i < rep.recurrence_history.size(); ++i)
        if (i % static_cast<std::size_t>(cfg.restart) != 0)  // same cycle as predecessor
            REQUIRE(rep.recurrence_history[i] <= rep.recurrence_history[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("preconditioned spectrum clustering bounds the step count on tiny instances") {
    for (int m : {2, 4}) {
        const ssts::BlockSystem sys = ssts::example1(m);
        const ssts::SpectralEstimates est = ssts::analyze(sys.W, sys.T, ssts::EigMode::dense);
        const ssts::TransformedSystem ts = ssts::transform(sys, est.omega_opt);

        // Count distinct eigenvalues of the dense preconditioned matrix.
        Eigen::EigenSolver<Eigen::MatrixXd> es(
            ssts::dense_preconditioned_matrix(ts, est.alpha_opt), false);
        std::vector<double> ev(static_cast<std::size_t>(es.eigenvalues().size()));
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            ev[static_cast<std::size_t>(i)] = es.eigenvalues()[i].real();
        std::sort(ev.begin(), ev.end());
        int distinct = 1;
        for (std::size_t i = 1; i < ev.size(); ++i)
            if (ev[i] - ev[i - 1] > 1e-8) distinct++;

        const ssts::LinearOperator op = ssts::block_operator(ts.Wt, ts.Tt);
        const DenseVector b = stack_pair(ts.pt, ts.qt);
        const ssts::SstsPreconditioner P(ts, est.alpha_opt);
        GmresConfig cfg;
        cfg.restart = 2 * sys.n + 2;  // no restart on these sizes
        const auto [z, rep] = ssts::gmres_restarted(op, b, P, cfg);
        INFO("m=" << m << " distinct=" << distinct);
        REQUIRE(rep.converged);
        REQUIRE(rep.cycles == 1);
        REQUIRE(rep.total_inner <= distinct);
    }
}

TEST_CASE("benchmark step counts at desk scale") {
    const ssts::BlockSystem sys = ssts::example1(16);
    SECTION("complex run on the original system: 5 cycles, 4 steps in the last") {
        const ssts::ComplexOperator op = ssts::complex_operator(sys.W, sys.T);
        ssts::ComplexVector b(static_cast<std::size_t>(sys.n));
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = {sys.p[i], sys.q[i]};
        const auto [u, rep] = ssts::gmres_restarted_complex(op, b, GmresConfig{});
        REQUIRE(rep.converged);
        REQUIRE(rep.total_inner >= 42);
        REQUIRE(rep.total_inner <= 46);  // 10*(5-1)+4 = 44 +/- 2
    }
    SECTION("preconditioned run on the transformed system: 1 cycle, 4 steps") {
        const ssts::TransformedSystem ts = ssts::transform(sys, 0.657);
        const ssts::LinearOperator op = ssts::block_operator(ts.Wt, ts.Tt);
        const DenseVector b = stack_pair(ts.pt, ts.qt);
        const ssts::SstsPreconditioner P(ts, 1.019);
        const auto [z, rep] = ssts::gmres_restarted(op, b, P, GmresConfig{});
        REQUIRE(rep.converged);
        REQUIRE(rep.cycles == 1);
        REQUIRE(rep.total_inner >= 3);
        REQUIRE(rep.total_inner <= 5);
    }
}

TEST_CASE("max_cycles exhaustion keeps the count invariant") {
    const ssts::BlockSystem sys = ssts::example1(8);
    const ssts::LinearOperator op = ssts::block_operator(sys.W, sys.T);
    const DenseVector b = stack_pair(sys.p, sys.q);
    GmresConfig cfg;
    cfg.max_cycles = 2;
    const auto [z, rep] = ssts::gmres_restarted(op, b, ssts::IdentityPreconditioner{}, cfg);
    REQUIRE_FALSE(rep.converged);
    REQUIRE(rep.cycles == 2);
    REQUIRE(rep.total_inner == cfg.restart * (rep.cycles - 1) + rep.inner_last);
}

TEST_CASE("gmres config validation") {
    GmresConfig bad;
    bad.restart = 0;
    const ssts::LinearOperator id = [](const DenseVector& in, DenseVector& out) { out = in; };
    REQUIRE_THROWS_AS(ssts::gmres_restarted(id, {1.0, 1.0}, ssts::IdentityPreconditioner{}, bad),
                      std::invalid_argument);
}
