#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ssts/problems.hpp"
#include "ssts/spd_solve.hpp"
#include "ssts/transform.hpp"

using Catch::Approx;
using ssts::DenseVector;
using ssts::SparseSym;

namespace {
double solve_residual(const SparseSym& A, const DenseVector& x, const DenseVector& b) {
    DenseVector Ax = A.multiply(x);
    for (std::size_t i = 0; i < Ax.size(); ++i) Ax[i] -= b[i];
    return ssts::norm2(Ax) / ssts::norm2(b);
}
}  // namespace

TEST_CASE("factorize/solve basics") {
    SECTION("identity") {
        const ssts::SpdFactorization F(ssts::identity(3));
        const DenseVector b{1.0, -2.0, 3.0};
        REQUIRE(F.solve(b) == b);
    }
    SECTION("diagonal") {
        const std::vector<ssts::Triplet> t{{0, 0, 4.0}, {1, 1, 9.0}};
        const ssts::SpdFactorization F(SparseSym::from_triplets(2, t));
        const DenseVector x = F.solve({4.0, 9.0});
        REQUIRE(x[0] == Approx(1.0).epsilon(1e-14));
        REQUIRE(x[1] == Approx(1.0).epsilon(1e-14));
    }
    SECTION("transformed (1,1) block vs dense LU oracle") {
        const ssts::BlockSystem sys = ssts::example1(4);
        const ssts::TransformedSystem ts = ssts::transform(sys, 0.657);
        const ssts::SpdFactorization F(ts.Wt);
        const DenseVector b = oracles::random_vector(16, 2024);
        const DenseVector x = F.solve(b);
        const Eigen::VectorXd xd =
            ssts::to_eigen_dense(ts.Wt).partialPivLu().solve(ssts::to_eigen(b));
        for (std::size_t i = 0; i < 16; ++i)
            REQUIRE(x[i] == Approx(xd[static_cast<Eigen::Index>(i)]).epsilon(1e-10));
    }
    SECTION("dimension mismatch") {
        const ssts::SpdFactorization F(ssts::identity(3));
        REQUIRE_THROWS_AS(F.solve({1.0}), std::invalid_argument);
    }
}

TEST_CASE("factorize rejects indefinite matrices with a pivot index") {
    const std::vector<ssts::Triplet> t{{0, 0, 1.0}, {0, 1, 2.0}, {1, 1, 1.0}};
    const SparseSym A = SparseSym::from_triplets(2, t);  // eigenvalues 3, -1
    try {
        ssts::SpdFactorization F(A);
        FAIL("expected NotSpdError");
    } catch (const ssts::NotSpdError& e) {
        REQUIRE(std::string(e.what()).find("not SPD") != std::string::npos);
        REQUIRE(e.index() >= 0);
        REQUIRE(e.index() < 2);
    }
}

TEST_CASE("solve residual invariant over an SPD family") {
    std::vector<SparseSym> mats;
    mats.push_back(ssts::identity(7));
    mats.push_back(oracles::random_spd(20, 5));
    mats.push_back(ssts::transform(ssts::example1(4), 0.657).Wt);
    mats.push_back(ssts::example2(5).W);
    for (const SparseSym& A : mats) {
        const ssts::SpdFactorization F(A);
        const DenseVector b = oracles::random_vector(static_cast<std::size_t>(A.rows()), 77);
        REQUIRE(solve_residual(A, F.solve(b), b) <= 1e-10);
    }
}

TEST_CASE("refactoring reproduces the solve") {
    const SparseSym A = oracles::random_spd(15, 9);
    const DenseVector b = oracles::random_vector(15, 10);
    const DenseVector x1 = ssts::SpdFactorization(A).solve(b);
    const DenseVector x2 = ssts::SpdFactorization(A).solve(b);
    for (std::size_t i = 0; i < x1.size(); ++i)
        REQUIRE(x1[i] == Approx(x2[i]).margin(1e-14 * ssts::norm2(x1)));
}

TEST_CASE("cg basics") {
    ssts::InnerSolveConfig cfg;
    cfg.cg_tol = 1e-13;
    SECTION("identity in one iteration") {
        const DenseVector b{1.0, 2.0, 3.0};
        const ssts::CgResult r = ssts::cg_solve(ssts::identity(3), b, cfg);
        REQUIRE(r.converged);
        REQUIRE(r.iterations == 1);
        for (std::size_t i = 0; i < 3; ++i) REQUIRE(r.x[i] == Approx(b[i]).epsilon(1e-12));
    }
    SECTION("three distinct eigenvalues terminate in three steps") {
        const std::vector<ssts::Triplet> t{{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}};
        const ssts::CgResult r = ssts::cg_solve(SparseSym::from_triplets(3, t), {1.0, 2.0, 3.0}, cfg);
        REQUIRE(r.converged);
        REQUIRE(r.iterations <= 3);
        for (std::size_t i = 0; i < 3; ++i) REQUIRE(r.x[i] == Approx(1.0).epsilon(1e-10));
    }
    SECTION("Kronecker-sum stencil vs direct factorization oracle") {
        const SparseSym K = ssts::kron_sum(ssts::tridiag(8, -1.0, 2.0, -1.0));
        const DenseVector b = oracles::random_vector(64, 31);
        ssts::InnerSolveConfig tight = cfg;
        tight.cg_tol = 1e-12;
        const ssts::CgResult r = ssts::cg_solve(K, b, tight);
        REQUIRE(r.converged);
        const DenseVector xd = ssts::SpdFactorization(K).solve(b);
        double diff = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) diff = std::max(diff, std::abs(r.x[i] - xd[i]));
        REQUIRE(diff <= 1e-10 * ssts::norm2(xd));
    }
    SECTION("max-iteration exhaustion returns the best iterate") {
        ssts::InnerSolveConfig tiny;
        tiny.cg_max_iters = 2;
        tiny.cg_tol = 1e-15;
        const SparseSym K = ssts::kron_sum(ssts::tridiag(6, -1.0, 2.0, -1.0));
        const ssts::CgResult r = ssts::cg_solve(K, oracles::random_vector(36, 8), tiny);
        REQUIRE_FALSE(r.converged);
        REQUIRE(r.iterations == 2);
        REQUIRE(r.rel_residual > 0.0);
    }
    SECTION("config validation") {
        ssts::InnerSolveConfig bad;
        bad.cg_tol = 2.0;
        REQUIRE_THROWS_AS(ssts::cg_solve(ssts::identity(2), {1.0, 1.0}, bad),
                          std::invalid_argument);
    }
}

TEST_CASE("cg iteration count bounded by distinct eigenvalue count") {
    for (int k = 1; k <= 10; ++k) {
        std::vector<ssts::Triplet> t;
        const ssts::index_t n = 3 * k;
        for (ssts::index_t i = 0; i < n; ++i)
            t.push_back({i, i, static_cast<double>(1 + i % k)});  // k distinct values
        ssts::InnerSolveConfig cfg;
        cfg.cg_tol = 1e-10;
        const ssts::CgResult r =
            ssts::cg_solve(SparseSym::from_triplets(n, t),
                           oracles::random_vector(static_cast<std::size_t>(n), 100 + k), cfg);
        REQUIRE(r.converged);
        REQUIRE(r.iterations <= k);
    }
}

TEST_CASE("direct and cg paths agree on the benchmark matrices") {
    std::vector<SparseSym> mats;
    for (int m : {4, 8, 16}) {
        const ssts::BlockSystem e1 = ssts::example1(m);
        const ssts::BlockSystem e2 = ssts::example2(m);
        mats.push_back(ssts::transform(e1, 0.657).Wt);
        mats.push_back(ssts::transform(e2, 1.308).Wt);
        mats.push_back(e2.W);
        mats.push_back(ssts::add_scaled(1.0, e1.W, 1.06, ssts::identity(e1.n)));  // aI + W
        mats.push_back(ssts::add_scaled(1.0, e1.T, 1.06, ssts::identity(e1.n)));  // aI + T
    }
    for (const SparseSym& A : mats) {
        const DenseVector b = oracles::random_vector(static_cast<std::size_t>(A.rows()), 61);
        ssts::InnerSolveConfig direct_cfg;
        const ssts::InnerSolver direct(A, direct_cfg);
        ssts::InnerSolveConfig cg_cfg;
        cg_cfg.mode = ssts::InnerSolveConfig::Mode::cg;
        cg_cfg.cg_tol = 1e-13;
        const ssts::InnerSolver cg(A, cg_cfg);
        const DenseVector xd = direct.solve(b);
        const DenseVector xc = cg.solve(b);
        double diff = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) diff = std::max(diff, std::abs(xd[i] - xc[i]));
        REQUIRE(diff <= 1e-8 * (1.0 + ssts::norm2(xd)));
    }
}
