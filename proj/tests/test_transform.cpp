#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ssts/transform.hpp"

using Catch::Approx;
using ssts::DenseVector;
using ssts::SparseSym;

namespace {
ssts::BlockSystem small_system(const SparseSym& W, const SparseSym& T, std::uint32_t seed) {
    ssts::BlockSystem sys;
    sys.W = W;
    sys.T = T;
    sys.n = W.rows();
    sys.p = oracles::random_vector(static_cast<std::size_t>(sys.n), seed);
    sys.q = oracles::random_vector(static_cast<std::size_t>(sys.n), seed + 1);
    sys.descriptor = "test";
    return sys;
}
}  // namespace

TEST_CASE("transform: direct substitution cases") {
    SECTION("W = I, T = 0, omega = 1") {
        const SparseSym zero = SparseSym::from_triplets(4, {});
        const ssts::BlockSystem sys = small_system(ssts::identity(4), zero, 11);
        const ssts::TransformedSystem ts = ssts::transform(sys, 1.0);
        for (ssts::index_t i = 0; i < 4; ++i) {
            REQUIRE(ts.Wt.at(i, i) == 1.0);
            REQUIRE(ts.Tt.at(i, i) == -1.0);
        }
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(ts.pt[i] == sys.p[i] + sys.q[i]);
            REQUIRE(ts.qt[i] == sys.q[i] - sys.p[i]);
        }
    }
    SECTION("W = T = I, omega = 1: Tt cancels exactly") {
        const ssts::BlockSystem sys = small_system(ssts::identity(3), ssts::identity(3), 12);
        const ssts::TransformedSystem ts = ssts::transform(sys, 1.0);
        for (ssts::index_t i = 0; i < 3; ++i) REQUIRE(ts.Wt.at(i, i) == 2.0);
        REQUIRE(ts.Tt.nnz() == 0);
    }
    SECTION("omega <= 0 rejected") {
        const ssts::BlockSystem sys = small_system(ssts::identity(2), ssts::identity(2), 13);
        REQUIRE_THROWS_AS(ssts::transform(sys, 0.0), std::invalid_argument);
        REQUIRE_THROWS_AS(ssts::transform(sys, -1.0), std::invalid_argument);
    }
}

TEST_CASE("transform: reconstruction identity against the dense product oracle") {
    const ssts::BlockSystem sys = ssts::example1(4);
    const double omega = 0.657;
    const ssts::TransformedSystem ts = ssts::transform(sys, omega);
    const ssts::index_t n = sys.n;

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    P.topLeftCorner(n, n) = omega * Eigen::MatrixXd::Identity(n, n);
    P.bottomRightCorner(n, n) = P.topLeftCorner(n, n);
    P.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    P.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);

    const Eigen::MatrixXd want = P * ssts::dense_block_matrix(sys.W, sys.T);
    const Eigen::MatrixXd got = ssts::dense_block_matrix(ts.Wt, ts.Tt);
    REQUIRE((got - want).cwiseAbs().maxCoeff() <= 1e-14 * want.cwiseAbs().maxCoeff());
}

TEST_CASE("transform preserves the solution") {
    SECTION("example 1, omega = 1") {
        REQUIRE(ssts::solution_invariance_check(ssts::example1(2), 1.0).pass);
    }
    SECTION("identity system with closed-form solution") {
        const ssts::BlockSystem sys = small_system(ssts::identity(5), ssts::identity(5), 21);
        const ssts::InvarianceReport rep = ssts::solution_invariance_check(sys, 1.7);
        REQUIRE(rep.pass);
    }
    SECTION("example 2 at its tabulated omega") {
        REQUIRE(ssts::solution_invariance_check(ssts::example2(4), 1.308).pass);
    }
    SECTION("size guard") {
        REQUIRE_THROWS_AS(ssts::solution_invariance_check(ssts::example1(20), 1.0),
                          std::invalid_argument);
    }
}

TEST_CASE("transform properties") {
    SECTION("premultiplier is nonsingular: positive determinant, (w^2+1)^n") {
        for (double omega : {0.1, 1.0, 3.0}) {
            const ssts::index_t n = 4;
            Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * n, 2 * n);
            P.topLeftCorner(n, n) = omega * Eigen::MatrixXd::Identity(n, n);
            P.bottomRightCorner(n, n) = P.topLeftCorner(n, n);
            P.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
            P.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
            const double det = P.partialPivLu().determinant();
            REQUIRE(det > 0.0);
            REQUIRE(det == Approx(std::pow(omega * omega + 1.0, n)).epsilon(1e-12));
        }
    }
    SECTION("Tt is structurally symmetric") {
        const ssts::TransformedSystem ts = ssts::transform(ssts::example2(5), 1.324);
        for (const ssts::Triplet& t : ts.Tt.to_triplets())
            REQUIRE(ts.Tt.at(t.col, t.row) == t.value);
    }
    SECTION("scaling by a power of two commutes bit-exactly") {
        const ssts::BlockSystem sys = ssts::example1(3);
        ssts::BlockSystem scaled_sys = sys;
        scaled_sys.W = ssts::scaled(sys.W, 2.0);
        scaled_sys.T = ssts::scaled(sys.T, 2.0);
        for (std::size_t i = 0; i < sys.p.size(); ++i) {
            scaled_sys.p[i] = 2.0 * sys.p[i];
            scaled_sys.q[i] = 2.0 * sys.q[i];
        }
        const ssts::TransformedSystem a = ssts::transform(scaled_sys, 0.657);
        const ssts::TransformedSystem b = ssts::transform(sys, 0.657);
        for (std::size_t i = 0; i < a.Wt.values().size(); ++i)
            REQUIRE(a.Wt.values()[i] == 2.0 * b.Wt.values()[i]);
        for (std::size_t i = 0; i < a.Tt.values().size(); ++i)
            REQUIRE(a.Tt.values()[i] == 2.0 * b.Tt.values()[i]);
        for (std::size_t i = 0; i < a.pt.size(); ++i) {
            REQUIRE(a.pt[i] == 2.0 * b.pt[i]);
            REQUIRE(a.qt[i] == 2.0 * b.qt[i]);
        }
    }
    SECTION("general scaling commutes to rounding") {
        const ssts::BlockSystem sys = ssts::example1(3);
        ssts::BlockSystem scaled_sys = sys;
        scaled_sys.W = ssts::scaled(sys.W, 3.0);
        scaled_sys.T = ssts::scaled(sys.T, 3.0);
        for (std::size_t i = 0; i < sys.p.size(); ++i) {
            scaled_sys.p[i] = 3.0 * sys.p[i];
            scaled_sys.q[i] = 3.0 * sys.q[i];
        }
        const ssts::TransformedSystem a = ssts::transform(scaled_sys, 0.657);
        const ssts::TransformedSystem b = ssts::transform(sys, 0.657);
        for (std::size_t i = 0; i < a.Wt.values().size(); ++i)
            REQUIRE(a.Wt.values()[i] == Approx(3.0 * b.Wt.values()[i]).epsilon(1e-14));
    }
}
