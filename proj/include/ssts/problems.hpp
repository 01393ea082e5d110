/// @file problems.hpp
/// @brief Benchmark generators: two families of block two-by-two systems
///        [[W, -T], [T, W]] (x, y) = (p, q) arising from complex symmetric
///        systems (W + iT) u = b on an m-by-m interior grid of the unit
///        square, normalized by h^2.

#ifndef SSTS_PROBLEMS_HPP
#define SSTS_PROBLEMS_HPP

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "ssts/sparse.hpp"

namespace ssts {

struct BlockSystem {
    SparseSym W;
    SparseSym T;
    DenseVector p;
    DenseVector q;
    index_t n = 0;
    std::string descriptor;
};

namespace detail {

/// h^2 * K where K = I (x) V + V (x) I, V = h^-2 tridiag(-1,2,-1): the h^2
/// factors cancel, so this is the unscaled Kronecker sum of tridiag(-1,2,-1).
inline SparseSym laplacian_h2(index_t m) {
    return kron_sum(tridiag(m, -1.0, 2.0, -1.0));
}

/// Smallest eigenvalue of h^2*K: 4 - 4 cos(pi h).
inline double laplacian_h2_min_eig(index_t m) {
    const double h = 1.0 / static_cast<double>(m + 1);
    return 4.0 - 4.0 * std::cos(std::numbers::pi * h);
}

}  // namespace detail

/// Parabolic-control benchmark: W = h^2 K + (3 - sqrt 3) h I,
/// T = h^2 K + (3 + sqrt 3) h I, time step tau = h, and right-hand side
/// b_j = (1 - i) j / (tau (1 + j)^2) scaled by h^2 (1-based j).
inline BlockSystem example1(index_t m) {
    if (m < 1) throw std::invalid_argument("example1: m must be >= 1");
    BlockSystem sys;
    sys.n = m * m;
    const double h = 1.0 / static_cast<double>(m + 1);
    const double sqrt3 = std::sqrt(3.0);

    const SparseSym Kh2 = detail::laplacian_h2(m);
    const SparseSym I = identity(sys.n);
    sys.W = add_scaled(1.0, Kh2, (3.0 - sqrt3) * h, I);
    sys.T = add_scaled(1.0, Kh2, (3.0 + sqrt3) * h, I);

    sys.p.resize(static_cast<std::size_t>(sys.n));
    sys.q.resize(static_cast<std::size_t>(sys.n));
    for (index_t j = 1; j <= sys.n; ++j) {
        // h^2 / tau = h with tau = h.
        const double v = h * static_cast<double>(j) /
                         ((1.0 + static_cast<double>(j)) * (1.0 + static_cast<double>(j)));
        sys.p[static_cast<std::size_t>(j - 1)] = v;
        sys.q[static_cast<std::size_t>(j - 1)] = -v;
    }

    char buf[96];
    std::snprintf(buf, sizeof(buf), "example1: m=%d, n=%d, h=%.6g, tau=h", m, sys.n, h);
    sys.descriptor = buf;
    return sys;
}

/// Damped structural dynamics benchmark: W = h^2 (K - theta^2 I),
/// T = h^2 (theta * 10 I + varsigma K) with theta = pi, varsigma = 0.02,
/// M = I, C_V = 10 I, C_H = varsigma K. The right-hand side is
/// b = (W + iT) (1 + i) ones, so the exact solution is x = y = ones.
inline BlockSystem example2(index_t m) {
    if (m < 2) throw std::invalid_argument("example2: m must be >= 2");
    BlockSystem sys;
    sys.n = m * m;
    const double h = 1.0 / static_cast<double>(m + 1);
    const double h2 = h * h;
    const double theta = std::numbers::pi;
    const double varsigma = 0.02;

    const double w_min_eig = detail::laplacian_h2_min_eig(m) - theta * theta * h2;
    if (!(w_min_eig > 0.0))
        throw std::invalid_argument("example2: W not SPD (min eigenvalue " +
                                    std::to_string(w_min_eig) + ")");

    const SparseSym Kh2 = detail::laplacian_h2(m);
    const SparseSym I = identity(sys.n);
    sys.W = add_scaled(1.0, Kh2, -theta * theta * h2, I);
    sys.T = add_scaled(varsigma, Kh2, 10.0 * theta * h2, I);

    const DenseVector ones(static_cast<std::size_t>(sys.n), 1.0);
    const DenseVector Wo = sys.W.multiply(ones);
    const DenseVector To = sys.T.multiply(ones);
    sys.p = linear_combo(1.0, Wo, -1.0, To);
    sys.q = linear_combo(1.0, Wo, 1.0, To);

    char buf[96];
    std::snprintf(buf, sizeof(buf), "example2: m=%d, n=%d, h=%.6g, theta=pi, varsigma=0.02",
                  m, sys.n, h);
    sys.descriptor = buf;
    return sys;
}

}  // namespace ssts

#endif  // SSTS_PROBLEMS_HPP
