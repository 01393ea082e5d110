/// @file eigen_bridge.hpp
/// @brief Conversions between SparseSym/DenseVector and Eigen types.

#ifndef SSTS_EIGEN_BRIDGE_HPP
#define SSTS_EIGEN_BRIDGE_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ssts/sparse.hpp"

namespace ssts {

inline Eigen::SparseMatrix<double> to_eigen_sparse(const SparseSym& A) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(A.nnz()));
    for (const Triplet& e : A.to_triplets()) t.emplace_back(e.row, e.col, e.value);
    Eigen::SparseMatrix<double> M(A.rows(), A.rows());
    M.setFromTriplets(t.begin(), t.end());
    M.makeCompressed();
    return M;
}

inline Eigen::MatrixXd to_eigen_dense(const SparseSym& A) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(A.rows(), A.rows());
    for (const Triplet& e : A.to_triplets()) M(e.row, e.col) = e.value;
    return M;
}

inline Eigen::VectorXd to_eigen(const DenseVector& x) {
    return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

inline DenseVector from_eigen(const Eigen::VectorXd& x) {
    return DenseVector(x.data(), x.data() + x.size());
}

}  // namespace ssts

#endif  // SSTS_EIGEN_BRIDGE_HPP
