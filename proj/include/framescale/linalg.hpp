#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "framescale/hermitian.hpp"

namespace framescale {

/// Number of singular values above tol.rank_rel * sigma_max. Zero for an
/// all-zero (or empty) matrix.
std::size_t numerical_rank(const Eigen::MatrixXd& columns, const Tolerances& tol);
std::size_t numerical_rank(const Eigen::MatrixXcd& columns, const Tolerances& tol);
std::size_t numerical_rank(std::span<const Eigen::VectorXd> columns, const Tolerances& tol);

/// Stacks equal-length vectors as the columns of a matrix.
Eigen::MatrixXd column_matrix(std::span<const Eigen::VectorXd> columns);

struct LeastSquaresResult {
    Eigen::VectorXd x;
    double residual = 0.0;  ///< ||M x - b||_2
};

/// Minimum-norm minimizer of ||M x - b||_2.
LeastSquaresResult least_squares(const Eigen::MatrixXd& M, const Eigen::VectorXd& b);

/// Lawson-Hanson active set method for min ||M x - b||_2 subject to x >= 0.
LeastSquaresResult nonnegative_least_squares(const Eigen::MatrixXd& M, const Eigen::VectorXd& b,
                                             int max_iterations = 0);

/// Unit vector z minimizing ||M z||, i.e. the right singular vector of the
/// smallest singular value. For a column-rank-deficient M this spans part of
/// the null space.
Eigen::VectorXd null_direction(const Eigen::MatrixXd& M);

}  // namespace framescale
