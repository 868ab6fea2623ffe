#include "framescale/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "framescale/errors.hpp"

namespace framescale {

namespace {

template <class Matrix>
std::size_t rank_from_singular_values(const Matrix& m, const Tolerances& tol) {
    if (m.size() == 0) return 0;
    const Eigen::VectorXd sv = m.jacobiSvd().singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    if (!(sigma_max > 0.0)) return 0;
    const double cutoff = tol.rank_rel * sigma_max;
    return static_cast<std::size_t>((sv.array() > cutoff).count());
}

}  // namespace

std::size_t numerical_rank(const Eigen::MatrixXd& columns, const Tolerances& tol) {
    return rank_from_singular_values(columns, tol);
}

std::size_t numerical_rank(const Eigen::MatrixXcd& columns, const Tolerances& tol) {
    return rank_from_singular_values(columns, tol);
}

std::size_t numerical_rank(std::span<const Eigen::VectorXd> columns, const Tolerances& tol) {
    return numerical_rank(column_matrix(columns), tol);
}

Eigen::MatrixXd column_matrix(std::span<const Eigen::VectorXd> columns) {
    if (columns.empty()) return {};
    const Eigen::Index rows = columns.front().size();
    Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) {
            throw DimensionError("column " + std::to_string(j) + " has length " +
                                 std::to_string(columns[j].size()) + ", expected " +
                                 std::to_string(rows));
        }
        m.col(static_cast<Eigen::Index>(j)) = columns[j];
    }
    return m;
}

LeastSquaresResult least_squares(const Eigen::MatrixXd& M, const Eigen::VectorXd& b) {
    if (M.rows() != b.size()) {
        throw DimensionError("least_squares: matrix has " + std::to_string(M.rows()) +
                             " rows but right-hand side has length " + std::to_string(b.size()));
    }
    if (M.cols() == 0) throw DimensionError("least_squares: matrix has no columns");
    LeastSquaresResult out;
    out.x = M.completeOrthogonalDecomposition().solve(b);
    out.residual = (M * out.x - b).norm();
    return out;
}

LeastSquaresResult nonnegative_least_squares(const Eigen::MatrixXd& M, const Eigen::VectorXd& b,
                                             int max_iterations) {
    if (M.rows() != b.size()) {
        throw DimensionError("nonnegative_least_squares: row count does not match rhs length");
    }
    const Eigen::Index n = M.cols();
    if (n == 0) throw DimensionError("nonnegative_least_squares: matrix has no columns");
    if (max_iterations <= 0) max_iterations = static_cast<int>(30 * n + 30);

    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff()) * std::max(1.0, b.cwiseAbs().maxCoeff());
    const double grad_tol = 1e3 * std::numeric_limits<double>::epsilon() *
                            static_cast<double>(std::max(M.rows(), n)) * scale;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);

    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        z = Eigen::VectorXd::Zero(n);
        if (idx.empty()) return;
        Eigen::MatrixXd sub(M.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = M.col(idx[k]);
        const Eigen::VectorXd zs = sub.completeOrthogonalDecomposition().solve(b);
        for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zs(static_cast<Eigen::Index>(k));
    };

    // Columns whose entry produced a nonpositive coefficient are skipped until
    // x changes again; otherwise rounding could re-select them forever.
    std::vector<bool> blocked(static_cast<std::size_t>(n), false);

    for (int outer = 0; outer < max_iterations; ++outer) {
        const Eigen::VectorXd grad = M.transpose() * (b - M * x);
        Eigen::Index best = -1;
        double best_val = grad_tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (!passive[uj] && !blocked[uj] && grad(j) > best_val) {
                best_val = grad(j);
                best = j;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        Eigen::VectorXd z;
        solve_passive(z);
        if (z(best) <= 0.0) {
            passive[static_cast<std::size_t>(best)] = false;
            blocked[static_cast<std::size_t>(best)] = true;
            continue;
        }
        for (int inner = 0; inner <= n; ++inner) {
            bool feasible = true;
            double alpha = 1.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    feasible = false;
                    const double denom = x(j) - z(j);
                    if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
                }
            }
            if (feasible) break;
            x += alpha * (z - x);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= 1e-15 * scale) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
            solve_passive(z);
        }
        x = z.cwiseMax(0.0);
        std::fill(blocked.begin(), blocked.end(), false);
    }

    LeastSquaresResult out;
    out.x = std::move(x);
    out.residual = (M * out.x - b).norm();
    return out;
}

Eigen::VectorXd null_direction(const Eigen::MatrixXd& M) {
    if (M.cols() == 0) throw DimensionError("null_direction: matrix has no columns");
    if (M.rows() < M.cols()) {
        // Pad with zero rows so the full V factor covers the whole domain.
        Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(M.cols(), M.cols());
        padded.topRows(M.rows()) = M;
        return null_direction(padded);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    return svd.matrixV().col(M.cols() - 1);
}

}  // namespace framescale
