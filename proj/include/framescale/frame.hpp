#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "framescale/hermitian.hpp"

namespace framescale {

/// An ordered list of n nonzero vectors in R^d or C^d. Spanning is not
/// required; whether the vectors form a frame is reported by tightness().
/// Real-field vectors are stored with zero imaginary parts.
class Frame {
public:
    /// Throws DimensionError on empty input or a vector of the wrong length
    /// and ValidationError on a (numerically) zero vector, a nonzero imaginary
    /// part in a real frame, or a label count different from n.
    Frame(ScalarField field, std::size_t d, std::vector<Eigen::VectorXcd> vectors,
          std::vector<std::string> labels = {});

    static Frame real(std::size_t d, const std::vector<Eigen::VectorXd>& vectors,
                      std::vector<std::string> labels = {});
    static Frame complex(std::size_t d, std::vector<Eigen::VectorXcd> vectors,
                         std::vector<std::string> labels = {});

    ScalarField field() const { return field_; }
    std::size_t dim() const { return d_; }
    std::size_t size() const { return vectors_.size(); }
    const Eigen::VectorXcd& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<Eigen::VectorXcd>& vectors() const { return vectors_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Real dimension of the matrix space holding the outer products.
    std::size_t matrix_space_dim() const { return real_dimension(field_, d_); }

    /// d x n matrix whose columns are the frame vectors.
    Eigen::MatrixXcd synthesis_matrix() const;
    /// Synthesis matrix restricted to `indices`.
    Eigen::MatrixXcd synthesis_matrix(std::span<const std::size_t> indices) const;

    Frame subframe(std::span<const std::size_t> indices) const;

    /// phi_i phi_i^* in the frame's field.
    HermitianMatrix outer_product(std::size_t i) const;

private:
    ScalarField field_;
    std::size_t d_;
    std::vector<Eigen::VectorXcd> vectors_;
    std::vector<std::string> labels_;
};

struct TightnessInfo {
    bool is_frame = false;
    double lower_bound = 0.0;  ///< A, the smallest eigenvalue of S (0 when not a frame)
    double upper_bound = 0.0;  ///< B, the largest eigenvalue of S
    bool is_tight = false;
    bool is_parseval = false;
};

/// Guard for routines whose cost grows like 2^n.
struct SearchGuard {
    std::size_t max_n = 24;
    bool force = false;

    /// Throws ExponentialGuardError when n > max_n and force is unset.
    void check(std::size_t n, const char* what) const;
};

/// S = sum_i phi_i phi_i^*.
HermitianMatrix frame_operator(const Frame& f);

TightnessInfo tightness(const Frame& f, const Tolerances& tol = {});

/// Whether the vectors span the ambient space (numerical rank d).
bool spans(const Frame& f, const Tolerances& tol = {});

/// Outer products phi_i phi_i^* vectorized as the columns of a D x n matrix.
Eigen::MatrixXd outer_product_columns(const Frame& f);

bool outer_products_independent(const Frame& f, const Tolerances& tol = {});

/// Size of the smallest linearly dependent subset, or n + 1 if the vectors
/// are linearly independent.
std::size_t spark(const Frame& f, const Tolerances& tol = {}, const SearchGuard& guard = {});

/// spark == d + 1. Decided by checking that every d-subset has rank d.
bool is_full_spark(const Frame& f, const Tolerances& tol = {}, const SearchGuard& guard = {});

/// Spark of the vectorized outer products, same n + 1 convention.
std::size_t outer_spark(const Frame& f, const Tolerances& tol = {}, const SearchGuard& guard = {});

/// For every index set I, either {phi_i : i in I} or its complement spans.
bool complement_property(const Frame& f, const Tolerances& tol = {},
                         const SearchGuard& guard = {});

/// I.i.d. standard Gaussian entries (independent real and imaginary parts in
/// the complex case) from a generator seeded with `seed`.
Frame random_frame(std::size_t d, std::size_t n, ScalarField field, std::uint64_t seed,
                   bool unit_norm = false);

struct NormalizedFrame {
    Frame unit;
    std::vector<double> norms;
};

/// Divides every vector by its norm. A weight vector w scales `unit` iff
/// (w_i / norms_i^2) scales the original frame.
NormalizedFrame normalize_frame(const Frame& f);

}  // namespace framescale
