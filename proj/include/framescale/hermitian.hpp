#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace framescale {

using cdouble = std::complex<double>;

enum class ScalarField { Real, Complex };

std::string_view to_string(ScalarField field);

/// Real dimension of the space of d x d self-adjoint matrices over `field`:
/// d^2 for Hermitian matrices, d(d+1)/2 for real symmetric ones.
std::size_t real_dimension(ScalarField field, std::size_t d);

/// Numerical thresholds shared by every routine in the library.
struct Tolerances {
    double rank_rel = 1e-10;      ///< singular value cutoff relative to the largest one
    double residual_abs = 1e-9;   ///< largest accepted ||A w - target||
    double nonneg_abs = 1e-9;     ///< weights above -nonneg_abs count as nonnegative
    double dedup_abs = 1e-8;      ///< L-inf distance under which two weight vectors coincide

    /// Throws ValidationError unless all thresholds are positive and
    /// residual_abs >= machine epsilon * D.
    void validate(std::size_t D = 1) const;
};

/// A d x d Hermitian (or real symmetric) matrix. Hermitian symmetry holds
/// bit-exactly: the lower triangle is always the conjugate of the upper one
/// and the diagonal has zero imaginary part.
class HermitianMatrix {
public:
    explicit HermitianMatrix(std::size_t d, ScalarField field = ScalarField::Complex);

    static HermitianMatrix identity(std::size_t d, ScalarField field = ScalarField::Complex);

    /// Symmetrizes `m` as (m + m^*)/2 after checking that it is square and
    /// Hermitian to within `tol` (entrywise, absolute). For the real field the
    /// imaginary parts must also be within `tol` of zero; they are dropped.
    static HermitianMatrix from_matrix(const Eigen::MatrixXcd& m, ScalarField field,
                                       double tol = 1e-12);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    ScalarField field() const { return field_; }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    cdouble operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    double trace() const;
    double frobenius_norm() const { return entries_.norm(); }

    HermitianMatrix& operator+=(const HermitianMatrix& other);
    HermitianMatrix& operator-=(const HermitianMatrix& other);
    HermitianMatrix& operator*=(double s);

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
    friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
        return a.field_ == b.field_ && a.entries_ == b.entries_;
    }

private:
    HermitianMatrix(Eigen::MatrixXcd entries, ScalarField field)
        : entries_(std::move(entries)), field_(field) {}

    friend HermitianMatrix outer_product(const Eigen::VectorXcd& x);
    friend HermitianMatrix outer_product(const Eigen::VectorXd& x);

    Eigen::MatrixXcd entries_;
    ScalarField field_;
};

/// x x^*. Complex input gives a Complex-field matrix, real input a Real-field one.
HermitianMatrix outer_product(const Eigen::VectorXcd& x);
HermitianMatrix outer_product(const Eigen::VectorXd& x);

/// Trace(S T), the real inner product on self-adjoint matrices.
double trace_inner(const HermitianMatrix& S, const HermitianMatrix& T);

/// Coordinates for self-adjoint d x d matrices that turn the trace inner
/// product into the Euclidean dot product. Layout: S_11, ..., S_dd, then for
/// each pair i < j in row-major order sqrt(2) Re S_ij followed (complex field
/// only) by sqrt(2) Im S_ij.
class RealVectorization {
public:
    RealVectorization(std::size_t d, ScalarField field);

    std::size_t dim() const { return d_; }
    ScalarField field() const { return field_; }
    std::size_t real_dim() const { return D_; }

private:
    std::size_t d_;
    ScalarField field_;
    std::size_t D_;
};

Eigen::VectorXd vectorize(const HermitianMatrix& S, const RealVectorization& v);
HermitianMatrix devectorize(const Eigen::VectorXd& u, const RealVectorization& v);

}  // namespace framescale
