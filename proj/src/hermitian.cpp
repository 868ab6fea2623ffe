#include "framescale/hermitian.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "framescale/errors.hpp"

namespace framescale {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

using Index = Eigen::Index;

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

ScalarField join(ScalarField a, ScalarField b) {
    return (a == ScalarField::Real && b == ScalarField::Real) ? ScalarField::Real
                                                              : ScalarField::Complex;
}

}  // namespace

std::string_view to_string(ScalarField field) {
    return field == ScalarField::Real ? "real" : "complex";
}

std::size_t real_dimension(ScalarField field, std::size_t d) {
    return field == ScalarField::Complex ? d * d : d * (d + 1) / 2;
}

void Tolerances::validate(std::size_t D) const {
    if (!(rank_rel > 0.0) || !(residual_abs > 0.0) || !(nonneg_abs > 0.0) || !(dedup_abs > 0.0)) {
        throw ValidationError("tolerances must be strictly positive");
    }
    const double floor = std::numeric_limits<double>::epsilon() * static_cast<double>(D);
    if (residual_abs < floor) {
        throw ValidationError("residual tolerance " + std::to_string(residual_abs) +
                              " is below machine epsilon * D = " + std::to_string(floor));
    }
}

HermitianMatrix::HermitianMatrix(std::size_t d, ScalarField field)
    : entries_(Eigen::MatrixXcd::Zero(static_cast<Index>(d), static_cast<Index>(d))),
      field_(field) {}

HermitianMatrix HermitianMatrix::identity(std::size_t d, ScalarField field) {
    return HermitianMatrix(Eigen::MatrixXcd::Identity(static_cast<Index>(d), static_cast<Index>(d)),
                           field);
}

HermitianMatrix HermitianMatrix::from_matrix(const Eigen::MatrixXcd& m, ScalarField field,
                                             double tol) {
    if (m.rows() != m.cols()) {
        throw DimensionError("Hermitian matrix must be square, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    }
    const Index d = m.rows();
    Eigen::MatrixXcd out(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i; j < d; ++j) {
            const cdouble a = m(i, j);
            const cdouble b = std::conj(m(j, i));
            if (std::abs(a - b) > tol) {
                throw ValidationError("matrix is not Hermitian at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            }
            cdouble v = (a + b) / 2.0;
            if (field == ScalarField::Real) {
                if (std::abs(v.imag()) > tol) {
                    throw ValidationError("real symmetric matrix has an imaginary entry at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
                }
                v.imag(0.0);
            }
            if (i == j) v.imag(0.0);
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix(std::move(out), field);
}

double HermitianMatrix::trace() const { return entries_.diagonal().real().sum(); }

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
    require_same_dim(*this, other, "HermitianMatrix +");
    entries_ += other.entries_;
    field_ = join(field_, other.field_);
    return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
    require_same_dim(*this, other, "HermitianMatrix -");
    entries_ -= other.entries_;
    field_ = join(field_, other.field_);
    return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
    entries_ *= s;
    return *this;
}

HermitianMatrix outer_product(const Eigen::VectorXcd& x) {
    const Index d = x.size();
    Eigen::MatrixXcd out(d, d);
    for (Index i = 0; i < d; ++i) {
        out(i, i) = cdouble(std::norm(x(i)), 0.0);
        for (Index j = i + 1; j < d; ++j) {
            const cdouble v = x(i) * std::conj(x(j));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix(std::move(out), ScalarField::Complex);
}

HermitianMatrix outer_product(const Eigen::VectorXd& x) {
    const Index d = x.size();
    Eigen::MatrixXcd out(d, d);
    for (Index i = 0; i < d; ++i) {
        out(i, i) = x(i) * x(i);
        for (Index j = i + 1; j < d; ++j) {
            const double v = x(i) * x(j);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return HermitianMatrix(std::move(out), ScalarField::Real);
}

double trace_inner(const HermitianMatrix& S, const HermitianMatrix& T) {
    require_same_dim(S, T, "trace_inner");
    // Trace(ST) = sum_ij S_ij T_ji; the imaginary part vanishes for Hermitian operands.
    return (S.entries().array() * T.entries().transpose().array()).sum().real();
}

RealVectorization::RealVectorization(std::size_t d, ScalarField field)
    : d_(d), field_(field), D_(real_dimension(field, d)) {
    if (d == 0) throw DimensionError("vectorization dimension must be positive");
}

Eigen::VectorXd vectorize(const HermitianMatrix& S, const RealVectorization& v) {
    if (S.dim() != v.dim()) {
        throw DimensionError("vectorize: matrix is " + std::to_string(S.dim()) +
                             "x" + std::to_string(S.dim()) + ", vectorization expects d = " +
                             std::to_string(v.dim()));
    }
    const Index d = static_cast<Index>(v.dim());
    const bool complex = v.field() == ScalarField::Complex;
    Eigen::VectorXd u(static_cast<Index>(v.real_dim()));
    Index k = 0;
    for (Index i = 0; i < d; ++i) u(k++) = S.entries()(i, i).real();
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            const cdouble s = S.entries()(i, j);
            u(k++) = kSqrt2 * s.real();
            if (complex) {
                u(k++) = kSqrt2 * s.imag();
            } else if (s.imag() != 0.0) {
                throw ValidationError("vectorize: real vectorization of a matrix with a "
                                      "nonzero imaginary entry");
            }
        }
    }
    return u;
}

HermitianMatrix devectorize(const Eigen::VectorXd& u, const RealVectorization& v) {
    if (static_cast<std::size_t>(u.size()) != v.real_dim()) {
        throw DimensionError("devectorize: expected length " + std::to_string(v.real_dim()) +
                             ", got " + std::to_string(u.size()));
    }
    const Index d = static_cast<Index>(v.dim());
    const bool complex = v.field() == ScalarField::Complex;
    Eigen::MatrixXcd m(d, d);
    Index k = 0;
    for (Index i = 0; i < d; ++i) m(i, i) = u(k++);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            const double re = u(k++) / kSqrt2;
            const double im = complex ? u(k++) / kSqrt2 : 0.0;
            m(i, j) = cdouble(re, im);
            m(j, i) = cdouble(re, -im);
        }
    }
    return HermitianMatrix::from_matrix(m, v.field(), 0.0);
}

}  // namespace framescale
