#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "framescale/errors.hpp"
#include "framescale/hermitian.hpp"
#include "framescale/linalg.hpp"
#include "support.hpp"

using namespace framescale;
using fstest::cvec;

namespace {

HermitianMatrix random_hermitian(std::size_t d, ScalarField field, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = cdouble(g(rng), field == ScalarField::Complex ? g(rng) : 0.0);
    return HermitianMatrix::from_matrix(m + m.adjoint(), field);
}

// Direct Trace(ST) by dense product.
double trace_oracle(const HermitianMatrix& S, const HermitianMatrix& T) {
    return (S.entries() * T.entries()).trace().real();
}

}  // namespace

TEST_CASE("real dimension of the matrix space") {
    CHECK(real_dimension(ScalarField::Complex, 3) == 9);
    CHECK(real_dimension(ScalarField::Real, 3) == 6);
    CHECK(real_dimension(ScalarField::Real, 1) == 1);
}

TEST_CASE("tolerances validation") {
    Tolerances t;
    CHECK_NOTHROW(t.validate(16));
    t.rank_rel = 0.0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    Tolerances tiny;
    tiny.residual_abs = 1e-18;
    CHECK_THROWS_AS(tiny.validate(16), ValidationError);
}

TEST_CASE("outer product examples") {
    const HermitianMatrix e1 = outer_product(cvec({1, 0}));
    CHECK(e1(0, 0) == cdouble(1, 0));
    CHECK(e1(0, 1) == cdouble(0, 0));
    CHECK(e1(1, 1) == cdouble(0, 0));

    const double r = 1 / std::sqrt(2.0);
    const HermitianMatrix h = outer_product(cvec({r, r}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(h(i, j) - 0.5) < 1e-15);

    CHECK(outer_product(Eigen::VectorXcd(Eigen::VectorXcd::Zero(3))).frobenius_norm() == 0.0);
}

TEST_CASE("outer product is exactly Hermitian and has trace |x|^2") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + static_cast<std::size_t>(trial % 6);
        const Eigen::VectorXcd x = fstest::gaussian_vector(d, ScalarField::Complex, rng);
        const HermitianMatrix P = outer_product(x);
        for (std::size_t i = 0; i < d; ++i) {
            CHECK(P(i, i).imag() == 0.0);
            for (std::size_t j = 0; j < d; ++j) CHECK(P(i, j) == std::conj(P(j, i)));
        }
        CHECK(std::abs(P.trace() - x.squaredNorm()) <= 1e-14 * x.squaredNorm());
    }
}

TEST_CASE("outer product scales by |lambda|^2") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + static_cast<std::size_t>(trial % 5);
        const auto field = trial % 2 ? ScalarField::Complex : ScalarField::Real;
        const RealVectorization vec(d, ScalarField::Complex);
        const Eigen::VectorXcd y = fstest::gaussian_vector(d, field, rng);
        const cdouble lambda(g(rng), field == ScalarField::Complex ? g(rng) : 0.0);
        const Eigen::VectorXd lhs = vectorize(outer_product(Eigen::VectorXcd(lambda * y)), vec);
        const Eigen::VectorXd rhs = std::norm(lambda) * vectorize(outer_product(y), vec);
        CHECK((lhs - rhs).norm() <= 1e-13 * rhs.norm());
    }
}

TEST_CASE("trace inner product") {
    for (std::size_t d = 1; d <= 5; ++d) {
        const auto I = HermitianMatrix::identity(d);
        CHECK(trace_inner(I, I) == doctest::Approx(static_cast<double>(d)));
        CHECK(trace_inner(HermitianMatrix(d), I) == 0.0);
    }
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXcd phi = fstest::gaussian_vector(4, ScalarField::Complex, rng);
        phi.normalize();
        CHECK(trace_inner(outer_product(phi), HermitianMatrix::identity(4)) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(trace_inner(HermitianMatrix::identity(2), HermitianMatrix::identity(3)),
                    DimensionError);
}

TEST_CASE("vectorize examples") {
    const RealVectorization v(2, ScalarField::Complex);
    CHECK(v.real_dim() == 4);
    const Eigen::VectorXd id = vectorize(HermitianMatrix::identity(2), v);
    CHECK(id.isApprox(Eigen::Vector4d(1, 1, 0, 0)));

    Eigen::MatrixXcd half = Eigen::MatrixXcd::Constant(2, 2, 0.5);
    const Eigen::VectorXd u = vectorize(HermitianMatrix::from_matrix(half, ScalarField::Complex), v);
    CHECK(u(0) == 0.5);
    CHECK(u(1) == 0.5);
    CHECK(u(2) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
    CHECK(u(3) == 0.0);

    // Imaginary coordinate sits right after the real one of the same pair.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 2) = cdouble(0, 1);
    m(2, 0) = cdouble(0, -1);
    const Eigen::VectorXd w = vectorize(HermitianMatrix::from_matrix(m, ScalarField::Complex),
                                        RealVectorization(3, ScalarField::Complex));
    CHECK(w(3 + 2 * 1 + 1) == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(vectorize(HermitianMatrix::identity(3), v), DimensionError);
}

TEST_CASE("vectorization is an isometry for the trace inner product") {
    std::mt19937_64 rng(2024);
    for (auto field : {ScalarField::Real, ScalarField::Complex}) {
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t d = 1 + static_cast<std::size_t>(trial % 6);
            const RealVectorization v(d, field);
            const HermitianMatrix S = random_hermitian(d, field, rng);
            const HermitianMatrix T = random_hermitian(d, field, rng);
            const double dot = vectorize(S, v).dot(vectorize(T, v));
            const double bound = 1e-12 * (1 + S.frobenius_norm() * T.frobenius_norm());
            CHECK(std::abs(dot - trace_oracle(S, T)) <= bound);
            CHECK(std::abs(trace_inner(S, T) - trace_oracle(S, T)) <= bound);
        }
    }
}

TEST_CASE("devectorize inverts vectorize") {
    std::mt19937_64 rng(99);
    for (auto field : {ScalarField::Real, ScalarField::Complex}) {
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t d = 1 + static_cast<std::size_t>(trial % 6);
            const RealVectorization v(d, field);
            const HermitianMatrix S = random_hermitian(d, field, rng);
            const HermitianMatrix back = devectorize(vectorize(S, v), v);
            CHECK(back.field() == field);
            // The sqrt(2) scaling is undone to within one rounding.
            CHECK((back.entries() - S.entries()).cwiseAbs().maxCoeff() <=
                  4e-16 * S.entries().cwiseAbs().maxCoeff());
            for (std::size_t i = 0; i < d; ++i) CHECK(S(i, i) == back(i, i));
        }
    }
    const RealVectorization v(2, ScalarField::Complex);
    CHECK(devectorize(Eigen::VectorXd::Zero(4), v) == HermitianMatrix(2));
    CHECK(devectorize(Eigen::Vector4d(1, 1, 0, 0), v) == HermitianMatrix::identity(2));
    CHECK_THROWS_AS(devectorize(Eigen::VectorXd::Zero(3), v), DimensionError);
}

TEST_CASE("from_matrix rejects non-Hermitian input") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianMatrix::from_matrix(m, ScalarField::Complex), ValidationError);
    CHECK_THROWS_AS(HermitianMatrix::from_matrix(Eigen::MatrixXcd::Zero(2, 3), ScalarField::Complex),
                    DimensionError);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2, 2);
    c(0, 1) = cdouble(0, 1);
    c(1, 0) = cdouble(0, -1);
    CHECK_NOTHROW(HermitianMatrix::from_matrix(c, ScalarField::Complex));
    CHECK_THROWS_AS(HermitianMatrix::from_matrix(c, ScalarField::Real), ValidationError);
}

TEST_CASE("numerical rank of the worked examples") {
    const Tolerances tol;
    const RealVectorization v3(3, ScalarField::Complex);
    std::vector<Eigen::VectorXd> cols;
    for (auto x : {cvec({1, 0, 0}), cvec({0, 1, 0}), cvec({0, 0, 1}), cvec({1, 1, 0}), cvec({0, 1, 1})})
        cols.push_back(vectorize(outer_product(x), v3));
    CHECK(numerical_rank(cols, tol) == 5);

    const RealVectorization v2(2, ScalarField::Complex);
    std::vector<Eigen::VectorXd> cols2;
    for (auto x : {cvec({1, 0}), cvec({0, 1}), cvec({1, 1}), cvec({1, -1})})
        cols2.push_back(vectorize(outer_product(x), v2));
    CHECK(numerical_rank(cols2, tol) == 3);

    std::vector<Eigen::VectorXd> dup = cols2;
    dup.insert(dup.end(), cols2.begin(), cols2.end());
    CHECK(numerical_rank(dup, tol) == 3);

    std::vector<Eigen::VectorXd> zeros(3, Eigen::VectorXd::Zero(4));
    CHECK(numerical_rank(zeros, tol) == 0);
}

TEST_CASE("numerical rank ignores column order and column scaling") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> logscale(-3.0, 3.0);
    const Tolerances tol;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index D = 3 + trial % 6;
        const Eigen::Index r = 1 + trial % D;
        const Eigen::Index k = r + trial % 3;
        // k columns spanning an r-dimensional subspace.
        Eigen::MatrixXd basis(D, r), coeff(r, k);
        for (Eigen::Index i = 0; i < basis.size(); ++i) basis.data()[i] = g(rng);
        for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff.data()[i] = g(rng);
        Eigen::MatrixXd M = basis * coeff;
        const std::size_t rank = numerical_rank(M, tol);
        CHECK(rank == fstest::lu_rank(M));

        std::vector<Eigen::Index> perm(static_cast<std::size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::MatrixXd P(D, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            const double s = std::pow(10.0, logscale(rng)) * (g(rng) < 0 ? -1 : 1);
            P.col(j) = s * M.col(perm[static_cast<std::size_t>(j)]);
        }
        CHECK(numerical_rank(P, tol) == rank);
    }
}

TEST_CASE("least squares") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    Eigen::VectorXd b(4);
    for (auto& x : b) x = g(rng);
    const auto id = least_squares(Eigen::MatrixXd::Identity(4, 4), b);
    CHECK((id.x - b).norm() < 1e-15);
    CHECK(id.residual < 1e-15);

    // Orthonormal basis of C^3 against vec(I_3).
    const RealVectorization v(3, ScalarField::Complex);
    Eigen::MatrixXd M(9, 3);
    for (std::size_t i = 0; i < 3; ++i)
        M.col(static_cast<Eigen::Index>(i)) = vectorize(outer_product(fstest::basis(3, i)), v);
    const auto onb = least_squares(M, vectorize(HermitianMatrix::identity(3), v));
    CHECK((onb.x - Eigen::Vector3d::Ones()).norm() < 1e-14);
    CHECK(onb.residual < 1e-14);

    const auto bad = least_squares(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
    CHECK(bad.x(0) == doctest::Approx(0.0));
    CHECK(bad.residual == doctest::Approx(1.0));

    CHECK_THROWS_AS(least_squares(Eigen::MatrixXd::Identity(3, 3), b), DimensionError);
}

TEST_CASE("nonnegative least squares agrees with active-set enumeration") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index m = 3 + trial % 5;
        const Eigen::Index n = 2 + trial % 5;
        Eigen::MatrixXd M(m, n);
        Eigen::VectorXd b(m);
        for (auto& x : M.reshaped()) x = g(rng);
        for (auto& x : b) x = g(rng);

        // Oracle: the optimum is the unconstrained solution on some support
        // that happens to be nonnegative; try them all.
        double best = b.norm();
        for (unsigned mask = 1; mask < (1U << n); ++mask) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index j = 0; j < n; ++j)
                if ((mask >> j) & 1U) idx.push_back(j);
            Eigen::MatrixXd sub(m, static_cast<Eigen::Index>(idx.size()));
            for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = M.col(idx[k]);
            const Eigen::VectorXd x = sub.colPivHouseholderQr().solve(b);
            if (x.minCoeff() >= 0) best = std::min(best, (sub * x - b).norm());
        }
        const auto res = nonnegative_least_squares(M, b);
        CHECK(res.x.minCoeff() >= 0.0);
        CHECK(res.residual == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("null direction spans the kernel") {
    Eigen::MatrixXd M(2, 3);
    M << 1, 0, 1,
         0, 1, 1;
    const Eigen::VectorXd z = null_direction(M);
    CHECK((M * z).norm() < 1e-14);
    CHECK(z.norm() == doctest::Approx(1.0));
}
