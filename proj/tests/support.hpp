#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "framescale/frame.hpp"

namespace fstest {

using framescale::cdouble;
using framescale::Frame;
using framescale::ScalarField;

inline Eigen::VectorXcd cvec(std::initializer_list<double> re) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(re.size()));
    Eigen::Index i = 0;
    for (double x : re) v(i++) = x;
    return v;
}

inline Eigen::VectorXcd basis(std::size_t d, std::size_t i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

/// {e1, e2, e3, e1+e2, e2+e3} in C^3.
inline Frame example1() {
    return Frame::complex(3, {cvec({1, 0, 0}), cvec({0, 1, 0}), cvec({0, 0, 1}),
                              cvec({1, 1, 0}), cvec({0, 1, 1})});
}

/// {e1, e2, e1+e2, e1-e2} in C^2.
inline Frame example2() {
    return Frame::complex(2, {cvec({1, 0}), cvec({0, 1}), cvec({1, 1}), cvec({1, -1})});
}

/// example1 plus e1+e3.
inline Frame example3() {
    return Frame::complex(3, {cvec({1, 0, 0}), cvec({0, 1, 0}), cvec({0, 0, 1}),
                              cvec({1, 1, 0}), cvec({0, 1, 1}), cvec({1, 0, 1})});
}

inline Frame orthonormal_basis(std::size_t d, ScalarField field = ScalarField::Complex) {
    std::vector<Eigen::VectorXcd> vs;
    for (std::size_t i = 0; i < d; ++i) vs.push_back(basis(d, i));
    return Frame(field, d, std::move(vs));
}

/// Three unit vectors in R^2 at 0, 120 and 240 degrees.
inline Frame mercedes_benz() {
    std::vector<Eigen::VectorXd> vs;
    for (int k = 0; k < 3; ++k) {
        const double a = 2.0 * M_PI * k / 3.0;
        Eigen::VectorXd v(2);
        v << std::cos(a), std::sin(a);
        vs.push_back(v);
    }
    return Frame::real(2, vs);
}

/// {e1, (e1+e2)/sqrt2} in R^2: a frame that is not scalable.
inline Frame skewed_pair() {
    Eigen::VectorXd a(2), b(2);
    a << 1, 0;
    b << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    return Frame::real(2, {a, b});
}

inline Eigen::VectorXcd gaussian_vector(std::size_t d, ScalarField field, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    for (Eigen::Index k = 0; k < v.size(); ++k)
        v(k) = cdouble(g(rng), field == ScalarField::Complex ? g(rng) : 0.0);
    return v;
}

/// Rows of a random m x d matrix with orthonormal columns: a Parseval frame
/// of m vectors (m >= d). Built by Householder QR of a Gaussian matrix.
inline std::vector<Eigen::VectorXcd> random_parseval(std::size_t d, std::size_t m, ScalarField field,
                                                     std::mt19937_64& rng) {
    Eigen::MatrixXcd G(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (Eigen::Index r = 0; r < G.rows(); ++r) G.row(r) = gaussian_vector(d, field, rng).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(G.rows(), G.cols());
    std::vector<Eigen::VectorXcd> out;
    for (Eigen::Index r = 0; r < Q.rows(); ++r) {
        Eigen::VectorXcd v = Q.row(r).adjoint();
        if (field == ScalarField::Real) v = v.real().cast<cdouble>();
        out.push_back(v);
    }
    return out;
}

/// Union of two Parseval frames (sizes m1, m2) with every vector multiplied
/// by a random positive factor. Scalable: w_i = 1 / (2 c_i^2). Its outer
/// products are dependent because both halves sum to the identity.
struct ScaledUnion {
    Frame frame;
    Eigen::VectorXd known_scaling;
};

inline ScaledUnion scaled_parseval_union(std::size_t d, std::size_t m1, std::size_t m2,
                                         ScalarField field, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> factor(0.5, 2.0);
    auto a = random_parseval(d, m1, field, rng);
    auto b = random_parseval(d, m2, field, rng);
    a.insert(a.end(), b.begin(), b.end());
    Eigen::VectorXd w(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double c = factor(rng);
        a[i] *= c;
        w(static_cast<Eigen::Index>(i)) = 0.5 / (c * c);
    }
    return {Frame(field, d, std::move(a)), w};
}

/// Raw matrix entries (real and imaginary parts, all d^2 positions) of
/// phi phi^*, computed with a dense product. Independent of the library's
/// vectorization basis.
inline Eigen::VectorXd raw_outer_entries(const Eigen::VectorXcd& phi) {
    const Eigen::MatrixXcd P = phi * phi.adjoint();
    Eigen::VectorXd out(2 * P.size());
    for (Eigen::Index k = 0; k < P.size(); ++k) {
        out(2 * k) = P.data()[k].real();
        out(2 * k + 1) = P.data()[k].imag();
    }
    return out;
}

/// Rank by full-pivot LU with an explicit threshold; a different route from
/// the SVD-based rank used by the library.
template <class M>
std::size_t lu_rank(const M& m, double threshold = 1e-9) {
    if (m.size() == 0) return 0;
    Eigen::FullPivLU<M> lu(m);
    lu.setThreshold(threshold);
    return static_cast<std::size_t>(lu.rank());
}

/// Spark by scanning every subset mask, ranks by LU.
inline std::size_t brute_spark(const Frame& f) {
    const std::size_t n = f.size();
    std::size_t best = n + 1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (k >= best) continue;
        Eigen::MatrixXcd m(static_cast<Eigen::Index>(f.dim()), static_cast<Eigen::Index>(k));
        Eigen::Index c = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) m.col(c++) = f[i];
        if (lu_rank(m) < k) best = k;
    }
    return best;
}

/// Outer-product spark over raw entries, every subset mask, LU ranks.
inline std::size_t brute_outer_spark(const Frame& f) {
    const std::size_t n = f.size();
    std::size_t best = n + 1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (k >= best) continue;
        Eigen::MatrixXd m(static_cast<Eigen::Index>(2 * f.dim() * f.dim()), static_cast<Eigen::Index>(k));
        Eigen::Index c = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) m.col(c++) = raw_outer_entries(f[i]);
        if (lu_rank(m) < k) best = k;
    }
    return best;
}

/// Complement property over all 2^n masks.
inline bool brute_complement_property(const Frame& f) {
    const std::size_t n = f.size();
    const auto d = static_cast<std::size_t>(f.dim());
    auto span_rank = [&](std::uint64_t mask) {
        Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), __builtin_popcountll(mask));
        Eigen::Index c = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) m.col(c++) = f[i];
        return lu_rank(m);
    };
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 0; mask <= all; ++mask) {
        if (span_rank(mask) != d && span_rank(all & ~mask) != d) return false;
    }
    return true;
}

/// Frame with entries drawn from {-1, 0, 1} (and +-i for complex), which
/// produces many exact dependencies. Zero vectors are redrawn.
inline Frame small_integer_frame(std::size_t d, std::size_t n, ScalarField field, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(field == ScalarField::Complex ? 0 : 0,
                                            field == ScalarField::Complex ? 4 : 2);
    const cdouble values[] = {0.0, 1.0, -1.0, cdouble(0, 1), cdouble(0, -1)};
    std::vector<Eigen::VectorXcd> vs;
    while (vs.size() < n) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
        for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = values[pick(rng)];
        if (v.norm() > 0) vs.push_back(v);
    }
    return Frame(field, d, std::move(vs));
}

}  // namespace fstest
