#include "framescale/frame.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "framescale/errors.hpp"
#include "framescale/linalg.hpp"
#include "framescale/subsets.hpp"

namespace framescale {

namespace {

using Index = Eigen::Index;

constexpr double kZeroNorm = 1e-12;

// Rank of the frame vectors picked by `indices`; real frames use a real SVD.
std::size_t vector_rank(const Frame& f, std::span<const std::size_t> indices,
                        const Tolerances& tol) {
    const Eigen::MatrixXcd m = f.synthesis_matrix(indices);
    if (f.field() == ScalarField::Real) return numerical_rank(Eigen::MatrixXd(m.real()), tol);
    return numerical_rank(m, tol);
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, std::span<const std::size_t> indices) {
    Eigen::MatrixXd out(m.rows(), static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k)
        out.col(static_cast<Index>(k)) = m.col(static_cast<Index>(indices[k]));
    return out;
}

// Smallest k such that some k-subset is dependent; n + 1 if none. `ambient`
// is the dimension of the space the columns live in, so any subset larger
// than it is dependent.
template <class SubsetRank>
std::size_t smallest_dependent_subset(std::size_t n, std::size_t ambient, SubsetRank&& rank_of) {
    const std::size_t top = std::min(n, ambient);
    for (std::size_t k = 1; k <= top; ++k) {
        const bool found = for_each_combination(n, k, [&](std::span<const std::size_t> idx) {
            return rank_of(idx) < k;
        });
        if (found) return k;
    }
    return n > ambient ? ambient + 1 : n + 1;
}

}  // namespace

Frame::Frame(ScalarField field, std::size_t d, std::vector<Eigen::VectorXcd> vectors,
             std::vector<std::string> labels)
    : field_(field), d_(d), vectors_(std::move(vectors)), labels_(std::move(labels)) {
    if (d_ == 0) throw DimensionError("frame dimension must be positive");
    if (vectors_.empty()) throw DimensionError("frame must contain at least one vector");
    if (!labels_.empty() && labels_.size() != vectors_.size()) {
        throw ValidationError("frame has " + std::to_string(vectors_.size()) + " vectors but " +
                              std::to_string(labels_.size()) + " labels");
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        auto& v = vectors_[i];
        if (static_cast<std::size_t>(v.size()) != d_) {
            throw DimensionError("vector " + std::to_string(i) + " has length " +
                                 std::to_string(v.size()) + ", expected " + std::to_string(d_));
        }
        if (field_ == ScalarField::Real && v.imag().cwiseAbs().maxCoeff() != 0.0) {
            throw ValidationError("vector " + std::to_string(i) +
                                  " has a nonzero imaginary part in a real frame");
        }
        if (!(v.norm() > kZeroNorm)) {
            throw ValidationError("vector " + std::to_string(i) + " is zero");
        }
    }
}

Frame Frame::real(std::size_t d, const std::vector<Eigen::VectorXd>& vectors,
                  std::vector<std::string> labels) {
    std::vector<Eigen::VectorXcd> cv;
    cv.reserve(vectors.size());
    for (const auto& v : vectors) cv.emplace_back(v.cast<cdouble>());
    return Frame(ScalarField::Real, d, std::move(cv), std::move(labels));
}

Frame Frame::complex(std::size_t d, std::vector<Eigen::VectorXcd> vectors,
                     std::vector<std::string> labels) {
    return Frame(ScalarField::Complex, d, std::move(vectors), std::move(labels));
}

Eigen::MatrixXcd Frame::synthesis_matrix() const {
    Eigen::MatrixXcd m(static_cast<Index>(d_), static_cast<Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) m.col(static_cast<Index>(i)) = vectors_[i];
    return m;
}

Eigen::MatrixXcd Frame::synthesis_matrix(std::span<const std::size_t> indices) const {
    Eigen::MatrixXcd m(static_cast<Index>(d_), static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k)
        m.col(static_cast<Index>(k)) = vectors_.at(indices[k]);
    return m;
}

Frame Frame::subframe(std::span<const std::size_t> indices) const {
    std::vector<Eigen::VectorXcd> vs;
    std::vector<std::string> ls;
    for (std::size_t i : indices) {
        vs.push_back(vectors_.at(i));
        if (!labels_.empty()) ls.push_back(labels_[i]);
    }
    return Frame(field_, d_, std::move(vs), std::move(ls));
}

HermitianMatrix Frame::outer_product(std::size_t i) const {
    const auto& v = vectors_.at(i);
    if (field_ == ScalarField::Real) return framescale::outer_product(Eigen::VectorXd(v.real()));
    return framescale::outer_product(v);
}

void SearchGuard::check(std::size_t n, const char* what) const {
    if (n > max_n && !force) {
        throw ExponentialGuardError(std::string(what) + ": n = " + std::to_string(n) +
                                    " exceeds the exhaustive-search limit of " +
                                    std::to_string(max_n) + " (use force to override)");
    }
    if (n > 63) {
        throw ExponentialGuardError(std::string(what) + ": n = " + std::to_string(n) +
                                    " is beyond the supported maximum of 63");
    }
}

HermitianMatrix frame_operator(const Frame& f) {
    HermitianMatrix S(f.dim(), f.field());
    for (std::size_t i = 0; i < f.size(); ++i) S += f.outer_product(i);
    return S;
}

bool spans(const Frame& f, const Tolerances& tol) {
    std::vector<std::size_t> all(f.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return vector_rank(f, all, tol) == f.dim();
}

TightnessInfo tightness(const Frame& f, const Tolerances& tol) {
    const HermitianMatrix S = frame_operator(f);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(S.entries(), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = eig.eigenvalues();

    TightnessInfo info;
    info.is_frame = spans(f, tol);
    info.upper_bound = ev.maxCoeff();
    info.lower_bound = info.is_frame ? std::max(0.0, ev.minCoeff()) : 0.0;
    if (info.is_frame && !(info.lower_bound > 0.0)) info.is_frame = false;
    const double A = info.lower_bound;
    const double B = info.upper_bound;
    info.is_tight = info.is_frame && std::abs(A - B) <= tol.residual_abs * std::max(1.0, B);
    info.is_parseval = info.is_tight && std::abs(A - 1.0) <= tol.residual_abs;
    return info;
}

Eigen::MatrixXd outer_product_columns(const Frame& f) {
    const RealVectorization vec(f.dim(), f.field());
    Eigen::MatrixXd m(static_cast<Index>(vec.real_dim()), static_cast<Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        m.col(static_cast<Index>(i)) = vectorize(f.outer_product(i), vec);
    return m;
}

bool outer_products_independent(const Frame& f, const Tolerances& tol) {
    if (f.size() > f.matrix_space_dim()) return false;
    return numerical_rank(outer_product_columns(f), tol) == f.size();
}

std::size_t spark(const Frame& f, const Tolerances& tol, const SearchGuard& guard) {
    guard.check(f.size(), "spark");
    return smallest_dependent_subset(f.size(), f.dim(), [&](std::span<const std::size_t> idx) {
        return vector_rank(f, idx, tol);
    });
}

bool is_full_spark(const Frame& f, const Tolerances& tol, const SearchGuard& guard) {
    guard.check(f.size(), "is_full_spark");
    if (f.size() < f.dim()) return false;
    const bool deficient = for_each_combination(
        f.size(), f.dim(),
        [&](std::span<const std::size_t> idx) { return vector_rank(f, idx, tol) < f.dim(); });
    return !deficient;
}

std::size_t outer_spark(const Frame& f, const Tolerances& tol, const SearchGuard& guard) {
    guard.check(f.size(), "outer_spark");
    const Eigen::MatrixXd cols = outer_product_columns(f);
    return smallest_dependent_subset(
        f.size(), f.matrix_space_dim(), [&](std::span<const std::size_t> idx) {
            return numerical_rank(select_columns(cols, idx), tol);
        });
}

bool complement_property(const Frame& f, const Tolerances& tol, const SearchGuard& guard) {
    const std::size_t n = f.size();
    const std::size_t d = f.dim();
    guard.check(n, "complement_property");

    std::vector<std::size_t> in, out;
    in.reserve(n);
    out.reserve(n);
    // I ranges over subsets of {0, ..., n-2}; index n-1 always sits in the
    // complement, so each pair {I, I^c} is visited once.
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        in.clear();
        out.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 1 < n && ((mask >> i) & 1U)) {
                in.push_back(i);
            } else {
                out.push_back(i);
            }
        }
        if (in.size() >= d && vector_rank(f, in, tol) == d) continue;
        if (out.size() >= d && vector_rank(f, out, tol) == d) continue;
        return false;
    }
    return true;
}

Frame random_frame(std::size_t d, std::size_t n, ScalarField field, std::uint64_t seed,
                   bool unit_norm) {
    if (d == 0 || n == 0) throw DimensionError("random_frame: d and n must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXcd> vs;
    vs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXcd v(static_cast<Index>(d));
        for (Index k = 0; k < v.size(); ++k) {
            const double re = gauss(rng);
            const double im = field == ScalarField::Complex ? gauss(rng) : 0.0;
            v(k) = cdouble(re, im);
        }
        if (unit_norm) v /= v.norm();
        vs.push_back(std::move(v));
    }
    return Frame(field, d, std::move(vs));
}

NormalizedFrame normalize_frame(const Frame& f) {
    std::vector<Eigen::VectorXcd> vs;
    std::vector<double> norms;
    vs.reserve(f.size());
    norms.reserve(f.size());
    for (const auto& v : f.vectors()) {
        const double nv = v.norm();
        norms.push_back(nv);
        vs.push_back(nv == 1.0 ? v : Eigen::VectorXcd(v / nv));
    }
    return {Frame(f.field(), f.dim(), std::move(vs), f.labels()), std::move(norms)};
}

}  // namespace framescale
