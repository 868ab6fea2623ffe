#include "framescale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "framescale/errors.hpp"
#include "framescale/linalg.hpp"
#include "framescale/subsets.hpp"

namespace framescale {

namespace {

using Index = Eigen::Index;

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, std::span<const std::size_t> indices) {
    Eigen::MatrixXd out(m.rows(), static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k)
        out.col(static_cast<Index>(k)) = m.col(static_cast<Index>(indices[k]));
    return out;
}

std::vector<std::size_t> positive_support(const Eigen::VectorXd& x) {
    std::vector<std::size_t> s;
    for (Index i = 0; i < x.size(); ++i)
        if (x(i) > 0.0) s.push_back(static_cast<std::size_t>(i));
    return s;
}

void require_scaling(const Frame& f, const ScalingVector& w, const Tolerances& tol,
                     const char* what) {
    if (w.kind != ScalingKind::ExactScaling) {
        throw ValidationError(std::string(what) + ": expected an exact scaling, got a polytope point");
    }
    const VerifyResult v = verify_scaling(f, w.weights, tol);
    if (!v.ok) {
        throw ValidationError(std::string(what) + ": weights are not a scaling (residual " +
                              std::to_string(v.residual) + ")");
    }
}

struct PivotStep {
    double step = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> blocking;  // positions (into the support) that reach zero
};

PivotStep ratio_test(const Eigen::VectorXd& x, const Eigen::VectorXd& dir) {
    PivotStep out;
    const double floor = 1e-13 * dir.cwiseAbs().maxCoeff();
    for (Index i = 0; i < dir.size(); ++i) {
        if (dir(i) > floor) out.step = std::min(out.step, x(i) / dir(i));
    }
    if (!std::isfinite(out.step)) return out;
    for (Index i = 0; i < dir.size(); ++i) {
        if (dir(i) > floor && x(i) / dir(i) <= out.step * (1.0 + 1e-9) + 1e-300)
            out.blocking.push_back(static_cast<std::size_t>(i));
    }
    return out;
}

// Carathéodory pivoting: while the columns of A on supp(x) are dependent,
// move x along a null direction until some weight reaches zero. A x is
// unchanged (up to rounding) and x stays nonnegative. Of the two directions
// +z and -z, the one that zeroes the smallest index wins.
Eigen::VectorXd reduce_to_independent_support(const Eigen::MatrixXd& A, Eigen::VectorXd x,
                                              const Tolerances& tol) {
    x = x.cwiseMax(0.0);
    while (true) {
        const std::vector<std::size_t> support = positive_support(x);
        if (support.empty()) break;
        const Eigen::MatrixXd sub = select_columns(A, support);
        if (numerical_rank(sub, tol) == support.size()) break;

        const Eigen::VectorXd z = null_direction(sub);
        Eigen::VectorXd xs(static_cast<Index>(support.size()));
        for (std::size_t k = 0; k < support.size(); ++k) xs(static_cast<Index>(k)) = x(static_cast<Index>(support[k]));

        const PivotStep plus = ratio_test(xs, z);
        const PivotStep minus = ratio_test(xs, -z);
        const bool use_plus =
            !plus.blocking.empty() &&
            (minus.blocking.empty() || plus.blocking.front() <= minus.blocking.front());
        const PivotStep& chosen = use_plus ? plus : minus;
        if (chosen.blocking.empty()) break;  // z == 0; cannot happen for a genuine null vector
        const Eigen::VectorXd dir = use_plus ? z : Eigen::VectorXd(-z);

        xs -= chosen.step * dir;
        for (std::size_t k : chosen.blocking) xs(static_cast<Index>(k)) = 0.0;
        xs = xs.cwiseMax(0.0);
        for (std::size_t k = 0; k < support.size(); ++k) x(static_cast<Index>(support[k])) = xs(static_cast<Index>(k));
    }
    return x;
}

// Re-solves A_T y = b on the (independent) support T of x. Keeps the
// re-solved weights when they are nonnegative and fit at least as well.
Eigen::VectorXd polish_on_support(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& x) {
    const std::vector<std::size_t> support = positive_support(x);
    if (support.empty()) return x;
    const LeastSquaresResult ls = least_squares(select_columns(A, support), b);
    if (ls.x.minCoeff() < 0.0 || ls.residual > (A * x - b).norm()) return x;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (std::size_t k = 0; k < support.size(); ++k) out(static_cast<Index>(support[k])) = ls.x(static_cast<Index>(k));
    return out;
}

}  // namespace

std::vector<std::size_t> ScalingVector::support(double threshold) const {
    std::vector<std::size_t> s;
    for (Index i = 0; i < weights.size(); ++i)
        if (weights(i) > threshold) s.push_back(static_cast<std::size_t>(i));
    return s;
}

ScalingVector ScalingPolytope::scaling(std::size_t k) const {
    const ScalingVector& v = vertices.at(k);
    return {from_normalized_weights(static_cast<double>(d) * v.weights, norms),
            ScalingKind::ExactScaling};
}

std::vector<ScalingVector> ScalingPolytope::scalings() const {
    std::vector<ScalingVector> out;
    out.reserve(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k) out.push_back(scaling(k));
    return out;
}

std::string_view to_string(ScalingStatus status) {
    switch (status) {
        case ScalingStatus::NotScalable: return "NotScalable";
        case ScalingStatus::UniqueScaling: return "UniqueScaling";
        case ScalingStatus::PolytopeOfScalings: return "PolytopeOfScalings";
    }
    return "NotScalable";
}

Eigen::VectorXd to_normalized_weights(const Eigen::VectorXd& w, const std::vector<double>& norms) {
    if (static_cast<std::size_t>(w.size()) != norms.size())
        throw DimensionError("weight count does not match frame size");
    Eigen::VectorXd out(w.size());
    for (Index i = 0; i < w.size(); ++i) {
        const double nv = norms[static_cast<std::size_t>(i)];
        out(i) = w(i) * nv * nv;
    }
    return out;
}

Eigen::VectorXd from_normalized_weights(const Eigen::VectorXd& w, const std::vector<double>& norms) {
    if (static_cast<std::size_t>(w.size()) != norms.size())
        throw DimensionError("weight count does not match frame size");
    Eigen::VectorXd out(w.size());
    for (Index i = 0; i < w.size(); ++i) {
        const double nv = norms[static_cast<std::size_t>(i)];
        out(i) = w(i) / (nv * nv);
    }
    return out;
}

ScalingMatrix build_scaling_matrix(const Frame& f) {
    ScalingMatrix m;
    m.d = f.dim();
    m.field = f.field();
    m.columns = outer_product_columns(f);
    m.target = vectorize(HermitianMatrix::identity(f.dim(), f.field()),
                         RealVectorization(f.dim(), f.field()));
    return m;
}

VerifyResult verify_scaling(const Frame& f, const Eigen::VectorXd& w, const Tolerances& tol) {
    if (static_cast<std::size_t>(w.size()) != f.size()) {
        throw DimensionError("verify_scaling: frame has " + std::to_string(f.size()) +
                             " vectors but " + std::to_string(w.size()) + " weights were given");
    }
    HermitianMatrix S(f.dim(), f.field());
    for (std::size_t i = 0; i < f.size(); ++i) S += w(static_cast<Index>(i)) * f.outer_product(i);
    S -= HermitianMatrix::identity(f.dim(), f.field());
    VerifyResult out;
    out.residual = S.frobenius_norm();
    out.ok = out.residual <= tol.residual_abs && (w.size() == 0 || w.minCoeff() >= -tol.nonneg_abs);
    return out;
}

ScalingOutcome solve_unique_scaling(const Frame& f, const Tolerances& tol) {
    if (!outer_products_independent(f, tol)) {
        throw RoutingError("solve_unique_scaling: outer products are linearly dependent; "
                           "use enumerate_minimal_scalings");
    }
    const ScalingMatrix A = build_scaling_matrix(f);
    const LeastSquaresResult ls = least_squares(A.columns, A.target);

    ScalingOutcome out;
    out.diagnostics.outer_products_independent = true;
    out.diagnostics.spans = spans(f, tol);
    out.diagnostics.residual = ls.residual;
    out.diagnostics.min_weight = ls.x.minCoeff();
    if (ls.residual > tol.residual_abs || ls.x.minCoeff() < -tol.nonneg_abs) {
        out.status = ScalingStatus::NotScalable;
        return out;
    }
    out.status = ScalingStatus::UniqueScaling;
    // Weights within the nonnegativity slack of zero are zero.
    out.scaling = ScalingVector{
        ls.x.unaryExpr([&](double v) { return v <= tol.nonneg_abs ? 0.0 : v; }),
        ScalingKind::ExactScaling};
    return out;
}

ScalingPolytope enumerate_minimal_scalings(const Frame& f, const Tolerances& tol,
                                           const SearchGuard& guard) {
    const std::size_t n = f.size();
    const std::size_t d = f.dim();
    guard.check(n, "enumerate_minimal_scalings");
    tol.validate(f.matrix_space_dim());

    NormalizedFrame normalized = normalize_frame(f);
    const ScalingMatrix A = build_scaling_matrix(normalized.unit);
    const Eigen::VectorXd target = A.target / static_cast<double>(d);
    const std::size_t rank = numerical_rank(A.columns, tol);

    struct Candidate {
        std::vector<std::size_t> support;
        Eigen::VectorXd weights;
    };
    std::vector<Candidate> found;
    std::vector<std::uint64_t> accepted;

    // Fewer than d vectors cannot span, so supports start at size d.
    for (std::size_t k = d; k <= rank; ++k) {
        for_each_combination(n, k, [&](std::span<const std::size_t> idx) {
            const std::uint64_t mask = subset_mask(idx);
            for (std::uint64_t a : accepted)
                if ((a & mask) == a) return false;
            const Eigen::MatrixXd sub = select_columns(A.columns, idx);
            if (numerical_rank(sub, tol) < k) return false;
            const LeastSquaresResult ls = least_squares(sub, target);
            if (ls.residual > tol.residual_abs || ls.x.minCoeff() <= tol.nonneg_abs) return false;

            Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Index>(n));
            for (std::size_t j = 0; j < k; ++j) w(static_cast<Index>(idx[j])) = ls.x(static_cast<Index>(j));
            for (const Candidate& c : found)
                if ((c.weights - w).cwiseAbs().maxCoeff() <= tol.dedup_abs) return false;
            found.push_back({std::vector<std::size_t>(idx.begin(), idx.end()), std::move(w)});
            accepted.push_back(mask);
            return false;
        });
    }

    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        if (a.support != b.support) return a.support < b.support;
        return std::lexicographical_compare(a.weights.begin(), a.weights.end(), b.weights.begin(),
                                            b.weights.end());
    });

    ScalingPolytope P;
    P.d = d;
    P.n = n;
    P.norms = std::move(normalized.norms);
    for (Candidate& c : found) {
        P.vertices.push_back({std::move(c.weights), ScalingKind::PolytopePoint});
        P.supports.push_back(std::move(c.support));
    }
    return P;
}

ScalingOutcome analyze_scaling(const Frame& f, const Tolerances& tol, const SearchGuard& guard) {
    tol.validate(f.matrix_space_dim());
    if (outer_products_independent(f, tol)) return solve_unique_scaling(f, tol);

    ScalingOutcome out;
    out.diagnostics.outer_products_independent = false;
    out.diagnostics.spans = spans(f, tol);
    out.polytope = enumerate_minimal_scalings(f, tol, guard);
    if (!out.polytope->feasible()) {
        out.status = ScalingStatus::NotScalable;
        out.diagnostics.residual = std::numeric_limits<double>::quiet_NaN();
        out.diagnostics.min_weight = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.status = ScalingStatus::PolytopeOfScalings;
    out.scaling = out.polytope->scaling(0);
    out.diagnostics.residual = verify_scaling(f, out.scaling->weights, tol).residual;
    out.diagnostics.min_weight = out.scaling->weights.minCoeff();
    return out;
}

ScalabilityResult is_scalable(const Frame& f, const Tolerances& tol, const SearchGuard& guard) {
    ScalingOutcome outcome = analyze_scaling(f, tol, guard);
    return {outcome.status != ScalingStatus::NotScalable, std::move(outcome.scaling)};
}

bool is_minimal_scaling(const Frame& f, const ScalingVector& w, const Tolerances& tol,
                        const SearchGuard& guard) {
    require_scaling(f, w, tol, "is_minimal_scaling");
    const std::vector<std::size_t> support = w.support(tol.nonneg_abs);
    // Scalability is inherited by supersets (pad with zero weights), so it is
    // enough to test the subsets that drop a single index.
    for (std::size_t drop = 0; drop < support.size(); ++drop) {
        std::vector<std::size_t> sub;
        sub.reserve(support.size() - 1);
        for (std::size_t k = 0; k < support.size(); ++k)
            if (k != drop) sub.push_back(support[k]);
        if (sub.size() < f.dim()) continue;
        if (is_scalable(f.subframe(sub), tol, guard).scalable) return false;
    }
    return true;
}

ScalingVector caratheodory_reduce(const Frame& f, const ScalingVector& w, const Tolerances& tol) {
    require_scaling(f, w, tol, "caratheodory_reduce");
    const ScalingMatrix A = build_scaling_matrix(f);
    Eigen::VectorXd x = reduce_to_independent_support(A.columns, w.weights, tol);
    x = polish_on_support(A.columns, A.target, x);
    return {std::move(x), ScalingKind::ExactScaling};
}

std::vector<DecompositionTerm> decompose_scaling(const Frame& f, const ScalingVector& w,
                                                 const ScalingPolytope& P, const Tolerances& tol) {
    require_scaling(f, w, tol, "decompose_scaling");
    if (P.n != f.size() || P.d != f.dim()) {
        throw DimensionError("decompose_scaling: polytope does not belong to this frame");
    }
    if (!P.feasible()) throw DecompositionError("decompose_scaling: polytope has no vertices");

    const Index n = static_cast<Index>(P.n);
    const Index K = static_cast<Index>(P.vertices.size());
    const Eigen::VectorXd point = to_normalized_weights(w.weights, P.norms) / static_cast<double>(P.d);

    // Columns [v_k; 1] so that a nonnegative solution is a convex combination.
    Eigen::MatrixXd A(n + 1, K);
    for (Index k = 0; k < K; ++k) {
        A.col(k).head(n) = P.vertices[static_cast<std::size_t>(k)].weights;
        A(n, k) = 1.0;
    }
    Eigen::VectorXd b(n + 1);
    b.head(n) = point;
    b(n) = 1.0;

    Eigen::VectorXd t = nonnegative_least_squares(A, b).x;
    t = reduce_to_independent_support(A, t, tol);
    t = polish_on_support(A, b, t);

    constexpr double kDecompositionTol = 1e-8;
    const double err = (A.topRows(n) * t - point).cwiseAbs().maxCoeff();
    const double sum_err = std::abs(t.sum() - 1.0);
    if (!(err <= kDecompositionTol) || !(sum_err <= kDecompositionTol)) {
        throw DecompositionError("decompose_scaling: no convex combination within tolerance "
                                 "(error " + std::to_string(err) + ", coefficient sum error " +
                                 std::to_string(sum_err) + ")");
    }
    std::vector<DecompositionTerm> terms;
    for (Index k = 0; k < K; ++k)
        if (t(k) > 0.0) terms.push_back({static_cast<std::size_t>(k), t(k)});
    return terms;
}

}  // namespace framescale
