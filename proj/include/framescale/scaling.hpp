#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "framescale/frame.hpp"
#include "framescale/hermitian.hpp"

namespace framescale {

/// The linear map w -> sum_i w_i phi_i phi_i^* written as a real D x n matrix
/// in the vectorized coordinates, together with vec(I_d).
struct ScalingMatrix {
    std::size_t d = 0;
    ScalarField field = ScalarField::Complex;
    Eigen::MatrixXd columns;  ///< D x n, column i = vec(phi_i phi_i^*)
    Eigen::VectorXd target;   ///< vec(I_d)

    std::size_t real_dim() const { return static_cast<std::size_t>(columns.rows()); }
    std::size_t size() const { return static_cast<std::size_t>(columns.cols()); }
};

enum class ScalingKind {
    ExactScaling,   ///< sum_i w_i phi_i phi_i^* = I_d, in the frame's own coordinates
    PolytopePoint,  ///< sum_i w_i phi_i phi_i^* = I_d / d on the normalized frame
};

struct ScalingVector {
    Eigen::VectorXd weights;
    ScalingKind kind = ScalingKind::ExactScaling;

    /// Indices with weight above `threshold`, ascending.
    std::vector<std::size_t> support(double threshold) const;
};

/// Vertices of {w >= 0 : sum_i w_i psi_i psi_i^* = I_d / d}, where psi_i are
/// the normalized frame vectors. Vertices are sorted by support.
struct ScalingPolytope {
    std::size_t d = 0;
    std::size_t n = 0;
    std::vector<ScalingVector> vertices;            ///< PolytopePoints
    std::vector<std::vector<std::size_t>> supports;  ///< support of each vertex
    std::vector<double> norms;                      ///< norms of the original frame vectors

    bool feasible() const { return !vertices.empty(); }

    /// Vertex k as an ExactScaling of the original (unnormalized) frame:
    /// d * v_i / norms_i^2.
    ScalingVector scaling(std::size_t k) const;
    std::vector<ScalingVector> scalings() const;
};

enum class ScalingStatus { NotScalable, UniqueScaling, PolytopeOfScalings };

std::string_view to_string(ScalingStatus status);

struct ScalingDiagnostics {
    bool outer_products_independent = false;
    bool spans = false;
    /// Least-squares residual of A w = vec(I_d) (unique path) or verification
    /// residual of the reported witness (polytope path). NaN if not computed.
    double residual = 0.0;
    double min_weight = 0.0;
};

struct ScalingOutcome {
    ScalingStatus status = ScalingStatus::NotScalable;
    std::optional<ScalingVector> scaling;
    std::optional<ScalingPolytope> polytope;
    ScalingDiagnostics diagnostics;
};

struct ScalabilityResult {
    bool scalable = false;
    std::optional<ScalingVector> witness;
};

struct VerifyResult {
    double residual = 0.0;  ///< ||sum_i w_i phi_i phi_i^* - I_d||_F
    bool ok = false;
};

struct DecompositionTerm {
    std::size_t vertex = 0;
    double coefficient = 0.0;
};

ScalingMatrix build_scaling_matrix(const Frame& f);

/// Solves A w = I_d for a frame with independent outer products. Throws
/// RoutingError when the outer products are dependent.
ScalingOutcome solve_unique_scaling(const Frame& f, const Tolerances& tol = {});

/// All minimal scalings, as the vertices of the scaling polytope of the
/// normalized frame. Supports are searched in increasing size; dependent
/// supports and supersets of accepted supports are skipped.
ScalingPolytope enumerate_minimal_scalings(const Frame& f, const Tolerances& tol = {},
                                           const SearchGuard& guard = {});

/// Routes to solve_unique_scaling or enumerate_minimal_scalings and reports
/// which path answered.
ScalingOutcome analyze_scaling(const Frame& f, const Tolerances& tol = {},
                               const SearchGuard& guard = {});

ScalabilityResult is_scalable(const Frame& f, const Tolerances& tol = {},
                              const SearchGuard& guard = {});

VerifyResult verify_scaling(const Frame& f, const Eigen::VectorXd& w, const Tolerances& tol = {});

/// True iff no proper subset of supp(w) indexes a scalable subframe. Throws
/// ValidationError if w does not verify as a scaling of f.
bool is_minimal_scaling(const Frame& f, const ScalingVector& w, const Tolerances& tol = {},
                        const SearchGuard& guard = {});

/// Carathéodory reduction: moves w along null directions of its supported
/// outer products until they are independent. The result is a scaling of f
/// whose support is contained in supp(w).
ScalingVector caratheodory_reduce(const Frame& f, const ScalingVector& w,
                                  const Tolerances& tol = {});

/// Writes w / d (in normalized coordinates) as a convex combination of the
/// vertices of P using at most dim(P) + 1 of them.
std::vector<DecompositionTerm> decompose_scaling(const Frame& f, const ScalingVector& w,
                                                 const ScalingPolytope& P,
                                                 const Tolerances& tol = {});

/// Weights of the original frame <-> weights of its normalization.
Eigen::VectorXd to_normalized_weights(const Eigen::VectorXd& w, const std::vector<double>& norms);
Eigen::VectorXd from_normalized_weights(const Eigen::VectorXd& w, const std::vector<double>& norms);

}  // namespace framescale
