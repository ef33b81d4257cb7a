#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccp/rational.hpp"

namespace ccp {

// min cᵀx  s.t.  Ax = b, x ≥ 0
struct StandardFormLP {
    Matrix A;
    Vector b;
    Vector c;
};

struct Basis {
    std::vector<std::size_t> columns;  // strictly increasing, 0-based
    friend bool operator==(const Basis&, const Basis&) = default;
};

struct BasicSolution {
    Basis basis;
    Vector x;
    bool feasible = false;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    BasicSolution solution;
    Vector reduced_costs;  // extended form, valid when optimal
    Vector ray;            // improving direction when unbounded
    std::size_t pivots = 0;
};

// Phase 1. Rank-deficient A is handled by dropping redundant rows.
std::optional<BasicSolution> find_feasible_basis(const StandardFormLP& lp);

// Extended reduced costs: 0 on B, c_j − (A_B⁻¹A_j)ᵀc_B elsewhere.
Vector reduced_costs(const StandardFormLP& lp, const Basis& B);

// Bland's rule. `warm` must be a feasible basis when given; otherwise phase 1 runs first.
LpOutcome solve_lp(const StandardFormLP& lp, const Basis* warm = nullptr);

// Throws ErrorKind::infeasible / ErrorKind::unbounded.
BasicSolution optimize(const StandardFormLP& lp, const Basis* warm = nullptr);

Rational objective_value(const StandardFormLP& lp, const Vector& x);

// optB ∪ { j : r̄_j = 0 }; throws if optB is not optimal.
std::vector<std::size_t> maximal_optimal_face(const StandardFormLP& lp, const Basis& optB);

// Nonnegative α with Σ α_p·p = b, or none.
std::optional<Vector> ray_embrace(const std::vector<Vector>& C, const Vector& b);

enum class Sense { eq, ge, le };

// a·μ (sense) beta
struct AffineConstraint {
    Vector a;
    Rational beta;
    Sense sense = Sense::eq;
};

// Exact point of { μ ∈ Q^dim : all constraints } or none; μ is free.
std::optional<Vector> affine_feasible(std::size_t dim, const std::vector<AffineConstraint>& cons);
bool satisfies(const AffineConstraint& con, const Vector& mu);

}  // namespace ccp
