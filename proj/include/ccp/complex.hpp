#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ccp/instance.hpp"
#include "ccp/lp.hpp"

namespace ccp {

// Index sets below are 0-based and sorted. Colors are 0..d−1, columns 0..d²−1.
using IndexSet = std::vector<std::size_t>;

struct CubeFace {
    IndexSet I0;
    IndexSet I1;
};
// Throws ErrorKind::precondition when I₀ ∩ I₁ ≠ ∅ or I₁ = ∅.
void check_cube_face(const CubeFace& g, std::size_t d);

struct ChainEntry {
    IndexSet S;
    IndexSet I0;
    IndexSet I1;
    friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
    friend auto operator<=>(const ChainEntry&, const ChainEntry&) = default;
};

struct SimplexEncoding {
    std::vector<ChainEntry> entries;  // Q₀ … Q_{k−1}
    std::size_t k() const { return entries.size(); }
    friend bool operator==(const SimplexEncoding&, const SimplexEncoding&) = default;
    friend auto operator<=>(const SimplexEncoding&, const SimplexEncoding&) = default;
};

std::string digest(const SimplexEncoding& T);

Vector project_to_M(const Vector& mu);
Vector project_to_Delta(const Vector& mu);

// (c_μ)_j = 1 + (1 − μ_i)·d·N² + ε^(j+1), i the color of column j.
Vector cost_vector(const DerivedConstants& K, std::size_t d, const Vector& mu);

// Smallest color attaining the largest count in S.
std::size_t label_of_support(std::size_t d, const IndexSet& S);

// value(μ) = coef·μ + constant
struct AffineForm {
    Vector coef;
    Rational constant;
    Rational eval(const Vector& mu) const { return dot(coef, mu) + constant; }
};

// The parameterized program over a subset of columns. Costs are held scaled by
// ε^(−E), E the largest exponent present, so all ε-terms are integers.
class ParametricLp {
public:
    ParametricLp(std::size_t d, PointSet columns, std::vector<std::size_t> color, std::vector<std::size_t> exponent,
                 Vector b, DerivedConstants K);
    explicit ParametricLp(const GroundInstance& g);

    struct Face {
        Basis basis;
        IndexSet support;
    };
    // μ ∈ M. Asserts color exclusion for every zero coordinate of μ.
    Face optimal_face_at(const Vector& mu) const;

    // Scaled reduced costs r̄_j(μ) for every column, as affine forms in μ.
    const std::vector<AffineForm>& reduced_cost_forms(const Basis& B) const;

    bool is_feasible_basis(const IndexSet& B) const;

    std::size_t dim() const { return d_; }
    std::size_t columns() const { return cols_.size(); }
    std::size_t color_of(std::size_t j) const { return color_[j]; }
    const Matrix& matrix() const { return A_; }
    const Vector& b() const { return b_; }
    const DerivedConstants& constants() const { return K_; }
    const Vector& base_cost() const { return alpha_; }
    const Rational& weight() const { return beta_; }

private:
    StandardFormLP lp_at(const Vector& mu) const;

    std::size_t d_;
    PointSet cols_;
    std::vector<std::size_t> color_;
    std::vector<std::size_t> exponent_;
    Vector b_;
    DerivedConstants K_;
    Matrix A_;
    Vector alpha_;   // scaled 1 + dN² + ε^j
    Rational beta_;  // scaled dN²
    mutable std::mutex mu_;
    mutable std::optional<Basis> warm_;
    mutable std::map<IndexSet, std::vector<AffineForm>> forms_;
};

// The parameter-space machinery for one ground instance.
class SpernerComplex {
public:
    explicit SpernerComplex(const GroundInstance& g);
    SpernerComplex(const GroundInstance& g, unsigned c_exponent);

    const GroundInstance& ground() const { return g_; }
    const ParametricLp& lp() const { return lp_; }
    std::size_t dim() const { return g_.dim; }

    struct Constraint {
        enum Kind { reduced_cost, mu_zero, mu_one } kind;
        std::size_t index;
        AffineForm form;  // f = 0 or f ≥ 0
    };
    struct System {
        std::vector<Constraint> eq;
        std::vector<Constraint> ge;
    };
    // L^Φ_{B,f} ∩ g(I₀,I₁) for the entry.
    System region_system(const IndexSet& B, const ChainEntry& q) const;

    std::optional<Vector> parameter_region_feasible(const IndexSet& B, const IndexSet& S, const CubeFace& face) const;

    bool structurally_valid(const SimplexEncoding& T) const;
    bool verify_tuple(const SimplexEncoding& T) const;

    // The unique point of q₀, or none when its system is singular or infeasible.
    std::optional<Vector> chain_vertex(const SimplexEncoding& T) const;
    // v₀ and the far endpoints of the edges obtained by relaxing the tight constraint e_i of L₀ (points of M).
    std::vector<Vector> relaxed_edge_endpoints(const SimplexEncoding& T) const;
    // y_i = average of v₀…v_i: interior to q_i with aff(y₀…y_i) = aff(q_i); projected to Δ.
    std::vector<Vector> relint_witnesses(const SimplexEncoding& T) const;
    std::vector<Vector> relint_witnesses_in_M(const SimplexEncoding& T) const;

    std::vector<std::size_t> labels(const SimplexEncoding& T) const;

    struct Stats {
        std::size_t verify_calls = 0;
        std::size_t region_lps = 0;
        std::size_t max_bits = 0;
    };
    Stats stats() const;

private:
    GroundInstance g_;
    ParametricLp lp_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::optional<Vector>> region_cache_;
    mutable Stats stats_;
};

}  // namespace ccp
