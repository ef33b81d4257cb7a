#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ccp/rational.hpp"

namespace ccp {

using PointSet = std::vector<Vector>;

struct CcpInstance {
    std::size_t dim = 0;
    std::vector<PointSet> colors;
    Vector b;
};

// 0-based reference to colors[color][index].
struct PointRef {
    std::size_t color = 0;
    std::size_t index = 0;
    friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

// Selected points plus nonnegative coefficients with Σ α_k·p_k = b.
struct ColorfulChoice {
    std::vector<PointRef> points;
    Vector coefficients;
};

struct DerivedConstants {
    Integer m;                  // largest absolute coordinate
    Integer N;                  // d!·m^d
    unsigned c_exponent = 12;
    Rational eps;               // N^(−c·d)
};

struct GroundInstance {
    std::size_t dim = 0;
    std::vector<PointSet> colors;  // d colors of exactly d integer points
    Vector b;
    DerivedConstants constants;

    std::size_t columns() const { return dim * dim; }
    // Color i occupies columns i·d … i·d+d−1.
    Matrix matrix() const;
    CcpInstance as_instance() const { return {dim, colors, b}; }
};

struct PerturbationMap {
    bool identity = true;
    std::vector<std::vector<PointRef>> origin;  // ground (color, index) → original point
    std::vector<std::vector<Integer>> point_scale;
    Integer b_scale = 1;                        // b ↦ b_scale·b (rational b is first cleared by its lcm)
    Rational eps0 = 0;
    Integer clearing = 1;                       // ε₀^(−d²)
};

struct ValidationReport {
    bool ok = true;
    std::optional<std::size_t> failing_color;  // 0-based
    bool b_zero = false;
    std::string message;
};

// Structural problems throw ErrorKind::dimension.
ValidationReport validate(const CcpInstance& inst);
void check_structure(const CcpInstance& inst);

struct RescaleResult {
    CcpInstance scaled;
    std::vector<std::vector<Integer>> point_scale;
    Integer b_scale = 1;  // overall positive rational factor applied to b is b_scale / lcm(b)
    Integer b_lcm = 1;
};
RescaleResult rescale_to_integers(const CcpInstance& inst);

PointSet sphere_replace(const Vector& p, const Rational& eps);
Vector perturb_b(const Vector& b, const Rational& eps);
// Indices of a d-subset of C whose cone contains b.
std::vector<std::size_t> caratheodory_reduce(const PointSet& C, const Vector& b);

Integer max_abs_coordinate(const std::vector<PointSet>& colors, const Vector& b);
Integer factorial(std::size_t n);
DerivedConstants derive_constants(std::size_t d, const Integer& m, unsigned c_exponent = 12);
DerivedConstants derive_constants(const GroundInstance& ground, unsigned c_exponent = 12);

// (P1): integer coordinates, |C_i| = d, each color ray-embraces b.
bool satisfies_P1(const CcpInstance& inst);
// (P2): first (d−1)-subset of the union whose span contains b, or none.
std::optional<std::vector<PointRef>> verify_P2(const CcpInstance& inst);
std::optional<std::vector<PointRef>> verify_P2_serial(const CcpInstance& inst);

struct PerturbOptions {
    bool force = false;  // run the pipeline even when the fast path applies
    unsigned c_exponent = 12;
    std::size_t audit_colors = 0;  // P2 audit of the output over the first n colors only; 0 means all
};

struct PerturbResult {
    GroundInstance ground;
    PerturbationMap map;
    bool fast_path = false;
};
PerturbResult perturb_to_general_position(const CcpInstance& inst, const PerturbOptions& opt = {});

ColorfulChoice map_solution_back(const ColorfulChoice& ground_choice, const PerturbationMap& map,
                                 const CcpInstance& original);

// d+1 colors in Q^d, each containing the origin in its convex hull → cone instance in Q^(d+1), b = e_(d+1).
CcpInstance lift_convex_to_cone(const std::vector<PointSet>& colors);

// Σ α·p = b exactly with α ≥ 0.
bool certifies(const CcpInstance& inst, const ColorfulChoice& choice);
// One point per color, every color present.
bool is_colorful(const CcpInstance& inst, const ColorfulChoice& choice);
// Recompute coefficients for the given points; none if they do not embrace b.
std::optional<ColorfulChoice> certify_points(const CcpInstance& inst, std::vector<PointRef> points);

}  // namespace ccp
