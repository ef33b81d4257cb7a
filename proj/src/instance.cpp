#include "ccp/instance.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>

#include "ccp/lp.hpp"
#include "ccp/parallel.hpp"

namespace ccp {

namespace {

Integer pow_int(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer ceil_div(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::vector<std::pair<PointRef, const Vector*>> flatten(const CcpInstance& inst)
{
    std::vector<std::pair<PointRef, const Vector*>> out;
    for (std::size_t i = 0; i < inst.colors.size(); ++i)
        for (std::size_t j = 0; j < inst.colors[i].size(); ++j) out.push_back({{i, j}, &inst.colors[i][j]});
    return out;
}

bool p2_violated(const std::vector<std::pair<PointRef, const Vector*>>& pts, const std::vector<std::size_t>& subset,
                 const Vector& b)
{
    std::vector<Vector> sel;
    sel.reserve(subset.size());
    for (auto k : subset) sel.push_back(*pts[k].second);
    return in_linear_span(sel, b);
}

}  // namespace

Matrix GroundInstance::matrix() const
{
    std::vector<Vector> cols;
    for (const auto& c : colors)
        for (const auto& p : c) cols.push_back(p);
    return Matrix::from_columns(cols, dim);
}

void check_structure(const CcpInstance& inst)
{
    require(inst.dim >= 1, ErrorKind::dimension, "instance dimension must be positive");
    require(inst.b.size() == inst.dim, ErrorKind::dimension, "b has wrong dimension");
    require(inst.colors.size() == inst.dim, ErrorKind::dimension, "instance needs exactly dim colors");
    for (std::size_t i = 0; i < inst.colors.size(); ++i) {
        require(!inst.colors[i].empty(), ErrorKind::dimension, "color " + std::to_string(i + 1) + " is empty");
        for (const auto& p : inst.colors[i])
            require(p.size() == inst.dim, ErrorKind::dimension, "color " + std::to_string(i + 1) + " has a point of wrong dimension");
    }
}

ValidationReport validate(const CcpInstance& inst)
{
    check_structure(inst);
    ValidationReport rep;
    if (std::all_of(inst.b.begin(), inst.b.end(), [](const Rational& x) { return x == 0; })) {
        rep.ok = false;
        rep.b_zero = true;
        rep.message = "b is zero";
        return rep;
    }
    for (std::size_t i = 0; i < inst.colors.size(); ++i) {
        if (!ray_embrace(inst.colors[i], inst.b)) {
            rep.ok = false;
            rep.failing_color = i;
            rep.message = "color " + std::to_string(i + 1) + " does not ray-embrace b";
            return rep;
        }
    }
    return rep;
}

RescaleResult rescale_to_integers(const CcpInstance& inst)
{
    check_structure(inst);
    RescaleResult out;
    out.scaled.dim = inst.dim;
    out.scaled.colors.resize(inst.colors.size());
    out.point_scale.resize(inst.colors.size());
    Rational max_norm = 0;
    for (std::size_t i = 0; i < inst.colors.size(); ++i) {
        for (const auto& p : inst.colors[i]) {
            Integer l = lcm_of_denominators(p);
            Vector z = Rational(l) * p;
            max_norm = std::max(max_norm, norm1(z));
            out.scaled.colors[i].push_back(std::move(z));
            out.point_scale[i].push_back(l);
        }
    }
    out.b_lcm = lcm_of_denominators(inst.b);
    Vector zb = Rational(out.b_lcm) * inst.b;
    Rational nb = norm1(zb);
    out.b_scale = 1;
    if (nb > 0 && nb < max_norm) out.b_scale = ceil_div(max_norm / nb);
    out.scaled.b = Rational(out.b_scale) * zb;
    return out;
}

PointSet sphere_replace(const Vector& p, const Rational& eps)
{
    require(eps > 0, ErrorKind::precondition, "sphere_replace: radius must be positive");
    PointSet out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Vector plus = p, minus = p;
        plus[i] += eps;
        minus[i] -= eps;
        out.push_back(std::move(plus));
        out.push_back(std::move(minus));
    }
    return out;
}

Vector perturb_b(const Vector& b, const Rational& eps)
{
    const std::size_t d = b.size();
    Vector out = b;
    Rational epsd = 1;
    for (std::size_t k = 0; k < d; ++k) epsd *= eps;  // ε^d
    Rational term = epsd;
    for (std::size_t i = 0; i < d; ++i) {
        out[i] += term;  // ε^((i+1)d)
        term *= epsd;
    }
    return out;
}

std::vector<std::size_t> caratheodory_reduce(const PointSet& C, const Vector& b)
{
    if (C.empty()) fail(ErrorKind::precondition, "caratheodory_reduce: empty set");
    StandardFormLP lp{Matrix::from_columns(C, b.size()), b, {}};
    auto s = find_feasible_basis(lp);
    if (!s) fail(ErrorKind::precondition, "caratheodory_reduce: set does not ray-embrace b");
    return s->basis.columns;
}

Integer max_abs_coordinate(const std::vector<PointSet>& colors, const Vector& b)
{
    Rational m = norm_inf(b);
    for (const auto& c : colors)
        for (const auto& p : c) m = std::max(m, norm_inf(p));
    return ceil_div(m);
}

Integer factorial(std::size_t n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

DerivedConstants derive_constants(std::size_t d, const Integer& m, unsigned c_exponent)
{
    require(c_exponent >= 3, ErrorKind::precondition, "c_exponent must be at least 3");
    DerivedConstants k;
    k.m = m;
    k.N = factorial(d) * pow_int(m, d);
    k.c_exponent = c_exponent;
    k.eps = Rational(Integer(1), pow_int(k.N, static_cast<unsigned long>(c_exponent) * d));
    return k;
}

DerivedConstants derive_constants(const GroundInstance& ground, unsigned c_exponent)
{
    return derive_constants(ground.dim, max_abs_coordinate(ground.colors, ground.b), c_exponent);
}

bool satisfies_P1(const CcpInstance& inst)
{
    check_structure(inst);
    if (!is_integral(inst.b)) return false;
    for (const auto& c : inst.colors) {
        if (c.size() != inst.dim) return false;
        for (const auto& p : c)
            if (!is_integral(p)) return false;
    }
    return validate(inst).ok;
}

std::optional<std::vector<PointRef>> verify_P2_serial(const CcpInstance& inst)
{
    auto pts = flatten(inst);
    const std::size_t k = inst.dim - 1;
    std::optional<std::vector<PointRef>> bad;
    for_each_combination(pts.size(), k, [&](const std::vector<std::size_t>& s) {
        if (!p2_violated(pts, s, inst.b)) return true;
        std::vector<PointRef> refs;
        for (auto i : s) refs.push_back(pts[i].first);
        bad = refs;
        return false;
    });
    return bad;
}

std::optional<std::vector<PointRef>> verify_P2(const CcpInstance& inst)
{
    auto pts = flatten(inst);
    const std::size_t k = inst.dim - 1;
    if (k == 0 || pts.size() < k) return verify_P2_serial(inst);
    const long heads = static_cast<long>(pts.size() - k + 1);
    std::vector<std::optional<std::vector<std::size_t>>> first_bad(static_cast<std::size_t>(heads));
    // heads past the earliest violating head cannot change the answer
    std::atomic<long> cutoff{heads};
#pragma omp parallel for schedule(dynamic)
    for (long h = 0; h < heads; ++h) {
        if (h > cutoff.load(std::memory_order_relaxed)) continue;
        for_each_combination(pts.size(), k, [&](const std::vector<std::size_t>& s) {
            if (h > cutoff.load(std::memory_order_relaxed)) return false;
            if (!p2_violated(pts, s, inst.b)) return true;
            first_bad[static_cast<std::size_t>(h)] = s;
            long cur = cutoff.load();
            while (h < cur && !cutoff.compare_exchange_weak(cur, h)) {
            }
            return false;
        }, h);
    }
    for (const auto& fb : first_bad) {
        if (!fb) continue;
        std::vector<PointRef> refs;
        for (auto i : *fb) refs.push_back(pts[i].first);
        return refs;
    }
    return std::nullopt;
}

PerturbResult perturb_to_general_position(const CcpInstance& inst, const PerturbOptions& opt)
{
    auto rep = validate(inst);
    require(rep.ok, ErrorKind::precondition, "perturb: invalid instance: " + rep.message);
    const std::size_t d = inst.dim;
    PerturbResult out;

    if (!opt.force && satisfies_P1(inst) && !verify_P2(inst)) {
        out.fast_path = true;
        out.ground = GroundInstance{d, inst.colors, inst.b, {}};
        out.ground.constants = derive_constants(out.ground, opt.c_exponent);
        out.map.identity = true;
        out.map.origin.resize(d);
        out.map.point_scale.resize(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                out.map.origin[i].push_back({i, j});
                out.map.point_scale[i].push_back(1);
            }
        return out;
    }

    auto rs = rescale_to_integers(inst);
    const CcpInstance& z = rs.scaled;
    const Integer m = max_abs_coordinate(z.colors, z.b);
    const Integer N = factorial(d) * pow_int(m, d);
    const Rational eps0(Integer(1), N * N);
    const Vector b_eps = perturb_b(z.b, eps0);

    PerturbationMap map;
    map.identity = false;
    map.point_scale = rs.point_scale;
    map.b_scale = rs.b_scale;
    map.eps0 = eps0;
    map.clearing = pow_int(N * N, d * d);
    const Rational clear(map.clearing);

    GroundInstance g;
    g.dim = d;
    g.colors.resize(d);
    map.origin.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        PointSet expanded;
        std::vector<PointRef> from;
        for (std::size_t j = 0; j < z.colors[i].size(); ++j) {
            for (auto& q : sphere_replace(z.colors[i][j], eps0)) {
                expanded.push_back(std::move(q));
                from.push_back({i, j});
            }
        }
        auto keep = caratheodory_reduce(expanded, b_eps);
        require(keep.size() == d, ErrorKind::internal, "perturb: reduced color does not have exactly d points");
        for (auto k : keep) {
            g.colors[i].push_back(clear * expanded[k]);
            map.origin[i].push_back(from[k]);
        }
    }
    g.b = clear * b_eps;
    auto as_inst = g.as_instance();
    require(satisfies_P1(as_inst), ErrorKind::internal, "perturb: output violates P1");
    if (opt.audit_colors > 0 && opt.audit_colors < d) {
        // Only these colors take part downstream; P2 is audited on their union.
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < opt.audit_colors; ++i)
            for (const auto& p : as_inst.colors[i]) pts.push_back(p);
        bool bad = !for_each_combination(pts.size(), d - 1, [&](const std::vector<std::size_t>& s) {
            std::vector<Vector> sel;
            for (auto k : s) sel.push_back(pts[k]);
            return !in_linear_span(sel, as_inst.b);
        });
        require(!bad, ErrorKind::internal, "perturb: output violates P2 on the audited colors");
    } else {
        require(!verify_P2(as_inst), ErrorKind::internal, "perturb: output violates P2");
    }
    g.constants = derive_constants(g, opt.c_exponent);
    out.ground = std::move(g);
    out.map = std::move(map);
    return out;
}

ColorfulChoice map_solution_back(const ColorfulChoice& ground_choice, const PerturbationMap& map,
                                 const CcpInstance& original)
{
    std::vector<PointRef> pts;
    for (const auto& r : ground_choice.points) {
        require(r.color < map.origin.size() && r.index < map.origin[r.color].size(), ErrorKind::precondition,
                "map_solution_back: point outside the ground instance");
        pts.push_back(map.origin[r.color][r.index]);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto c = certify_points(original, pts);
    require(c.has_value(), ErrorKind::internal, "map_solution_back: mapped points do not ray-embrace the original b");
    return *c;
}

CcpInstance lift_convex_to_cone(const std::vector<PointSet>& colors)
{
    require(!colors.empty(), ErrorKind::dimension, "lift_convex_to_cone: no colors");
    const std::size_t d = colors.front().empty() ? 0 : colors.front().front().size();
    require(colors.size() == d + 1, ErrorKind::dimension, "lift_convex_to_cone: need d+1 colors in Q^d");
    CcpInstance out;
    out.dim = d + 1;
    for (const auto& c : colors) {
        PointSet lifted;
        for (const auto& p : c) {
            require(p.size() == d, ErrorKind::dimension, "lift_convex_to_cone: mixed dimensions");
            Vector q = p;
            q.push_back(1);
            lifted.push_back(std::move(q));
        }
        out.colors.push_back(std::move(lifted));
    }
    out.b = unit_vector(d + 1, d);
    return out;
}

bool certifies(const CcpInstance& inst, const ColorfulChoice& choice)
{
    if (choice.points.size() != choice.coefficients.size()) return false;
    Vector sum(inst.dim, Rational(0));
    for (std::size_t k = 0; k < choice.points.size(); ++k) {
        const auto& r = choice.points[k];
        if (r.color >= inst.colors.size() || r.index >= inst.colors[r.color].size()) return false;
        if (choice.coefficients[k] < 0) return false;
        sum = sum + choice.coefficients[k] * inst.colors[r.color][r.index];
    }
    return sum == inst.b;
}

bool is_colorful(const CcpInstance& inst, const ColorfulChoice& choice)
{
    if (choice.points.size() != inst.colors.size()) return false;
    std::vector<int> seen(inst.colors.size(), 0);
    for (const auto& r : choice.points) {
        if (r.color >= seen.size() || seen[r.color]++) return false;
    }
    return true;
}

std::optional<ColorfulChoice> certify_points(const CcpInstance& inst, std::vector<PointRef> points)
{
    PointSet pts;
    for (const auto& r : points) {
        require(r.color < inst.colors.size() && r.index < inst.colors[r.color].size(), ErrorKind::precondition,
                "certify_points: reference out of range");
        pts.push_back(inst.colors[r.color][r.index]);
    }
    auto alpha = ray_embrace(pts, inst.b);
    if (!alpha) return std::nullopt;
    ColorfulChoice c{std::move(points), std::move(*alpha)};
    require(certifies(inst, c), ErrorKind::internal, "certify_points: certificate check failed");
    return c;
}

}  // namespace ccp
