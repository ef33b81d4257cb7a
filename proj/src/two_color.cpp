#include "ccp/two_color.hpp"

#include <algorithm>

#include "ccp/lp.hpp"
#include "ccp/parallel.hpp"

namespace ccp {

namespace {

std::size_t color1_count(const ParametricLp& lp, const IndexSet& S)
{
    return static_cast<std::size_t>(std::count_if(S.begin(), S.end(), [&](std::size_t j) { return lp.color_of(j) == 0; }));
}

Verdict verdict_for(std::size_t count, std::size_t k)
{
    if (count == k) return Verdict::found;
    return count < k ? Verdict::go_left : Verdict::go_right;
}

// Integer, both colors of size d, P2 on their union.
bool pair_in_general_position(const PointSet& C1, const PointSet& C2, const Vector& b)
{
    const std::size_t d = b.size();
    if (C1.size() != d || C2.size() != d || !is_integral(b)) return false;
    PointSet all = C1;
    all.insert(all.end(), C2.begin(), C2.end());
    for (const auto& p : all)
        if (!is_integral(p)) return false;
    return for_each_combination(all.size(), d - 1, [&](const std::vector<std::size_t>& s) {
        std::vector<Vector> sel;
        for (auto i : s) sel.push_back(all[i]);
        return !in_linear_span(sel, b);
    });
}

void emplace_restricted(std::optional<ParametricLp>& lp, const PointSet& C1, const PointSet& C2, const Vector& b,
                        const DerivedConstants& K)
{
    const std::size_t d = b.size();
    PointSet cols = C1;
    cols.insert(cols.end(), C2.begin(), C2.end());
    std::vector<std::size_t> color, expo;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        color.push_back(j < C1.size() ? 0 : 1);
        expo.push_back(j + 1);
    }
    lp.emplace(d, std::move(cols), std::move(color), std::move(expo), b, K);
}

}  // namespace

Classification classify_midpoint(const ParametricLp& lp, std::size_t k, const Rational& t)
{
    const std::size_t d = lp.dim();
    require(t > 0 && t < 1, ErrorKind::precondition, "classify_midpoint: t must lie in (0,1)");
    Vector mu(d, Rational(0));
    mu[0] = 1 - t;
    mu[1] = t;
    auto face = lp.optimal_face_at(project_to_M(mu));
    Classification c;
    c.support = face.support;
    if (face.support.size() == d) {
        const std::size_t n = color1_count(lp, face.support);
        c.counts = {n};
        c.verdict = verdict_for(n, k);
        if (c.verdict == Verdict::found) c.basis = face.support;
        return c;
    }
    if (face.support.size() != d + 1)
        fail(ErrorKind::audit, "two-color: optimal face at t = " + to_string(t) + " has " +
                                   std::to_string(face.support.size()) + " columns");
    std::vector<IndexSet> ends;
    for_each_combination(d + 1, d, [&](const std::vector<std::size_t>& pick) {
        IndexSet B;
        for (auto i : pick) B.push_back(face.support[i]);
        if (lp.is_feasible_basis(B)) ends.push_back(B);
        return true;
    });
    require(ends.size() == 2, ErrorKind::audit, "two-color: optimal edge does not have two feasible bases");
    for (const auto& B : ends) c.counts.push_back(color1_count(lp, B));
    const std::size_t lo = std::min(c.counts[0], c.counts[1]), hi = std::max(c.counts[0], c.counts[1]);
    require(hi - lo <= 1, ErrorKind::audit, "two-color: adjacent bases differ in more than one color-1 column");
    for (std::size_t i = 0; i < 2; ++i) {
        if (c.counts[i] == k) {
            c.verdict = Verdict::found;
            c.basis = ends[i];
            return c;
        }
    }
    c.verdict = verdict_for(lo, k);
    require(verdict_for(hi, k) == c.verdict, ErrorKind::audit, "two-color: edge endpoints straddle k");
    return c;
}

std::size_t iteration_cap(const ParametricLp& lp)
{
    // Reduced costs times det(A_B) are integer forms with entries below (d+1)·N·(α_max + β).
    // On either half of the edge a breakpoint solves a linear equation in t with such
    // coefficients, so its denominator has at most B bits and two breakpoints are
    // at least 2^(−2B) apart.
    const auto& K = lp.constants();
    Rational amax = 0;
    for (const auto& a : lp.base_cost()) amax = std::max(amax, Rational(abs(a)));
    const Rational bound = Rational(4 * static_cast<long>(lp.dim() + 1)) * Rational(K.N) * (amax + lp.weight());
    Integer whole = bound.get_num() / bound.get_den() + 1;
    return 2 * bit_length(whole) + 8;
}

SplitResult find_split(const PointSet& C1, const PointSet& C2, const Vector& b, std::size_t k, const TwoColorOptions& opt)
{
    const std::size_t d = b.size();
    require(d >= 2, ErrorKind::dimension, "find_split: needs d ≥ 2");
    require(k >= 1 && k < d, ErrorKind::precondition, "find_split: k must lie in [1, d−1]");
    for (const auto* C : {&C1, &C2})
        for (const auto& p : *C) require(p.size() == d, ErrorKind::dimension, "find_split: point of wrong dimension");
    require(std::any_of(b.begin(), b.end(), [](const Rational& x) { return x != 0; }), ErrorKind::precondition,
            "find_split: b is zero");
    require(ray_embrace(C1, b).has_value(), ErrorKind::precondition, "find_split: C1 does not ray-embrace b");
    require(ray_embrace(C2, b).has_value(), ErrorKind::precondition, "find_split: C2 does not ray-embrace b");

    // The full instance carries d−2 dummy colors {b}; they never enter the search since
    // μ vanishes on them, so the program is restricted to the first two color blocks.
    CcpInstance full{d, {C1, C2}, b};
    for (std::size_t i = 2; i < d; ++i) full.colors.push_back({b});

    SplitResult res;
    std::optional<PerturbResult> pr;
    std::optional<ParametricLp> lp;
    if (!opt.force_pipeline && pair_in_general_position(C1, C2, b)) {
        auto K = derive_constants(d, max_abs_coordinate({C1, C2}, b), opt.c_exponent);
        emplace_restricted(lp, C1, C2, b, K);
    } else {
        PerturbOptions po;
        po.force = true;
        po.c_exponent = opt.c_exponent;
        po.audit_colors = 2;
        pr = perturb_to_general_position(full, po);
        const auto& g = pr->ground;
        emplace_restricted(lp, g.colors[0], g.colors[1], g.b, g.constants);
        res.pipeline = true;
    }
    res.cap = iteration_cap(*lp);

    Rational lo = 0, hi = 1;
    std::optional<IndexSet> basis;
    while (!basis) {
        if (++res.iterations > res.cap)
            fail(ErrorKind::budget, "two-color: iteration cap " + std::to_string(res.cap) + " exceeded");
        const Rational t = (lo + hi) / 2;
        auto c = classify_midpoint(*lp, k, t);
        if (opt.trace) opt.trace({res.iterations, t, c});
        switch (c.verdict) {
        case Verdict::found: basis = c.basis; break;
        case Verdict::go_left: hi = t; break;
        case Verdict::go_right: lo = t; break;
        }
    }

    const std::size_t n1 = pr ? pr->ground.colors[0].size() : C1.size();
    std::vector<PointRef> refs;
    for (auto j : *basis) {
        PointRef r = j < n1 ? PointRef{0, j} : PointRef{1, j - n1};
        if (pr) r = pr->map.origin[r.color][r.index];
        refs.push_back(r);
    }
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    // Several ground points can share one original; pad with unused points of the same color.
    const std::size_t want[2] = {k, d - k};
    const std::size_t size[2] = {C1.size(), C2.size()};
    for (std::size_t c = 0; c < 2; ++c) {
        std::size_t have = static_cast<std::size_t>(std::count_if(refs.begin(), refs.end(), [&](const PointRef& r) { return r.color == c; }));
        for (std::size_t j = 0; j < size[c] && have < want[c]; ++j) {
            PointRef r{c, j};
            if (std::find(refs.begin(), refs.end(), r) != refs.end()) continue;
            refs.push_back(r);
            ++have;
        }
        require(have == want[c], ErrorKind::internal, "find_split: not enough distinct points to fill the split");
    }
    std::sort(refs.begin(), refs.end());
    CcpInstance two{d, {C1, C2}, b};
    PointSet pts;
    for (const auto& r : refs) pts.push_back(two.colors[r.color][r.index]);
    auto alpha = ray_embrace(pts, b);
    require(alpha.has_value(), ErrorKind::internal, "find_split: split does not ray-embrace b");
    res.choice = {refs, *alpha};
    Vector sum(d, Rational(0));
    for (std::size_t i = 0; i < refs.size(); ++i) sum = sum + (*alpha)[i] * pts[i];
    require(sum == b, ErrorKind::internal, "find_split: certificate check failed");
    return res;
}

}  // namespace ccp
