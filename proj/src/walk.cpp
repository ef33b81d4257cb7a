#include "ccp/walk.hpp"

#include <algorithm>
#include <set>

namespace ccp {

namespace {

bool contains(const IndexSet& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

IndexSet with(IndexSet s, std::size_t x)
{
    s.insert(std::lower_bound(s.begin(), s.end(), x), x);
    return s;
}

IndexSet without(IndexSet s, std::size_t x)
{
    s.erase(std::remove(s.begin(), s.end(), x), s.end());
    return s;
}

// One extra tight constraint between consecutive chain entries.
struct Atom {
    enum Kind { support, zero, one } kind;
    std::size_t index;
};

ChainEntry apply(ChainEntry q, const Atom& a)
{
    switch (a.kind) {
    case Atom::support: q.S = with(q.S, a.index); break;
    case Atom::zero: q.I0 = with(q.I0, a.index); break;
    case Atom::one: q.I1 = with(q.I1, a.index); break;
    }
    return q;
}

std::vector<Atom> atoms_between(const ChainEntry& hi, const ChainEntry& lo)
{
    std::vector<Atom> out;
    for (auto j : lo.S)
        if (!contains(hi.S, j)) out.push_back({Atom::support, j});
    for (auto i : lo.I0)
        if (!contains(hi.I0, i)) out.push_back({Atom::zero, i});
    for (auto i : lo.I1)
        if (!contains(hi.I1, i)) out.push_back({Atom::one, i});
    return out;
}

std::vector<ChainEntry> flip_candidates(const SpernerComplex& cx, const SimplexEncoding& T, std::size_t p)
{
    const std::size_t d = cx.dim(), k = T.k();
    const auto& Q = T.entries;
    std::vector<ChainEntry> out;
    if (p == 0) {
        // Any single extra constraint on Q₁.
        const auto& hi = Q[1];
        for (std::size_t j = 0; j < cx.lp().columns(); ++j)
            if (!contains(hi.S, j)) out.push_back(apply(hi, {Atom::support, j}));
        for (std::size_t i = 0; i < d; ++i) {
            if (contains(hi.I0, i) || contains(hi.I1, i)) continue;
            out.push_back(apply(hi, {Atom::zero, i}));
            out.push_back(apply(hi, {Atom::one, i}));
        }
    } else if (p + 1 < k) {
        for (const auto& a : atoms_between(Q[p + 1], Q[p - 1])) out.push_back(apply(Q[p + 1], a));
    } else {
        // Top entry: drop one constraint from Q_{k−2}.
        const auto& lo = Q[p - 1];
        for (auto j : lo.S) out.push_back({without(lo.S, j), lo.I0, lo.I1});
        for (auto i : lo.I0) out.push_back({lo.S, without(lo.I0, i), lo.I1});
        for (auto i : lo.I1) out.push_back({lo.S, lo.I0, without(lo.I1, i)});
    }
    return out;
}

bool drop_pattern(const SimplexEncoding& T)
{
    const std::size_t k = T.k();
    if (k < 2) return false;
    const auto& top = T.entries[k - 1];
    const auto& below = T.entries[k - 2];
    return below.S == top.S && below.I1 == top.I1 && below.I0 == with(top.I0, k - 1);
}

}  // namespace

GraphNode make_node(const SpernerComplex& cx, SimplexEncoding T)
{
    GraphNode n;
    n.k = T.k();
    n.labels = cx.labels(T);
    n.encoding = std::move(T);
    for (auto l : n.labels)
        if (l >= n.k) fail(ErrorKind::audit, "Sperner property violated: label " + std::to_string(l + 1) + " at level " +
                                                 std::to_string(n.k) + " for " + digest(n.encoding));
    std::vector<int> seen(n.k, 0);
    for (auto l : n.labels) ++seen[l];
    for (std::size_t l = 0; l + 1 < n.k; ++l)
        require(seen[l] > 0, ErrorKind::precondition, "node is not in V_k: label " + std::to_string(l + 1) + " missing");
    return n;
}

bool fully_labeled(const GraphNode& n)
{
    std::vector<std::size_t> s = n.labels;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != i) return false;
    return s.size() == n.k;
}

GraphNode standard_source(const SpernerComplex& cx)
{
    const std::size_t d = cx.dim();
    auto face = cx.lp().optimal_face_at(unit_vector(d, 0));
    IndexSet expect;
    for (std::size_t j = 0; j < d; ++j) expect.push_back(j);
    if (face.basis.columns != expect || face.support != expect)
        fail(ErrorKind::audit, "standard source: optimal face at e1 is not the first color block");
    IndexSet I0;
    for (std::size_t i = 1; i < d; ++i) I0.push_back(i);
    SimplexEncoding T{{ChainEntry{expect, I0, {0}}}};
    require(cx.verify_tuple(T), ErrorKind::audit, "standard source fails verification");
    return make_node(cx, std::move(T));
}

std::optional<SimplexEncoding> facet_flip(const SpernerComplex& cx, const SimplexEncoding& T, std::size_t i)
{
    require(i < T.k(), ErrorKind::precondition, "facet_flip: position out of range");
    require(cx.verify_tuple(T), ErrorKind::precondition, "facet_flip: tuple is not valid");
    if (T.k() == 1) return std::nullopt;
    std::optional<SimplexEncoding> found;
    for (auto& q : flip_candidates(cx, T, i)) {
        if (q == T.entries[i]) continue;
        SimplexEncoding U = T;
        U.entries[i] = std::move(q);
        if (!cx.verify_tuple(U)) continue;
        if (found && *found != U)
            fail(ErrorKind::audit, "facet_flip: two simplices across one facet of " + digest(T));
        found = std::move(U);
    }
    return found;
}

SimplexEncoding lift_simplex(const SpernerComplex& cx, const SimplexEncoding& T)
{
    const std::size_t k = T.k();
    require(k >= 1 && k < cx.dim(), ErrorKind::precondition, "lift_simplex: level must be below d");
    require(cx.verify_tuple(T), ErrorKind::precondition, "lift_simplex: tuple is not valid");
    SimplexEncoding U = T;
    const auto& top = T.entries.back();
    U.entries.push_back({top.S, without(top.I0, k), top.I1});
    require(cx.verify_tuple(U), ErrorKind::audit, "lift_simplex: lifted tuple is not valid: " + digest(U));
    return U;
}

std::optional<SimplexEncoding> drop_simplex(const SpernerComplex& cx, const SimplexEncoding& T)
{
    require(T.k() > 1, ErrorKind::precondition, "drop_simplex: level must be above 1");
    require(cx.verify_tuple(T), ErrorKind::precondition, "drop_simplex: tuple is not valid");
    if (!drop_pattern(T)) return std::nullopt;
    SimplexEncoding U = T;
    U.entries.pop_back();
    if (!cx.verify_tuple(U)) return std::nullopt;
    return U;
}

std::vector<Neighbor> node_neighbors(const SpernerComplex& cx, const GraphNode& node)
{
    const std::size_t d = cx.dim(), k = node.k;
    std::vector<Neighbor> out;
    const bool full = fully_labeled(node);
    if (k > 1) {
        std::vector<std::size_t> omit;
        if (full) {
            for (std::size_t p = 0; p < k; ++p)
                if (node.labels[p] == k - 1) omit.push_back(p);
        } else {
            // [k−1] present with one label repeated: the two copies give the [k−1]-labeled facets.
            std::vector<int> count(k, 0);
            for (auto l : node.labels) ++count[l];
            for (std::size_t p = 0; p < k; ++p)
                if (count[node.labels[p]] == 2) omit.push_back(p);
        }
        for (auto p : omit) {
            if (p + 1 == k && drop_pattern(node.encoding)) {
                auto U = drop_simplex(cx, node.encoding);
                if (!U) fail(ErrorKind::audit, "bottom facet of " + digest(node.encoding) + " is not a valid simplex");
                out.push_back({make_node(cx, std::move(*U)), EdgeKind::drop, p});
            } else {
                auto U = facet_flip(cx, node.encoding, p);
                if (!U)
                    fail(ErrorKind::audit, "no simplex across the [k-1]-labeled facet at position " + std::to_string(p) +
                                               " of " + digest(node.encoding));
                out.push_back({make_node(cx, std::move(*U)), EdgeKind::flip, p});
            }
        }
    }
    if ((full || k == 1) && k < d) out.push_back({make_node(cx, lift_simplex(cx, node.encoding)), EdgeKind::lift, k});

    const std::size_t expected = (k == 1 || (k == d && full)) ? 1 : 2;
    if (d == 1) {
        require(out.empty(), ErrorKind::internal, "d = 1 graph has an edge");
    } else if (out.size() != expected) {
        fail(ErrorKind::audit, "node " + digest(node.encoding) + " has degree " + std::to_string(out.size()) +
                                   ", expected " + std::to_string(expected));
    }
    return out;
}

Vector w_lift_vector(std::size_t d, std::size_t label)
{
    require(label >= 1 && label < d, ErrorKind::precondition, "w_lift_vector: label out of range");
    Vector w(d, Rational(0));
    for (std::size_t j = 0; j < label; ++j) w[j] = 2;
    w[label] = 1 - 2 * static_cast<long>(label);
    return w;
}

int orientation(std::size_t d, const GraphNode& node, const std::vector<Vector>& witnesses, const Neighbor& nb)
{
    const std::size_t k = node.k;
    require(witnesses.size() == k, ErrorKind::precondition, "orientation: witness count differs from the level");
    // σ_w as (label, point); the distinguished vertex goes first, the shared facet follows by label.
    std::vector<std::pair<std::size_t, Vector>> facet;
    std::optional<Vector> first;
    for (std::size_t p = 0; p < k; ++p) {
        if (nb.kind != EdgeKind::lift && p == nb.position) first = witnesses[p];
        else facet.emplace_back(node.labels[p], witnesses[p]);
    }
    for (std::size_t l = k; l < d; ++l) {
        if (nb.kind == EdgeKind::lift && l == k) first = w_lift_vector(d, l);
        else facet.emplace_back(l, w_lift_vector(d, l));
    }
    require(first.has_value() && facet.size() + 1 == d, ErrorKind::internal, "orientation: malformed lifted simplex");
    std::sort(facet.begin(), facet.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < facet.size(); ++i)
        require(facet[i - 1].first != facet[i].first, ErrorKind::internal, "orientation: shared facet repeats a label");

    // Ones row, then every coordinate but the last (columns already sum to 1).
    Matrix M(d, d);
    auto put = [&](std::size_t c, const Vector& v) {
        M(0, c) = 1;
        for (std::size_t r = 1; r < d; ++r) M(r, c) = v[r - 1];
    };
    put(0, *first);
    for (std::size_t c = 0; c < facet.size(); ++c) put(c + 1, facet[c].second);
    const int s = sgn(determinant(M));
    if (s == 0) fail(ErrorKind::audit, "orientation determinant vanishes at " + digest(node.encoding));
    return s;
}

int orientation(const SpernerComplex& cx, const GraphNode& node, const Neighbor& nb)
{
    return orientation(cx.dim(), node, cx.relint_witnesses(node.encoding), nb);
}

WalkResult run_standard_algorithm(const GroundInstance& ground, const WalkOptions& opt)
{
    SpernerComplex cx(ground);
    return run_standard_algorithm(cx, opt);
}

WalkResult run_standard_algorithm(const SpernerComplex& cx, const WalkOptions& opt)
{
    const std::size_t d = cx.dim();
    WalkResult res;
    GraphNode cur = standard_source(cx);
    std::set<SimplexEncoding> visited{cur.encoding};
    int s0 = 1;
    std::optional<int> back_sign;  // dir(prev, cur), to be matched by −dir(cur, prev)
    std::optional<SimplexEncoding> prev;

    auto emit = [&](const GraphNode& n, int sign) {
        if (opt.trace) opt.trace({res.steps, n.k, digest(n.encoding), n.labels, sign});
        if (opt.visit) opt.visit(n);
    };

    while (!(cur.k == d && fully_labeled(cur))) {
        if (res.steps >= opt.budget)
            fail(ErrorKind::budget, "walk budget of " + std::to_string(opt.budget) + " steps exceeded");
        auto nbs = node_neighbors(cx, cur);
        auto wit = cx.relint_witnesses(cur.encoding);
        std::optional<std::size_t> next;
        int next_sign = 0;
        for (std::size_t i = 0; i < nbs.size(); ++i) {
            const int s = orientation(d, cur, wit, nbs[i]);
            if (prev && nbs[i].node.encoding == *prev) {
                if (s != -*back_sign)
                    fail(ErrorKind::audit, "orientation is not antisymmetric on the edge into " + digest(cur.encoding));
                if (s0 * s > 0) fail(ErrorKind::audit, "both edges at " + digest(cur.encoding) + " point outward");
                continue;
            }
            if (!prev) s0 = s;  // the source must be a source; otherwise invert
            if (s0 * s < 0) fail(ErrorKind::audit, "both edges at " + digest(cur.encoding) + " point inward");
            require(!next.has_value(), ErrorKind::audit, "two forward edges at " + digest(cur.encoding));
            next = i;
            next_sign = s;
        }
        require(next.has_value(), ErrorKind::audit, "walk is stuck at " + digest(cur.encoding));
        if (!prev) res.inverted = s0 < 0;
        emit(cur, next_sign);
        prev = cur.encoding;
        back_sign = next_sign;
        cur = std::move(nbs[*next].node);
        ++res.steps;
        if (!visited.insert(cur.encoding).second) fail(ErrorKind::audit, "walk revisited " + digest(cur.encoding));
    }
    if (prev) {
        // The sink's single edge must point back along the path.
        auto nbs = node_neighbors(cx, cur);
        require(nbs.size() == 1 && nbs[0].node.encoding == *prev, ErrorKind::audit, "sink is not adjacent to its predecessor");
        const int s = orientation(cx, cur, nbs[0]);
        if (s != -*back_sign) fail(ErrorKind::audit, "orientation is not antisymmetric at the sink");
    }
    emit(cur, 0);

    const IndexSet& S = cur.encoding.entries.back().S;
    std::vector<int> per_color(d, 0);
    for (auto j : S) ++per_color[j / d];
    for (std::size_t i = 0; i < d; ++i)
        require(per_color[i] == 1, ErrorKind::internal, "sink support is not colorful: " + digest(cur.encoding));
    std::vector<PointRef> pts;
    for (auto j : S) pts.push_back({j / d, j % d});
    auto choice = certify_points(cx.ground().as_instance(), pts);
    require(choice.has_value(), ErrorKind::internal, "sink support does not ray-embrace b");
    res.choice = std::move(*choice);
    res.sink = cur.encoding;
    res.stats = cx.stats();
    return res;
}

PpadSolution solve_ppad(const CcpInstance& inst, const PerturbOptions& popt, const WalkOptions& wopt)
{
    PpadSolution out;
    out.perturbation = perturb_to_general_position(inst, popt);
    SpernerComplex cx(out.perturbation.ground, popt.c_exponent);
    out.walk = run_standard_algorithm(cx, wopt);
    out.choice = map_solution_back(out.walk.choice, out.perturbation.map, inst);
    return out;
}

}  // namespace ccp
