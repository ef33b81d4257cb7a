#include "ccp/pls.hpp"

#include <algorithm>

#include "ccp/parallel.hpp"

namespace ccp {

ConeProjection nearest_point_in_cone(const PointSet& C, const Vector& b)
{
    const std::size_t n = C.size(), d = b.size();
    for (const auto& p : C) require(p.size() == d, ErrorKind::dimension, "nearest_point_in_cone: dimension mismatch");
    require(n < 8 * sizeof(unsigned long), ErrorKind::precondition, "nearest_point_in_cone: too many points");

    // Subsets by size; the objective is strictly convex in x, so the first KKT point is the minimizer.
    for (std::size_t size = 0; size <= std::min(n, d); ++size) {
        std::optional<ConeProjection> hit;
        for_each_combination(n, size, [&](const std::vector<std::size_t>& S) {
            Vector x(d, Rational(0));
            Vector alpha;
            if (!S.empty()) {
                Matrix G(size, size);
                Vector rhs(size);
                for (std::size_t r = 0; r < size; ++r) {
                    rhs[r] = dot(C[S[r]], b);
                    for (std::size_t c = 0; c < size; ++c) G(r, c) = dot(C[S[r]], C[S[c]]);
                }
                if (determinant(G) == 0) return true;
                alpha = solve_square(G, rhs);
                if (std::any_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a < 0; })) return true;
                for (std::size_t r = 0; r < size; ++r) x = x + alpha[r] * C[S[r]];
            }
            const Vector resid = b - x;
            for (const auto& p : C)
                if (dot(p, resid) > 0) return true;
            hit = ConeProjection{x, squared_norm(resid), S, alpha};
            return false;
        });
        if (hit) return *hit;
    }
    fail(ErrorKind::internal, "nearest_point_in_cone: no subset passed the optimality test");
}

Rational potential_of(const CcpInstance& inst, const std::vector<std::size_t>& choice)
{
    PointSet pts;
    for (std::size_t i = 0; i < choice.size(); ++i) pts.push_back(inst.colors[i].at(choice[i]));
    return nearest_point_in_cone(pts, inst.b).dist2;
}

namespace {

struct Move {
    std::size_t color, to;
};

std::vector<Move> moves_of(const CcpInstance& inst, const PlsState& s)
{
    std::vector<Move> out;
    for (std::size_t i = 0; i < inst.colors.size(); ++i)
        for (std::size_t j = 0; j < inst.colors[i].size(); ++j)
            if (j != s.choice[i]) out.push_back({i, j});
    return out;
}

PlsState moved(const CcpInstance& inst, const PlsState& s, const Move& m)
{
    PlsState t = s;
    t.choice[m.color] = m.to;
    t.potential = potential_of(inst, t.choice);
    return t;
}

}  // namespace

std::optional<PlsState> improving_neighbor_serial(const CcpInstance& inst, const PlsState& s, bool best)
{
    std::optional<PlsState> pick;
    for (const auto& m : moves_of(inst, s)) {
        PlsState t = moved(inst, s, m);
        if (t.potential >= s.potential) continue;
        if (!best) return t;
        if (!pick || t.potential < pick->potential) pick = std::move(t);
    }
    return pick;
}

std::optional<PlsState> improving_neighbor(const CcpInstance& inst, const PlsState& s, const PlsOptions& opt)
{
    if (!opt.parallel || max_threads() == 1) return improving_neighbor_serial(inst, s, opt.best_improvement);
    const auto moves = moves_of(inst, s);
    std::vector<Rational> pot(moves.size());
    const long n = static_cast<long>(moves.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) pot[static_cast<std::size_t>(i)] = moved(inst, s, moves[static_cast<std::size_t>(i)]).potential;
    // Selection is sequential so the result matches the serial scan.
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (pot[i] >= s.potential) continue;
        if (!pick || (opt.best_improvement && pot[i] < pot[*pick])) pick = i;
        if (!opt.best_improvement) break;
    }
    if (!pick) return std::nullopt;
    PlsState t = s;
    t.choice[moves[*pick].color] = moves[*pick].to;
    t.potential = pot[*pick];
    return t;
}

PlsResult run_local_search(const CcpInstance& inst, const PlsOptions& opt)
{
    auto rep = validate(inst);
    require(rep.ok, ErrorKind::precondition, "local search: invalid instance: " + rep.message);
    PlsResult res;
    PlsState s{std::vector<std::size_t>(inst.dim, 0), 0};
    s.potential = potential_of(inst, s.choice);
    res.potentials.push_back(s.potential);
    std::uint64_t step = 0;
    while (s.potential > 0) {
        if (step >= opt.budget) fail(ErrorKind::budget, "local search budget of " + std::to_string(opt.budget) + " steps exceeded");
        auto t = improving_neighbor(inst, s, opt);
        if (!t) fail(ErrorKind::audit, "local optimum with positive potential " + to_string(s.potential));
        require(t->potential < s.potential, ErrorKind::internal, "local search: potential did not decrease");
        std::size_t color = 0;
        while (t->choice[color] == s.choice[color]) ++color;
        PlsStep rec{++step, color, s.choice[color], t->choice[color], s.potential, t->potential};
        if (opt.trace) opt.trace(rec);
        res.steps.push_back(rec);
        res.potentials.push_back(t->potential);
        s = std::move(*t);
    }
    std::vector<PointRef> pts;
    for (std::size_t i = 0; i < inst.dim; ++i) pts.push_back({i, s.choice[i]});
    auto c = certify_points(inst, pts);
    require(c.has_value(), ErrorKind::internal, "local search: zero potential but no certificate");
    res.choice = std::move(*c);
    return res;
}

}  // namespace ccp
