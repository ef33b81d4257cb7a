#include "ccp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "ccp/lp.hpp"
#include "ccp/parallel.hpp"

namespace ccp {

namespace {

// Mixed-radix counter over the color sizes.
std::vector<std::size_t> tuple_of(std::uint64_t code, const CcpInstance& inst)
{
    std::vector<std::size_t> t(inst.dim);
    for (std::size_t i = inst.dim; i-- > 0;) {
        t[i] = code % inst.colors[i].size();
        code /= inst.colors[i].size();
    }
    return t;
}

std::optional<ColorfulChoice> check_tuple(const CcpInstance& inst, const std::vector<std::size_t>& t)
{
    PointSet pts;
    std::vector<PointRef> refs;
    for (std::size_t i = 0; i < inst.dim; ++i) {
        pts.push_back(inst.colors[i][t[i]]);
        refs.push_back({i, t[i]});
    }
    auto alpha = ray_embrace(pts, inst.b);
    if (!alpha) return std::nullopt;
    return ColorfulChoice{refs, *alpha};
}

std::uint64_t tuple_count(const CcpInstance& inst)
{
    check_structure(inst);
    require(inst.dim <= 6, ErrorKind::precondition, "enumerate_colorful_solutions: d > 6 is too large to enumerate");
    std::uint64_t total = 1;
    for (const auto& c : inst.colors) total *= c.size();
    return total;
}

Vector lift(const Vector& p)
{
    Vector q = p;
    q.push_back(1);
    return q;
}

bool in_hull(const std::vector<Vector>& P, const Vector& q)
{
    std::vector<Vector> L;
    for (const auto& p : P) L.push_back(lift(p));
    return ray_embrace(L, lift(q)).has_value();
}

}  // namespace

std::vector<ColorfulChoice> enumerate_colorful_solutions_serial(const CcpInstance& inst)
{
    const std::uint64_t total = tuple_count(inst);
    std::vector<ColorfulChoice> out;
    for (std::uint64_t code = 0; code < total; ++code)
        if (auto c = check_tuple(inst, tuple_of(code, inst))) out.push_back(std::move(*c));
    return out;
}

std::vector<ColorfulChoice> enumerate_colorful_solutions(const CcpInstance& inst)
{
    const std::uint64_t total = tuple_count(inst);
    std::vector<std::optional<ColorfulChoice>> slot(total);
    const long n = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic, 8)
    for (long code = 0; code < n; ++code)
        slot[static_cast<std::size_t>(code)] = check_tuple(inst, tuple_of(static_cast<std::uint64_t>(code), inst));
    std::vector<ColorfulChoice> out;
    for (auto& s : slot)
        if (s) out.push_back(std::move(*s));
    return out;
}

std::size_t tukey_depth(const std::vector<Vector>& P, const Vector& q)
{
    const std::size_t d = q.size();
    require(d == 1 || d == 2, ErrorKind::precondition, "tukey_depth: only d ≤ 2 is supported");
    for (const auto& p : P) require(p.size() == d, ErrorKind::dimension, "tukey_depth: dimension mismatch");
    if (d == 1) {
        std::size_t lo = 0, hi = 0;
        for (const auto& p : P) {
            if (p[0] <= q[0]) ++lo;
            if (p[0] >= q[0]) ++hi;
        }
        return std::min(lo, hi);
    }
    // Minimal halfplanes have q on the boundary. The count only changes at normals
    // perpendicular to some p − q, so it suffices to look just beside each of those:
    // u = perp(v) ± δ·v for infinitesimal δ, compared lexicographically.
    std::vector<std::pair<Vector, Vector>> dirs{{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}},
                                                {{Rational(-1), Rational(0)}, {Rational(0), Rational(0)}}};
    for (const auto& p : P) {
        Vector v = p - q;
        if (v[0] == 0 && v[1] == 0) continue;
        Vector perp{-v[1], v[0]};
        for (int s : {1, -1}) {
            dirs.push_back({perp, Rational(s) * v});
            dirs.push_back({Rational(-1) * perp, Rational(s) * v});
        }
    }
    std::size_t best = P.size();
    for (const auto& [u, tie] : dirs) {
        std::size_t count = 0;
        for (const auto& p : P) {
            Vector w = p - q;
            Rational a = dot(w, u);
            if (a > 0 || (a == 0 && dot(w, tie) >= 0)) ++count;
        }
        best = std::min(best, count);
    }
    return best;
}

std::size_t simplicial_depth_count(const std::vector<Vector>& P, const Vector& q)
{
    const std::size_t d = q.size();
    std::size_t count = 0;
    for_each_combination(P.size(), d + 1, [&](const std::vector<std::size_t>& s) {
        std::vector<Vector> simplex;
        for (auto i : s) simplex.push_back(P[i]);
        if (in_hull(simplex, q)) ++count;
        return true;
    });
    return count;
}

Rational min_distance_bruteforce(const std::vector<Vector>& C, const Vector& b, std::size_t samples, std::uint64_t seed)
{
    Rational best = squared_norm(b);
    if (C.empty()) return best;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 64);
    std::uniform_int_distribution<int> den(1, 16);
    for (std::size_t s = 0; s < samples; ++s) {
        Vector x(b.size(), Rational(0));
        for (const auto& p : C) {
            // A fraction of coefficients are exactly zero so faces of the cone get sampled too.
            Rational a = (num(rng) % 4 == 0) ? Rational(0) : Rational(num(rng), den(rng));
            x = x + a * p;
        }
        best = std::min(best, squared_norm(b - x));
    }
    return best;
}

std::vector<std::vector<std::vector<std::size_t>>> tverberg_partitions_bruteforce(const std::vector<Vector>& P,
                                                                                    std::size_t m)
{
    const std::size_t n = P.size();
    require(m >= 1 && m <= n, ErrorKind::precondition, "tverberg_partitions_bruteforce: bad part count");
    require(n <= 12, ErrorKind::precondition, "tverberg_partitions_bruteforce: too many points");
    const std::size_t d = P.front().size();
    std::vector<std::vector<std::vector<std::size_t>>> out;
    // Restricted growth strings enumerate set partitions without repeats.
    std::vector<std::size_t> label(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            if (used != m) return;
            std::vector<std::vector<std::size_t>> parts(m);
            for (std::size_t k = 0; k < n; ++k) parts[label[k]].push_back(k);
            // Common point: part-0 weights reproduce (x;1), every other part matches it.
            // Cone columns live in ((m−1)(d+1) + 1) dimensions.
            const std::size_t D = (m - 1) * (d + 1) + 1;
            std::vector<Vector> cols;
            for (std::size_t j = 0; j < m; ++j) {
                for (auto k : parts[j]) {
                    Vector c(D, Rational(0));
                    const Vector pl = lift(P[k]);
                    if (j == 0) {
                        for (std::size_t blk = 0; blk + 1 < m; ++blk)
                            for (std::size_t r = 0; r <= d; ++r) c[blk * (d + 1) + r] = pl[r];
                        c[D - 1] = 1;
                    } else {
                        for (std::size_t r = 0; r <= d; ++r) c[(j - 1) * (d + 1) + r] = -pl[r];
                    }
                    cols.push_back(std::move(c));
                }
            }
            if (ray_embrace(cols, unit_vector(D, D - 1))) out.push_back(std::move(parts));
            return;
        }
        for (std::size_t l = 0; l <= used && l < m; ++l) {
            label[i] = l;
            rec(i + 1, std::max(used, l + 1));
        }
    };
    rec(0, 0);
    return out;
}

bool origin_in_hull(const std::vector<Vector>& P)
{
    if (P.empty()) return false;
    return in_hull(P, Vector(P.front().size(), Rational(0)));
}

}  // namespace ccp
