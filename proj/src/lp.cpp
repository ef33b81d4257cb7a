#include "ccp/lp.hpp"

#include <algorithm>

namespace ccp {

namespace {

// Dense tableau T = A_B⁻¹A over the kept rows.
struct Tableau {
    std::vector<Vector> T;
    Vector rhs;
    std::vector<std::size_t> basic;  // basic column per row
    std::size_t ncols = 0;

    void pivot(std::size_t r, std::size_t e, Vector* cost_row)
    {
        const Rational p = T[r][e];
        for (auto& x : T[r]) x /= p;
        rhs[r] /= p;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (i == r || T[i][e] == 0) continue;
            const Rational f = T[i][e];
            for (std::size_t j = 0; j < ncols; ++j)
                if (T[r][j] != 0) T[i][j] -= f * T[r][j];
            rhs[i] -= f * rhs[r];
        }
        if (cost_row && (*cost_row)[e] != 0) {
            const Rational f = (*cost_row)[e];
            for (std::size_t j = 0; j < ncols; ++j)
                if (T[r][j] != 0) (*cost_row)[j] -= f * T[r][j];
        }
        basic[r] = e;
    }

    void remove_row(std::size_t r)
    {
        T.erase(T.begin() + static_cast<long>(r));
        rhs.erase(rhs.begin() + static_cast<long>(r));
        basic.erase(basic.begin() + static_cast<long>(r));
    }
};

enum class IterResult { optimal, unbounded };

// Bland's rule over columns [0, limit). Returns the entering column on unboundedness.
IterResult run_simplex(Tableau& tab, Vector& d, std::size_t limit, std::size_t& pivots, std::size_t& unbounded_col)
{
    for (;;) {
        std::size_t e = limit;
        for (std::size_t j = 0; j < limit; ++j)
            if (d[j] < 0) { e = j; break; }
        if (e == limit) return IterResult::optimal;
        std::size_t leave = tab.T.size();
        Rational best;
        for (std::size_t r = 0; r < tab.T.size(); ++r) {
            if (tab.T[r][e] <= 0) continue;
            Rational ratio = tab.rhs[r] / tab.T[r][e];
            if (leave == tab.T.size() || ratio < best || (ratio == best && tab.basic[r] < tab.basic[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave == tab.T.size()) {
            unbounded_col = e;
            return IterResult::unbounded;
        }
        tab.pivot(leave, e, &d);
        ++pivots;
    }
}

void check_shapes(const StandardFormLP& lp, bool need_cost)
{
    require(lp.b.size() == lp.A.rows(), ErrorKind::dimension, "LP: b has wrong size");
    if (need_cost) require(lp.c.size() == lp.A.cols(), ErrorKind::dimension, "LP: c has wrong size");
}

Vector solution_from(const Tableau& tab, std::size_t n)
{
    Vector x(n, Rational(0));
    for (std::size_t r = 0; r < tab.T.size(); ++r) x[tab.basic[r]] = tab.rhs[r];
    return x;
}

Basis basis_from(const Tableau& tab)
{
    Basis B{tab.basic};
    std::sort(B.columns.begin(), B.columns.end());
    return B;
}

// Phase 1 with one artificial per row; on success the tableau is restricted to original columns.
std::optional<Tableau> phase_one(const StandardFormLP& lp, std::size_t& pivots)
{
    const std::size_t m = lp.A.rows(), n = lp.A.cols();
    Tableau tab;
    tab.ncols = n + m;
    tab.T.assign(m, Vector(n + m, Rational(0)));
    tab.rhs.resize(m);
    tab.basic.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        const bool flip = lp.b[r] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.T[r][j] = flip ? Rational(-lp.A(r, j)) : lp.A(r, j);
        tab.T[r][n + r] = 1;
        tab.rhs[r] = flip ? Rational(-lp.b[r]) : lp.b[r];
        tab.basic[r] = n + r;
    }
    Vector d(n + m, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < n; ++j) d[j] -= tab.T[r][j];
    std::size_t dummy = 0;
    run_simplex(tab, d, n + m, pivots, dummy);  // bounded below by 0
    Rational infeas = 0;
    for (std::size_t r = 0; r < tab.T.size(); ++r)
        if (tab.basic[r] >= n) infeas += tab.rhs[r];
    if (infeas > 0) return std::nullopt;
    // Drive zero-level artificials out, or drop their rows as redundant.
    for (std::size_t r = 0; r < tab.T.size();) {
        if (tab.basic[r] < n) { ++r; continue; }
        std::size_t e = n;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.T[r][j] != 0) { e = j; break; }
        if (e == n) {
            tab.remove_row(r);
            continue;
        }
        tab.pivot(r, e, nullptr);
        ++pivots;
        ++r;
    }
    for (auto& row : tab.T) row.resize(n);
    tab.ncols = n;
    return tab;
}

std::optional<Tableau> tableau_for(const StandardFormLP& lp, const Basis& B)
{
    const std::size_t n = lp.A.cols();
    auto rows = independent_rows(lp.A);
    if (rows.size() != B.columns.size()) return std::nullopt;
    Matrix Ar = lp.A.select_rows(rows);
    Matrix AB = Ar.select_columns(B.columns);
    if (determinant(AB) == 0) return std::nullopt;
    Matrix rhs_full(rows.size(), n + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < n; ++j) rhs_full(r, j) = Ar(r, j);
        rhs_full(r, n) = lp.b[rows[r]];
    }
    Matrix X = solve_square(AB, rhs_full);
    // Rows not kept must be implied by the kept ones at this basis.
    Tableau tab;
    tab.ncols = n;
    tab.T.assign(rows.size(), Vector(n));
    tab.rhs.resize(rows.size());
    tab.basic = B.columns;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < n; ++j) tab.T[r][j] = X(r, j);
        tab.rhs[r] = X(r, n);
    }
    Vector x = solution_from(tab, n);
    if (lp.A * x != lp.b) return std::nullopt;
    return tab;
}

}  // namespace

std::optional<BasicSolution> find_feasible_basis(const StandardFormLP& lp)
{
    check_shapes(lp, false);
    std::size_t pivots = 0;
    auto tab = phase_one(lp, pivots);
    if (!tab) return std::nullopt;
    BasicSolution s{basis_from(*tab), solution_from(*tab, lp.A.cols()), true};
    return s;
}

Vector reduced_costs(const StandardFormLP& lp, const Basis& B)
{
    check_shapes(lp, true);
    auto rows = independent_rows(lp.A);
    require(rows.size() == B.columns.size(), ErrorKind::precondition, "reduced_costs: basis size differs from rank");
    Matrix Ar = lp.A.select_rows(rows);
    Matrix AB = Ar.select_columns(B.columns);
    require(determinant(AB) != 0, ErrorKind::precondition, "reduced_costs: columns are not a basis");
    Vector cB(B.columns.size());
    for (std::size_t i = 0; i < B.columns.size(); ++i) cB[i] = lp.c[B.columns[i]];
    Vector u = solve_square(AB.transpose(), cB);
    Vector r(lp.A.cols());
    for (std::size_t j = 0; j < lp.A.cols(); ++j) {
        Rational s = lp.c[j];
        for (std::size_t i = 0; i < rows.size(); ++i) s -= u[i] * Ar(i, j);
        r[j] = s;
    }
    for (auto j : B.columns) {
        require(r[j] == 0, ErrorKind::internal, "reduced_costs: nonzero entry on a basic column");
        r[j] = 0;
    }
    return r;
}

LpOutcome solve_lp(const StandardFormLP& lp, const Basis* warm)
{
    check_shapes(lp, true);
    const std::size_t n = lp.A.cols();
    LpOutcome out;
    std::optional<Tableau> tab;
    if (warm) tab = tableau_for(lp, *warm);
    if (tab && std::any_of(tab->rhs.begin(), tab->rhs.end(), [](const Rational& v) { return v < 0; })) tab.reset();
    if (!tab) tab = phase_one(lp, out.pivots);
    if (!tab) {
        out.status = LpStatus::infeasible;
        return out;
    }
    Vector d = lp.c;
    for (std::size_t r = 0; r < tab->T.size(); ++r) {
        const Rational& cb = lp.c[tab->basic[r]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (tab->T[r][j] != 0) d[j] -= cb * tab->T[r][j];
    }
    std::size_t ecol = 0;
    auto res = run_simplex(*tab, d, n, out.pivots, ecol);
    out.solution = BasicSolution{basis_from(*tab), solution_from(*tab, n), true};
    if (res == IterResult::unbounded) {
        out.status = LpStatus::unbounded;
        out.ray.assign(n, Rational(0));
        out.ray[ecol] = 1;
        for (std::size_t r = 0; r < tab->T.size(); ++r) out.ray[tab->basic[r]] = -tab->T[r][ecol];
        return out;
    }
    for (auto j : tab->basic) d[j] = 0;
    out.status = LpStatus::optimal;
    out.reduced_costs = std::move(d);
    return out;
}

BasicSolution optimize(const StandardFormLP& lp, const Basis* warm)
{
    auto out = solve_lp(lp, warm);
    if (out.status == LpStatus::infeasible) fail(ErrorKind::infeasible, "LP is infeasible");
    if (out.status == LpStatus::unbounded) fail(ErrorKind::unbounded, "LP is unbounded");
    return out.solution;
}

Rational objective_value(const StandardFormLP& lp, const Vector& x) { return dot(lp.c, x); }

std::vector<std::size_t> maximal_optimal_face(const StandardFormLP& lp, const Basis& optB)
{
    Vector r = reduced_costs(lp, optB);
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < r.size(); ++j) {
        require(r[j] >= 0, ErrorKind::precondition, "maximal_optimal_face: basis is not optimal");
        if (r[j] == 0) support.push_back(j);
    }
    return support;  // basic columns have r̄ = 0, so they are included
}

std::optional<Vector> ray_embrace(const std::vector<Vector>& C, const Vector& b)
{
    for (const auto& p : C) require(p.size() == b.size(), ErrorKind::dimension, "ray_embrace: dimension mismatch");
    if (C.empty()) {
        if (std::all_of(b.begin(), b.end(), [](const Rational& v) { return v == 0; })) return Vector{};
        return std::nullopt;
    }
    StandardFormLP lp{Matrix::from_columns(C, b.size()), b, {}};
    auto s = find_feasible_basis(lp);
    if (!s) return std::nullopt;
    Vector sum(b.size(), Rational(0));
    for (std::size_t i = 0; i < C.size(); ++i) {
        require(s->x[i] >= 0, ErrorKind::internal, "ray_embrace: negative coefficient");
        sum = sum + s->x[i] * C[i];
    }
    require(sum == b, ErrorKind::internal, "ray_embrace: certificate does not reproduce b");
    return s->x;
}

bool satisfies(const AffineConstraint& con, const Vector& mu)
{
    Rational v = dot(con.a, mu);
    switch (con.sense) {
    case Sense::eq: return v == con.beta;
    case Sense::ge: return v >= con.beta;
    case Sense::le: return v <= con.beta;
    }
    return false;
}

std::optional<Vector> affine_feasible(std::size_t dim, const std::vector<AffineConstraint>& cons)
{
    std::size_t slacks = 0;
    for (const auto& c : cons) {
        require(c.a.size() == dim, ErrorKind::dimension, "affine_feasible: constraint has wrong dimension");
        if (c.sense != Sense::eq) ++slacks;
    }
    if (cons.empty()) return Vector(dim, Rational(0));
    // μ = μ⁺ − μ⁻, one slack per inequality.
    const std::size_t n = 2 * dim + slacks;
    StandardFormLP lp{Matrix(cons.size(), n), Vector(cons.size()), {}};
    std::size_t s = 2 * dim;
    for (std::size_t r = 0; r < cons.size(); ++r) {
        for (std::size_t i = 0; i < dim; ++i) {
            lp.A(r, i) = cons[r].a[i];
            lp.A(r, dim + i) = -cons[r].a[i];
        }
        if (cons[r].sense == Sense::ge) lp.A(r, s++) = -1;
        else if (cons[r].sense == Sense::le) lp.A(r, s++) = 1;
        lp.b[r] = cons[r].beta;
    }
    auto sol = find_feasible_basis(lp);
    if (!sol) return std::nullopt;
    Vector mu(dim);
    for (std::size_t i = 0; i < dim; ++i) mu[i] = sol->x[i] - sol->x[dim + i];
    for (const auto& c : cons) require(satisfies(c, mu), ErrorKind::internal, "affine_feasible: witness violates a constraint");
    return mu;
}

}  // namespace ccp
