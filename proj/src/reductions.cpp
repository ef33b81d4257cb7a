#include "ccp/reductions.hpp"

#include <algorithm>

#include "ccp/lp.hpp"
#include "ccp/pls.hpp"
#include "ccp/walk.hpp"

namespace ccp {

namespace {

std::size_t dim_of(const PointSet& P)
{
    require(!P.empty(), ErrorKind::precondition, "point set is empty");
    const std::size_t d = P.front().size();
    require(d >= 1, ErrorKind::dimension, "points must have positive dimension");
    for (const auto& p : P) require(p.size() == d, ErrorKind::dimension, "points of mixed dimension");
    return d;
}

Vector append_one(Vector p)
{
    p.push_back(1);
    return p;
}

}  // namespace

Vector tensor(const Vector& p, const Vector& q)
{
    Vector out;
    out.reserve(p.size() * q.size());
    for (const auto& qi : q)
        for (const auto& x : p) out.push_back(qi * x);
    return out;
}

Vector sarkaria_q(std::size_t m, std::size_t i)
{
    require(m >= 2 && i < m, ErrorKind::precondition, "sarkaria_q: need m ≥ 2 and i < m");
    if (i + 1 < m) return unit_vector(m - 1, i);
    return Vector(m - 1, Rational(-1));
}

std::vector<PointSet> sarkaria_lift(const std::vector<PointSet>& parts)
{
    const std::size_t m = parts.size();
    require(m >= 2, ErrorKind::precondition, "sarkaria_lift: need at least two sets");
    std::optional<std::size_t> d;
    std::vector<PointSet> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vector q = sarkaria_q(m, i);
        for (const auto& p : parts[i]) {
            if (!d) d = p.size();
            require(p.size() == *d, ErrorKind::dimension, "sarkaria_lift: points of mixed dimension");
            out[i].push_back(tensor(append_one(p), q));
        }
    }
    return out;
}

std::optional<Vector> convex_coefficients(const PointSet& P, const Vector& x)
{
    if (P.empty()) return std::nullopt;
    PointSet lifted;
    for (const auto& p : P) lifted.push_back(append_one(p));
    return ray_embrace(lifted, append_one(x));
}

std::optional<TverbergCertificate> find_common_point(const PointSet& P, const Partition& parts)
{
    const std::size_t d = dim_of(P), m = parts.size();
    require(m >= 1, ErrorKind::precondition, "find_common_point: no parts");
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        require(!parts[j].empty(), ErrorKind::precondition, "find_common_point: empty part");
        for (auto i : parts[j]) require(i < P.size(), ErrorKind::precondition, "find_common_point: index out of range");
        offset[j + 1] = offset[j] + parts[j].size();
    }
    // Rows: (m−1)·d coordinate matches against part 0, then m convexity rows.
    const std::size_t rows = (m - 1) * d + m, cols = offset[m];
    StandardFormLP lp{Matrix(rows, cols), Vector(rows, Rational(0)), Vector(cols, Rational(0))};
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t r = 0; r < d; ++r) {
            const std::size_t row = (j - 1) * d + r;
            for (std::size_t a = 0; a < parts[0].size(); ++a) lp.A(row, offset[0] + a) = -P[parts[0][a]][r];
            for (std::size_t a = 0; a < parts[j].size(); ++a) lp.A(row, offset[j] + a) = P[parts[j][a]][r];
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t row = (m - 1) * d + j;
        for (std::size_t a = 0; a < parts[j].size(); ++a) lp.A(row, offset[j] + a) = 1;
        lp.b[row] = 1;
    }
    auto sol = find_feasible_basis(lp);
    if (!sol) return std::nullopt;
    TverbergCertificate cert;
    cert.partition = parts;
    cert.m = m;
    cert.common_point = Vector(d, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
        Vector c(sol->x.begin() + static_cast<long>(offset[j]), sol->x.begin() + static_cast<long>(offset[j + 1]));
        cert.coefficients.push_back(std::move(c));
    }
    for (std::size_t a = 0; a < parts[0].size(); ++a)
        cert.common_point = cert.common_point + cert.coefficients[0][a] * P[parts[0][a]];
    return cert;
}

TverbergCertificate common_intersection_point(const PointSet& P, const Partition& parts)
{
    auto c = find_common_point(P, parts);
    require(c.has_value(), ErrorKind::internal, "common_intersection_point: the parts have no common point");
    require(check_tverberg(P, *c), ErrorKind::internal, "common_intersection_point: certificate check failed");
    return *c;
}

bool check_tverberg(const PointSet& P, const TverbergCertificate& cert)
{
    if (cert.partition.size() != cert.coefficients.size() || cert.partition.empty()) return false;
    std::vector<int> seen(P.size(), 0);
    for (std::size_t j = 0; j < cert.partition.size(); ++j) {
        const auto& part = cert.partition[j];
        const auto& c = cert.coefficients[j];
        if (part.empty() || part.size() != c.size()) return false;
        Vector x(cert.common_point.size(), Rational(0));
        Rational total = 0;
        for (std::size_t a = 0; a < part.size(); ++a) {
            if (part[a] >= P.size() || seen[part[a]]++) return false;
            if (c[a] < 0 || P[part[a]].size() != x.size()) return false;
            x = x + c[a] * P[part[a]];
            total += c[a];
        }
        if (total != 1 || x != cert.common_point) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

std::size_t tverberg_parts(std::size_t n, std::size_t d) { return (n + d) / (d + 1); }

TverbergCertificate solve_tverberg(const PointSet& P, Backend backend)
{
    const std::size_t n = P.size(), d = dim_of(P);
    const std::size_t m = tverberg_parts(n, d);
    const char* name = backend == Backend::pls ? "pls" : "ppad";
    if (m == 1) {
        Partition all(1);
        for (std::size_t i = 0; i < n; ++i) all[0].push_back(i);
        TverbergCertificate c;
        c.partition = all;
        c.common_point = P[0];
        c.coefficients = {unit_vector(n, 0)};
        c.core = n;
        c.backend = name;
        return c;
    }
    // m = ⌈n/(d+1)⌉ gives n ≥ (m−1)(d+1)+1, so the first n₀ points suffice.
    const std::size_t n0 = (m - 1) * (d + 1) + 1;
    std::vector<PointSet> colors(n0);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < m; ++j) colors[i].push_back(tensor(append_one(P[i]), sarkaria_q(m, j)));
    const CcpInstance cone = lift_convex_to_cone(colors);

    ColorfulChoice choice;
    if (backend == Backend::pls) choice = run_local_search(cone).choice;
    else choice = solve_ppad(cone).choice;
    require(is_colorful(cone, choice), ErrorKind::internal, "solve_tverberg: backend returned a non-colorful choice");

    Partition parts(m);
    for (const auto& r : choice.points) parts[r.index].push_back(r.color);
    for (std::size_t j = 0; j < m; ++j)
        require(!parts[j].empty(), ErrorKind::internal, "solve_tverberg: empty part from a certified choice");
    for (std::size_t i = n0; i < n; ++i) parts[(i - n0) % m].push_back(i);
    for (auto& part : parts) std::sort(part.begin(), part.end());

    auto cert = common_intersection_point(P, parts);
    cert.core = n0;
    cert.backend = name;
    return cert;
}

CenterpointResult centerpoint(const PointSet& P, Backend backend)
{
    const std::size_t d = dim_of(P);
    CenterpointResult r;
    r.certificate = solve_tverberg(P, backend);
    r.point = r.certificate.common_point;
    r.depth_bound = tverberg_parts(P.size(), d);
    return r;
}

Integer simplicial_depth_bound(std::size_t n, std::size_t d)
{
    const Integer m = static_cast<unsigned long>(tverberg_parts(n, d));
    Integer num, den, q;
    mpz_pow_ui(num.get_mpz_t(), m.get_mpz_t(), d + 1);
    mpz_ui_pow_ui(den.get_mpz_t(), d + 1, d + 1);
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

SimplicialDepthResult simplicial_depth_point(const PointSet& P, Backend backend)
{
    const std::size_t d = dim_of(P);
    require(P.size() >= d + 1, ErrorKind::precondition, "simplicial_depth_point: need at least d+1 points");
    SimplicialDepthResult r;
    r.certificate = solve_tverberg(P, backend);
    r.point = r.certificate.common_point;
    r.bound = simplicial_depth_bound(P.size(), d);
    return r;
}

}  // namespace ccp
