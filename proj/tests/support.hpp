#pragma once

// Generators and brute-force references shared by the test binaries. Nothing here
// calls into the simplex code; determinants are Laplace expansions.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccp/instance.hpp"
#include "ccp/lp.hpp"
#include "ccp/parallel.hpp"

namespace testing {

using namespace ccp;

inline std::uint64_t seed(std::uint64_t fallback)
{
    if (const char* s = std::getenv("CCP_SEED")) return std::strtoull(s, nullptr, 10) ^ fallback;
    return fallback;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Vector random_int_vector(std::mt19937_64& rng, std::size_t d, long lo, long hi)
{
    Vector v;
    for (std::size_t i = 0; i < d; ++i) v.push_back(Rational(uniform(rng, lo, hi)));
    return v;
}

inline Vector random_rational_vector(std::mt19937_64& rng, std::size_t d, long lo, long hi, long maxden)
{
    Vector v;
    for (std::size_t i = 0; i < d; ++i) {
        Rational q(Integer(uniform(rng, lo * maxden, hi * maxden)), Integer(uniform(rng, 1, maxden)));
        q.canonicalize();
        v.push_back(q);
    }
    return v;
}

inline bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Rational laplace_det(const Matrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Rational det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        Matrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t cc = 0, k = 0; cc < n; ++cc)
                if (cc != c) minor(r - 1, k++) = m(r, cc);
        const Rational term = m(0, c) * laplace_det(minor);
        det += (c % 2 == 0) ? term : Rational(-term);
    }
    return det;
}

// Cramer's rule on Laplace determinants; none when singular.
inline std::optional<Vector> cramer(const Matrix& m, const Vector& rhs)
{
    const Rational det = laplace_det(m);
    if (det == 0) return std::nullopt;
    Vector x;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Matrix mc = m;
        for (std::size_t r = 0; r < m.rows(); ++r) mc(r, c) = rhs[r];
        x.push_back(laplace_det(mc) / det);
    }
    return x;
}

inline std::size_t laplace_rank(const Matrix& m)
{
    for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
        bool found = false;
        for_each_combination(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
            for_each_combination(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
                Matrix s(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) s(i, j) = m(rows[i], cols[j]);
                found = laplace_det(s) != 0;
                return !found;
            });
            return !found;
        });
        if (found) return k;
    }
    return 0;
}

struct EnumeratedLp {
    bool feasible = false;
    Rational best;            // minimum over feasible bases
    std::vector<Vector> xs;   // every basic feasible solution
};

// All basic feasible solutions of {Ax = b, x ≥ 0}, A with full row rank.
inline EnumeratedLp enumerate_bases(const StandardFormLP& lp)
{
    EnumeratedLp out;
    const std::size_t d = lp.A.rows(), n = lp.A.cols();
    for_each_combination(n, d, [&](const std::vector<std::size_t>& B) {
        auto xb = cramer(lp.A.select_columns(B), lp.b);
        if (!xb) return true;
        for (const auto& v : *xb)
            if (v < 0) return true;
        Vector x(n, Rational(0));
        for (std::size_t i = 0; i < d; ++i) x[B[i]] = (*xb)[i];
        Rational val = 0;
        for (std::size_t j = 0; j < n; ++j) val += lp.c[j] * x[j];
        if (!out.feasible || val < out.best) out.best = val;
        out.feasible = true;
        out.xs.push_back(x);
        return true;
    });
    return out;
}

// Σ α_k p_k = b and α ≥ 0, recomputed by hand.
inline bool reproduces(const CcpInstance& inst, const ColorfulChoice& c)
{
    if (c.points.size() != c.coefficients.size()) return false;
    Vector sum(inst.dim, Rational(0));
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        if (c.coefficients[k] < 0) return false;
        const auto& p = inst.colors.at(c.points[k].color).at(c.points[k].index);
        for (std::size_t i = 0; i < inst.dim; ++i) sum[i] += c.coefficients[k] * p[i];
    }
    return sum == inst.b;
}

inline bool one_per_color(const CcpInstance& inst, const ColorfulChoice& c)
{
    if (c.points.size() != inst.colors.size()) return false;
    std::vector<int> seen(inst.colors.size(), 0);
    for (const auto& r : c.points)
        if (r.color >= seen.size() || seen[r.color]++) return false;
    return true;
}

inline std::vector<PointRef> sorted_refs(std::vector<PointRef> r)
{
    std::sort(r.begin(), r.end());
    return r;
}

// Integer points in [lo, hi]^d, |C_i| = size, each color embracing b.
inline CcpInstance random_valid_instance(std::mt19937_64& rng, std::size_t d, std::size_t size, long lo, long hi)
{
    for (;;) {
        CcpInstance inst;
        inst.dim = d;
        do inst.b = random_int_vector(rng, d, lo, hi);
        while (is_zero(inst.b));
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i) {
            PointSet C;
            for (int tries = 0; tries < 200; ++tries) {
                C.clear();
                for (std::size_t j = 0; j < size; ++j) C.push_back(random_int_vector(rng, d, lo, hi));
                if (ray_embrace(C, inst.b)) break;
                C.clear();
            }
            if (C.empty()) ok = false;
            inst.colors.push_back(C);
        }
        if (ok) return inst;
    }
}

// d integer points whose cone contains b: the last is K·b minus a positive
// combination of the others.
inline PointSet embracing_color(std::mt19937_64& rng, const Vector& b, long lo, long hi)
{
    const std::size_t d = b.size();
    PointSet C;
    Vector last = Rational(uniform(rng, 1, 3)) * b;
    for (std::size_t j = 0; j + 1 < d; ++j) {
        C.push_back(random_int_vector(rng, d, lo, hi));
        last = last - Rational(uniform(rng, 1, 2)) * C.back();
    }
    C.push_back(last);
    return C;
}

// Random rational instance whose colors all embrace b; sizes vary between 1 and d+1.
inline CcpInstance random_rational_instance(std::mt19937_64& rng, std::size_t d)
{
    for (;;) {
        CcpInstance inst;
        inst.dim = d;
        do inst.b = random_rational_vector(rng, d, -2, 2, 3);
        while (is_zero(inst.b));
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i) {
            PointSet C;
            for (int tries = 0; tries < 100 && C.empty(); ++tries) {
                const std::size_t size = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(d) + 1));
                for (std::size_t j = 0; j < size; ++j) C.push_back(random_rational_vector(rng, d, -2, 2, 4));
                if (!ray_embrace(C, inst.b)) C.clear();
            }
            ok = !C.empty();
            inst.colors.push_back(C);
        }
        if (ok) return inst;
    }
}

// Every color embraces b by construction; no general-position check.
inline CcpInstance random_embracing_instance(std::mt19937_64& rng, std::size_t d, long lo, long hi)
{
    CcpInstance inst;
    inst.dim = d;
    do inst.b = random_int_vector(rng, d, lo, hi);
    while (is_zero(inst.b));
    for (std::size_t i = 0; i < d; ++i) inst.colors.push_back(embracing_color(rng, inst.b, lo, hi));
    return inst;
}

// Integer instance already satisfying P1 and P2.
inline CcpInstance random_general_instance(std::mt19937_64& rng, std::size_t d, long lo, long hi)
{
    for (;;) {
        CcpInstance inst = random_embracing_instance(rng, d, lo, hi);
        if (satisfies_P1(inst) && !verify_P2(inst)) return inst;
    }
}

// Two embracing colors with no d−1 of their 2d points spanning b.
inline CcpInstance random_general_pair(std::mt19937_64& rng, std::size_t d, long lo, long hi)
{
    for (;;) {
        CcpInstance inst;
        inst.dim = d;
        do inst.b = random_int_vector(rng, d, lo, hi);
        while (is_zero(inst.b));
        for (int i = 0; i < 2; ++i) inst.colors.push_back(embracing_color(rng, inst.b, lo, hi));
        if (!verify_P2(inst)) return inst;
    }
}

inline CcpInstance e1()
{
    return {2,
            {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, {{Rational(2), Rational(1)}, {Rational(1), Rational(2)}}},
            {Rational(1), Rational(1)}};
}

}  // namespace testing
