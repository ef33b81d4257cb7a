#include "ccp/complex.hpp"

#include <algorithm>
#include <sstream>

namespace ccp {

namespace {

Integer pow_int(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

bool contains(const IndexSet& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

bool sorted_unique(const IndexSet& s)
{
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// b = a ∪ {x} for some x ∉ a; returns x.
std::optional<std::size_t> one_added(const IndexSet& a, const IndexSet& b)
{
    if (b.size() != a.size() + 1) return std::nullopt;
    auto extra = set_minus(b, a);
    if (extra.size() != 1 || !std::includes(b.begin(), b.end(), a.begin(), a.end())) return std::nullopt;
    return extra[0];
}

void join(std::ostringstream& os, const IndexSet& s)
{
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
}

std::string entry_key(const IndexSet& B, const IndexSet& S, const CubeFace& g)
{
    std::ostringstream os;
    os << "B";
    join(os, B);
    os << "|S";
    join(os, S);
    os << "|0:";
    join(os, g.I0);
    os << "|1:";
    join(os, g.I1);
    return os.str();
}

AffineConstraint to_constraint(const AffineForm& f, Sense s) { return {f.coef, -f.constant, s}; }

}  // namespace

void check_cube_face(const CubeFace& g, std::size_t d)
{
    require(sorted_unique(g.I0) && sorted_unique(g.I1), ErrorKind::precondition, "cube face index sets must be sorted");
    require(!g.I1.empty(), ErrorKind::precondition, "cube face needs a nonempty I1");
    for (auto i : g.I0) require(i < d && !contains(g.I1, i), ErrorKind::precondition, "cube face: I0 and I1 overlap or out of range");
    for (auto i : g.I1) require(i < d, ErrorKind::precondition, "cube face: index out of range");
}

std::string digest(const SimplexEncoding& T)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < T.entries.size(); ++i) {
        const auto& q = T.entries[i];
        os << (i ? " " : "") << "(S{";
        join(os, q.S);
        os << "},I0{";
        join(os, q.I0);
        os << "},I1{";
        join(os, q.I1);
        os << "})";
    }
    return os.str();
}

Vector project_to_M(const Vector& mu)
{
    for (const auto& x : mu) require(x >= 0, ErrorKind::precondition, "project_to_M: negative coordinate");
    Rational n = norm_inf(mu);
    require(n > 0, ErrorKind::precondition, "project_to_M: zero vector");
    return Rational(1 / n) * mu;
}

Vector project_to_Delta(const Vector& mu)
{
    for (const auto& x : mu) require(x >= 0, ErrorKind::precondition, "project_to_Delta: negative coordinate");
    Rational n = norm1(mu);
    require(n > 0, ErrorKind::precondition, "project_to_Delta: zero vector");
    return Rational(1 / n) * mu;
}

Vector cost_vector(const DerivedConstants& K, std::size_t d, const Vector& mu)
{
    require(mu.size() == d, ErrorKind::dimension, "cost_vector: μ has wrong dimension");
    const Rational w = Rational(K.N * K.N) * Rational(static_cast<long>(d));
    Vector c(d * d);
    Rational e = 1;
    for (std::size_t j = 0; j < d * d; ++j) {
        e *= K.eps;
        c[j] = 1 + (1 - mu[j / d]) * w + e;
    }
    return c;
}

std::size_t label_of_support(std::size_t d, const IndexSet& S)
{
    require(!S.empty(), ErrorKind::precondition, "label_of_support: empty support");
    std::vector<std::size_t> count(d, 0);
    for (auto j : S) {
        require(j < d * d, ErrorKind::precondition, "label_of_support: column out of range");
        ++count[j / d];
    }
    return static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
}

ParametricLp::ParametricLp(std::size_t d, PointSet columns, std::vector<std::size_t> color,
                           std::vector<std::size_t> exponent, Vector b, DerivedConstants K)
    : d_(d), cols_(std::move(columns)), color_(std::move(color)), exponent_(std::move(exponent)), b_(std::move(b)),
      K_(std::move(K))
{
    require(cols_.size() == color_.size() && cols_.size() == exponent_.size(), ErrorKind::dimension,
            "ParametricLp: column metadata size mismatch");
    A_ = Matrix::from_columns(cols_, d_);
    const std::size_t E = *std::max_element(exponent_.begin(), exponent_.end());
    // ε = N^(−c·d), so ε^(−E)·ε^e = N^(c·d·(E−e)).
    const unsigned long step = static_cast<unsigned long>(K_.c_exponent) * d_;
    const Integer scale = pow_int(K_.N, step * E);
    const Integer dN2 = Integer(static_cast<long>(d_)) * K_.N * K_.N;
    beta_ = Rational(scale * dN2);
    alpha_.resize(cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j)
        alpha_[j] = Rational(scale * (1 + dN2) + pow_int(K_.N, step * (E - exponent_[j])));
}

namespace {

std::vector<std::size_t> ground_colors(const GroundInstance& g)
{
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < g.dim; ++i)
        for (std::size_t j = 0; j < g.colors[i].size(); ++j) c.push_back(i);
    return c;
}

std::vector<std::size_t> ground_exponents(const GroundInstance& g)
{
    std::vector<std::size_t> e;
    std::size_t k = 0;
    for (std::size_t i = 0; i < g.dim; ++i)
        for (std::size_t j = 0; j < g.colors[i].size(); ++j) e.push_back(++k);
    return e;
}

PointSet ground_columns(const GroundInstance& g)
{
    PointSet cols;
    for (const auto& c : g.colors)
        for (const auto& p : c) cols.push_back(p);
    return cols;
}

}  // namespace

ParametricLp::ParametricLp(const GroundInstance& g)
    : ParametricLp(g.dim, ground_columns(g), ground_colors(g), ground_exponents(g), g.b, g.constants)
{
}

StandardFormLP ParametricLp::lp_at(const Vector& mu) const
{
    StandardFormLP lp{A_, b_, Vector(cols_.size())};
    for (std::size_t j = 0; j < cols_.size(); ++j) lp.c[j] = alpha_[j] - beta_ * mu[color_[j]];
    return lp;
}

ParametricLp::Face ParametricLp::optimal_face_at(const Vector& mu) const
{
    require(mu.size() == d_, ErrorKind::dimension, "optimal_face_at: μ has wrong dimension");
    for (const auto& x : mu) require(x >= 0 && x <= 1, ErrorKind::precondition, "optimal_face_at: μ outside the unit cube");
    require(norm_inf(mu) == 1, ErrorKind::precondition, "optimal_face_at: μ not in M");
    StandardFormLP lp = lp_at(mu);
    std::optional<Basis> warm;
    {
        std::lock_guard<std::mutex> lock(mu_);
        warm = warm_;
    }
    auto out = solve_lp(lp, warm ? &*warm : nullptr);
    if (out.status == LpStatus::infeasible) fail(ErrorKind::precondition, "optimal_face_at: instance is infeasible");
    require(out.status == LpStatus::optimal, ErrorKind::internal, "optimal_face_at: program unbounded");
    {
        std::lock_guard<std::mutex> lock(mu_);
        warm_ = out.solution.basis;
    }
    Face f;
    f.basis = out.solution.basis;
    for (std::size_t j = 0; j < out.reduced_costs.size(); ++j)
        if (out.reduced_costs[j] == 0) f.support.push_back(j);
    for (auto j : f.support)
        if (mu[color_[j]] == 0)
            fail(ErrorKind::audit, "color exclusion violated: support uses color " + std::to_string(color_[j] + 1) + " at μ_i = 0");
    return f;
}

const std::vector<AffineForm>& ParametricLp::reduced_cost_forms(const Basis& B) const
{
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = forms_.find(B.columns);
        if (it != forms_.end()) return it->second;
    }
    require(B.columns.size() == d_, ErrorKind::precondition, "reduced_cost_forms: basis must have d columns");
    Matrix AB = A_.select_columns(B.columns);
    require(determinant(AB) != 0, ErrorKind::precondition, "reduced_cost_forms: singular basis");
    Matrix T = solve_square(AB, A_);
    std::vector<AffineForm> forms(cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j) {
        AffineForm f{Vector(d_, Rational(0)), alpha_[j]};
        f.coef[color_[j]] -= beta_;
        for (std::size_t r = 0; r < d_; ++r) {
            const Rational& t = T(r, j);
            if (t == 0) continue;
            const std::size_t l = B.columns[r];
            f.constant -= t * alpha_[l];
            f.coef[color_[l]] += t * beta_;
        }
        if (std::binary_search(B.columns.begin(), B.columns.end(), j)) {
            require(f.constant == 0 && std::all_of(f.coef.begin(), f.coef.end(), [](const Rational& x) { return x == 0; }),
                    ErrorKind::internal, "reduced_cost_forms: basic column has a nonzero form");
        }
        forms[j] = std::move(f);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return forms_.emplace(B.columns, std::move(forms)).first->second;
}

bool ParametricLp::is_feasible_basis(const IndexSet& B) const
{
    if (B.size() != d_ || !sorted_unique(B) || B.back() >= cols_.size()) return false;
    Matrix AB = A_.select_columns(B);
    if (determinant(AB) == 0) return false;
    Vector x = solve_square(AB, b_);
    return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0; });
}

SpernerComplex::SpernerComplex(const GroundInstance& g) : g_(g), lp_(g) {}

namespace {
GroundInstance with_exponent(GroundInstance g, unsigned c)
{
    g.constants = derive_constants(g, c);
    return g;
}
}  // namespace

SpernerComplex::SpernerComplex(const GroundInstance& g, unsigned c_exponent)
    : g_(with_exponent(g, c_exponent)), lp_(g_)
{
}

SpernerComplex::System SpernerComplex::region_system(const IndexSet& B, const ChainEntry& q) const
{
    const std::size_t d = g_.dim;
    const auto& forms = lp_.reduced_cost_forms(Basis{B});
    System sys;
    for (std::size_t j = 0; j < lp_.columns(); ++j) {
        if (contains(B, j)) continue;
        if (contains(q.S, j)) sys.eq.push_back({Constraint::reduced_cost, j, forms[j]});
        else sys.ge.push_back({Constraint::reduced_cost, j, forms[j]});
    }
    for (std::size_t i = 0; i < d; ++i) {
        AffineForm zero{unit_vector(d, i), 0};              // μ_i
        AffineForm one{Rational(-1) * unit_vector(d, i), 1};  // 1 − μ_i
        if (contains(q.I0, i)) sys.eq.push_back({Constraint::mu_zero, i, zero});
        else if (contains(q.I1, i)) sys.eq.push_back({Constraint::mu_one, i, one});
        else {
            sys.ge.push_back({Constraint::mu_zero, i, zero});
            sys.ge.push_back({Constraint::mu_one, i, one});
        }
    }
    return sys;
}

std::optional<Vector> SpernerComplex::parameter_region_feasible(const IndexSet& B, const IndexSet& S,
                                                                 const CubeFace& face) const
{
    check_cube_face(face, g_.dim);
    require(std::includes(S.begin(), S.end(), B.begin(), B.end()), ErrorKind::precondition,
            "parameter_region_feasible: B must be contained in S");
    require(lp_.is_feasible_basis(B), ErrorKind::precondition, "parameter_region_feasible: B is not a feasible basis");
    const std::string key = entry_key(B, S, face);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = region_cache_.find(key);
        if (it != region_cache_.end()) return it->second;
    }
    auto sys = region_system(B, ChainEntry{S, face.I0, face.I1});
    std::vector<AffineConstraint> cons;
    for (const auto& c : sys.eq) cons.push_back(to_constraint(c.form, Sense::eq));
    for (const auto& c : sys.ge) cons.push_back(to_constraint(c.form, Sense::ge));
    auto w = affine_feasible(g_.dim, cons);
    std::lock_guard<std::mutex> lock(mu_);
    ++stats_.region_lps;
    region_cache_.emplace(key, w);
    return w;
}

bool SpernerComplex::structurally_valid(const SimplexEncoding& T) const
{
    const std::size_t d = g_.dim, k = T.k();
    if (k < 1 || k > d) return false;
    for (const auto& q : T.entries) {
        if (!sorted_unique(q.S) || !sorted_unique(q.I0) || !sorted_unique(q.I1)) return false;
        if (q.S.empty() || q.S.back() >= lp_.columns()) return false;
        if (q.I1.empty()) return false;
        for (auto i : q.I0)
            if (i >= d || contains(q.I1, i)) return false;
        for (auto i : q.I1)
            if (i >= d) return false;
    }
    const auto& top = T.entries.back();
    IndexSet expect_I0;
    for (std::size_t i = k; i < d; ++i) expect_I0.push_back(i);
    if (top.I0 != expect_I0 || top.I1.size() != 1 || top.S.size() != d) return false;
    for (std::size_t i = 1; i < k; ++i) {
        const auto& lo = T.entries[i - 1];
        const auto& hi = T.entries[i];
        const bool same_faces = lo.I0 == hi.I0 && lo.I1 == hi.I1;
        const bool grow_S = same_faces && one_added(hi.S, lo.S).has_value();
        bool grow_face = false;
        if (lo.S == hi.S) {
            auto a0 = one_added(hi.I0, lo.I0);
            auto a1 = one_added(hi.I1, lo.I1);
            grow_face = (a0 && lo.I1 == hi.I1) || (a1 && lo.I0 == hi.I0);
        }
        if (!grow_S && !grow_face) return false;
    }
    return true;
}

bool SpernerComplex::verify_tuple(const SimplexEncoding& T) const
{
    {
        std::lock_guard<std::mutex> lock(mu_);
        ++stats_.verify_calls;
    }
    if (!structurally_valid(T)) return false;
    const auto& top = T.entries.back();
    if (!lp_.is_feasible_basis(top.S)) return false;
    if (!parameter_region_feasible(top.S, top.S, CubeFace{top.I0, top.I1})) return false;
    // q₀ ⊆ q_i for every i, so a nonempty bottom cell certifies the whole chain.
    return chain_vertex(T).has_value();
}

std::optional<Vector> SpernerComplex::chain_vertex(const SimplexEncoding& T) const
{
    const std::size_t d = g_.dim;
    const IndexSet& B = T.entries.back().S;
    auto sys = region_system(B, T.entries.front());
    if (sys.eq.size() != d) return std::nullopt;
    Matrix M(d, d);
    Vector rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) M(r, c) = sys.eq[r].form.coef[c];
        rhs[r] = -sys.eq[r].form.constant;
    }
    if (determinant(M) == 0) return std::nullopt;
    Vector v = solve_square(M, rhs);
    bool touching = false;
    for (const auto& c : sys.ge) {
        Rational s = c.form.eval(v);
        if (s < 0) return std::nullopt;
        if (s == 0) touching = true;
    }
    if (touching) fail(ErrorKind::audit, "general position violated: cell vertex lies on an extra hyperplane for " + digest(T));
    {
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& x : v) stats_.max_bits = std::max(stats_.max_bits, bit_length(x));
    }
    return v;
}

std::vector<Vector> SpernerComplex::relaxed_edge_endpoints(const SimplexEncoding& T) const
{
    const std::size_t d = g_.dim, k = T.k();
    auto v0 = chain_vertex(T);
    require(v0.has_value(), ErrorKind::precondition, "relaxed_edge_endpoints: tuple has no bottom vertex");
    const IndexSet& B = T.entries.back().S;
    auto sys = region_system(B, T.entries.front());
    std::vector<Vector> out{*v0};
    for (std::size_t i = 1; i < k; ++i) {
        const auto& lo = T.entries[i - 1];
        const auto& hi = T.entries[i];
        // e_i: the constraint tight on q_{i−1} but not on q_i.
        Constraint::Kind kind;
        std::size_t index;
        if (auto a = one_added(hi.S, lo.S)) kind = Constraint::reduced_cost, index = *a;
        else if (auto z = one_added(hi.I0, lo.I0)) kind = Constraint::mu_zero, index = *z;
        else if (auto o = one_added(hi.I1, lo.I1)) kind = Constraint::mu_one, index = *o;
        else fail(ErrorKind::precondition, "relaxed_edge_endpoints: malformed chain");
        std::vector<Constraint> eq;
        std::optional<Constraint> relaxed;
        for (const auto& c : sys.eq) {
            if (c.kind == kind && c.index == index) relaxed = c;
            else eq.push_back(c);
        }
        require(relaxed.has_value() && eq.size() + 1 == d, ErrorKind::internal, "relaxed_edge_endpoints: e_i not found");
        Matrix M(d - 1, d);
        for (std::size_t r = 0; r + 1 < d; ++r)
            for (std::size_t c = 0; c < d; ++c) M(r, c) = eq[r].form.coef[c];
        Vector u = kernel_vector(M);
        Rational slope = dot(relaxed->form.coef, u);
        if (slope == 0) fail(ErrorKind::audit, "general position violated: relaxed edge is parallel to its constraint");
        if (slope < 0) u = Rational(-1) * u;
        std::vector<Constraint> ge = sys.ge;
        ge.push_back(*relaxed);
        if (kind != Constraint::reduced_cost) {
            // The cube coordinate regains its opposite bound.
            AffineForm other = kind == Constraint::mu_zero ? AffineForm{Rational(-1) * unit_vector(d, index), 1}
                                                           : AffineForm{unit_vector(d, index), 0};
            ge.push_back({kind == Constraint::mu_zero ? Constraint::mu_one : Constraint::mu_zero, index, other});
        }
        std::optional<Rational> tmax;
        for (const auto& c : ge) {
            Rational s = dot(c.form.coef, u);
            if (s >= 0) continue;
            Rational t = c.form.eval(*v0) / -s;
            if (!tmax || t < *tmax) tmax = t;
        }
        require(tmax.has_value(), ErrorKind::internal, "relaxed_edge_endpoints: unbounded edge inside the cube");
        if (*tmax <= 0) fail(ErrorKind::audit, "general position violated: degenerate relaxed edge");
        out.push_back(*v0 + *tmax * u);
    }
    return out;
}

std::vector<Vector> SpernerComplex::relint_witnesses_in_M(const SimplexEncoding& T) const
{
    auto ends = relaxed_edge_endpoints(T);
    std::vector<Vector> out;
    Vector sum(g_.dim, Rational(0));
    for (std::size_t i = 0; i < ends.size(); ++i) {
        sum = sum + ends[i];
        out.push_back(Rational(1, static_cast<long>(i + 1)) * sum);
    }
    return out;
}

std::vector<Vector> SpernerComplex::relint_witnesses(const SimplexEncoding& T) const
{
    auto pts = relint_witnesses_in_M(T);
    for (auto& p : pts) p = project_to_Delta(p);
    return pts;
}

std::vector<std::size_t> SpernerComplex::labels(const SimplexEncoding& T) const
{
    std::vector<std::size_t> out;
    for (const auto& q : T.entries) out.push_back(label_of_support(g_.dim, q.S));
    return out;
}

SpernerComplex::Stats SpernerComplex::stats() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return stats_;
}

}  // namespace ccp
