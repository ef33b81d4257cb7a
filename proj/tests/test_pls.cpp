#include <doctest.h>

#include "ccp/oracle.hpp"
#include "ccp/pls.hpp"
#include "support.hpp"

using namespace ccp;

namespace {

Vector V(std::initializer_list<Rational> xs) { return Vector(xs); }

void check_kkt(const PointSet& C, const Vector& b, const ConeProjection& p)
{
    Vector sum(b.size(), Rational(0));
    REQUIRE(p.alpha.size() == p.support.size());
    for (std::size_t k = 0; k < p.support.size(); ++k) {
        CHECK(p.alpha[k] >= 0);
        sum = sum + p.alpha[k] * C[p.support[k]];
    }
    CHECK(sum == p.x);
    const Vector r = b - p.x;
    CHECK(dot(r, r) == p.dist2);
    CHECK(dot(r, p.x) == 0);
    for (const auto& c : C) CHECK(dot(r, c) <= 0);
}

}  // namespace

TEST_CASE("nearest point examples")
{
    auto p = nearest_point_in_cone({V({2, 1})}, V({1, 1}));
    CHECK(p.x == V({Rational(6, 5), Rational(3, 5)}));
    CHECK(p.dist2 == Rational(1, 5));

    p = nearest_point_in_cone({V({-1, 0})}, V({1, 0}));
    CHECK(p.x == V({0, 0}));
    CHECK(p.dist2 == 1);
    CHECK(p.support.empty());

    p = nearest_point_in_cone({V({1, 0}), V({0, 1})}, V({1, 1}));
    CHECK(p.dist2 == 0);
    CHECK(p.alpha == V({1, 1}));

    p = nearest_point_in_cone({V({1, 0}), V({2, 1})}, V({1, 1}));
    CHECK(p.dist2 == Rational(1, 5));
}

TEST_CASE("nearest point satisfies the optimality conditions")
{
    std::mt19937_64 rng(testing::seed(61));
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + trial % 3, n = 1 + testing::uniform(rng, 0, 4);
        PointSet C;
        for (std::size_t j = 0; j < n; ++j) C.push_back(testing::random_int_vector(rng, d, -4, 4));
        const Vector b = testing::random_rational_vector(rng, d, -3, 3, 4);
        auto p = nearest_point_in_cone(C, b);
        check_kkt(C, b, p);
        if (trial % 20 == 0) CHECK(p.dist2 <= min_distance_bruteforce(C, b, 400, trial));
    }
}

TEST_CASE("potential examples")
{
    auto e = testing::e1();
    CHECK(potential_of(e, {0, 0}) == Rational(1, 5));
    CHECK(potential_of(e, {1, 0}) == 0);
    CHECK(potential_of(e, {0, 1}) == 0);
}

TEST_CASE("local search on E1")
{
    auto r = run_local_search(testing::e1());
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].color == 0);
    CHECK(r.steps[0].from == 0);
    CHECK(r.steps[0].to == 1);
    CHECK(r.potentials == std::vector<Rational>{Rational(1, 5), 0});
    CHECK(testing::reproduces(testing::e1(), r.choice));
    CHECK(r.choice.points == std::vector<PointRef>{{0, 1}, {1, 0}});

    PlsOptions best;
    best.best_improvement = true;
    auto b = run_local_search(testing::e1(), best);
    CHECK(b.potentials.back() == 0);
    CHECK(testing::reproduces(testing::e1(), b.choice));
}

TEST_CASE("local search needs no steps from a solution")
{
    CcpInstance inst{2, {{V({1, 0}), V({5, 5})}, {V({0, 1}), V({3, 1})}}, V({1, 1})};
    auto r = run_local_search(inst);
    CHECK(r.steps.empty());
    CHECK(r.potentials == std::vector<Rational>{0});
    CHECK(r.choice.coefficients == V({1, 1}));
}

TEST_CASE("local search budget")
{
    PlsOptions o;
    o.budget = 0;
    try {
        run_local_search(testing::e1(), o);
        FAIL("expected a budget error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget);
    }
}

TEST_CASE("local search on random general instances")
{
    std::mt19937_64 rng(testing::seed(62));
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + trial % 4;
        auto inst = testing::random_general_instance(rng, d, -20, 20);
        std::vector<PlsStep> seen;
        PlsOptions o;
        o.trace = [&](const PlsStep& s) { seen.push_back(s); };
        auto r = run_local_search(inst, o);
        CHECK(testing::reproduces(inst, r.choice));
        CHECK(testing::one_per_color(inst, r.choice));
        CHECK(r.potentials.back() == 0);
        CHECK(seen.size() == r.steps.size());
        for (std::size_t i = 1; i < r.potentials.size(); ++i) CHECK(r.potentials[i] < r.potentials[i - 1]);
        if (d <= 4) {
            bool listed = false;
            for (const auto& s : enumerate_colorful_solutions(inst))
                listed |= testing::sorted_refs(s.points) == testing::sorted_refs(r.choice.points);
            CHECK(listed);
        }
    }
}

TEST_CASE("parallel neighbor scan matches the serial reference")
{
    std::mt19937_64 rng(testing::seed(63));
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + trial % 3;
        auto inst = testing::random_valid_instance(rng, d, d + 1, -4, 4);
        PlsState s;
        for (std::size_t i = 0; i < d; ++i) s.choice.push_back(static_cast<std::size_t>(testing::uniform(rng, 0, d)));
        s.potential = potential_of(inst, s.choice);
        for (bool best : {false, true}) {
            PlsOptions o;
            o.best_improvement = best;
            auto par = improving_neighbor(inst, s, o);
            auto ser = improving_neighbor_serial(inst, s, best);
            REQUIRE(par.has_value() == ser.has_value());
            if (par) {
                CHECK(par->choice == ser->choice);
                CHECK(par->potential == ser->potential);
                CHECK(par->potential < s.potential);
            } else {
                CHECK(s.potential == 0);
            }
        }
    }
}
