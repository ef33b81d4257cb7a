#include <doctest.h>

#include "ccp/oracle.hpp"
#include "support.hpp"

using namespace ccp;

namespace {

Vector V(std::initializer_list<Rational> xs) { return Vector(xs); }

}  // namespace

TEST_CASE("E1 has exactly two colorful solutions")
{
    auto all = enumerate_colorful_solutions(testing::e1());
    REQUIRE(all.size() == 2);
    CHECK(all[0].points == std::vector<PointRef>{{0, 0}, {1, 1}});
    CHECK(all[1].points == std::vector<PointRef>{{0, 1}, {1, 0}});
    for (const auto& c : all) CHECK(testing::reproduces(testing::e1(), c));
    CHECK(enumerate_colorful_solutions_serial(testing::e1()).size() == 2);
}

TEST_CASE("enumeration refuses large dimensions")
{
    CcpInstance big;
    big.dim = 7;
    big.b = Vector(7, Rational(1));
    for (std::size_t i = 0; i < 7; ++i) big.colors.push_back({Vector(7, Rational(1))});
    CHECK_THROWS_AS(enumerate_colorful_solutions(big), Error);
}

TEST_CASE("parallel enumeration matches the serial one")
{
    std::mt19937_64 rng(testing::seed(91));
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = testing::random_valid_instance(rng, 2 + trial % 2, 3, -3, 3);
        auto a = enumerate_colorful_solutions(inst), b = enumerate_colorful_solutions_serial(inst);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].points == b[k].points);
            CHECK(testing::reproduces(inst, a[k]));
        }
    }
}

TEST_CASE("Tukey depth examples")
{
    std::vector<Vector> line{V({0}), V({1}), V({2})};
    CHECK(tukey_depth(line, V({1})) == 2);
    CHECK(tukey_depth(line, V({0})) == 1);
    CHECK(tukey_depth(line, V({5})) == 0);

    std::vector<Vector> square{V({0, 0}), V({2, 0}), V({0, 2}), V({2, 2})};
    CHECK(tukey_depth(square, V({1, 1})) == 2);
    CHECK(tukey_depth(square, V({0, 0})) == 1);
    CHECK(tukey_depth(square, V({3, 3})) == 0);
    CHECK_THROWS_AS(tukey_depth({V({0, 0, 0})}, V({0, 0, 0})), Error);
}

TEST_CASE("simplicial depth examples")
{
    std::vector<Vector> tri{V({0, 0}), V({4, 0}), V({0, 4})};
    CHECK(simplicial_depth_count(tri, V({1, 1})) == 1);
    CHECK(simplicial_depth_count(tri, V({5, 5})) == 0);
    std::vector<Vector> square{V({0, 0}), V({2, 0}), V({0, 2}), V({2, 2})};
    // the center lies on both diagonals, hence in all four triangles
    CHECK(simplicial_depth_count(square, V({1, 1})) == 4);
    CHECK(simplicial_depth_count(square, V({Rational(1, 2), Rational(1, 4)})) == 2);
}

TEST_CASE("sampled distance bounds")
{
    // b already in the cone
    CHECK(min_distance_bruteforce({V({1, 0}), V({0, 1})}, V({0, 0}), 10) == 0);
    Rational ub = min_distance_bruteforce({V({2, 1})}, V({1, 1}), 2000);
    CHECK(ub >= Rational(1, 5));
    CHECK(ub < Rational(1, 4));
}

TEST_CASE("brute-force Tverberg partitions")
{
    std::vector<Vector> line{V({0}), V({1}), V({2})};
    auto parts = tverberg_partitions_bruteforce(line, 2);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});

    // convex position in the plane: only the two diagonals cross
    std::vector<Vector> quad{V({0, 0}), V({2, 0}), V({2, 2}), V({0, 2})};
    parts = tverberg_partitions_bruteforce(quad, 2);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
    CHECK(tverberg_partitions_bruteforce(quad, 3).empty());
}

TEST_CASE("origin in hull")
{
    CHECK(origin_in_hull({V({-1, 0}), V({1, 0})}));
    CHECK_FALSE(origin_in_hull({V({1, 0}), V({0, 1})}));
    CHECK_FALSE(origin_in_hull({}));
    CHECK(origin_in_hull({V({0, 0})}));
}
