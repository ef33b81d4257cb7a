#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccp/instance.hpp"

namespace ccp {

// Every colorful choice that ray-embraces b, in lexicographic order of index tuples.
// ErrorKind::precondition for d > 6.
std::vector<ColorfulChoice> enumerate_colorful_solutions(const CcpInstance& inst);
std::vector<ColorfulChoice> enumerate_colorful_solutions_serial(const CcpInstance& inst);

// Minimum number of points in a closed halfspace containing q; d ≤ 2.
std::size_t tukey_depth(const std::vector<Vector>& P, const Vector& q);

// Number of (d+1)-index sets whose simplex contains q (counted with multiplicity).
std::size_t simplicial_depth_count(const std::vector<Vector>& P, const Vector& q);

// Smallest ‖b − Σ α·p‖² over random nonnegative α; an upper bound for the exact distance.
Rational min_distance_bruteforce(const std::vector<Vector>& C, const Vector& b, std::size_t samples,
                                 std::uint64_t seed = 1);

// All partitions of {0..n−1} into exactly m nonempty parts whose hulls meet.
std::vector<std::vector<std::vector<std::size_t>>> tverberg_partitions_bruteforce(const std::vector<Vector>& P,
                                                                                    std::size_t m);

// 0 ∈ conv(P).
bool origin_in_hull(const std::vector<Vector>& P);

}  // namespace ccp
