#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ccp/instance.hpp"

namespace ccp {

// Block i of the result is q_i · p.
Vector tensor(const Vector& p, const Vector& q);

// q_i = e_i for i < m−1 and q_{m−1} = (−1,…,−1), in Q^(m−1).
Vector sarkaria_q(std::size_t m, std::size_t i);
// P̂_i = { (p;1) ⊗ q_i : p ∈ P_i }
std::vector<PointSet> sarkaria_lift(const std::vector<PointSet>& parts);

// x ∈ conv(P), via the cone of the points (p;1).
std::optional<Vector> convex_coefficients(const PointSet& P, const Vector& x);

using Partition = std::vector<std::vector<std::size_t>>;

struct TverbergCertificate {
    Partition partition;               // indices into the input set
    Vector common_point;
    std::vector<Vector> coefficients;  // per part, aligned with partition
    std::size_t m = 1;
    std::size_t core = 0;              // points used in the lifted instance; the rest join parts with weight 0
    std::string backend;
};

enum class Backend { pls, ppad };

// Block LP over all part coefficients, the shared point eliminated through part 0.
std::optional<TverbergCertificate> find_common_point(const PointSet& P, const Partition& parts);
// Same, but ErrorKind::internal when infeasible.
TverbergCertificate common_intersection_point(const PointSet& P, const Partition& parts);

// Disjoint parts covering every index, each reproducing the common point exactly.
bool check_tverberg(const PointSet& P, const TverbergCertificate& cert);

std::size_t tverberg_parts(std::size_t n, std::size_t d);  // ⌈n/(d+1)⌉

TverbergCertificate solve_tverberg(const PointSet& P, Backend backend = Backend::pls);

struct CenterpointResult {
    Vector point;
    std::size_t depth_bound = 0;  // ⌈n/(d+1)⌉
    TverbergCertificate certificate;
};
CenterpointResult centerpoint(const PointSet& P, Backend backend = Backend::pls);

struct SimplicialDepthResult {
    Vector point;
    Integer bound;  // ⌈m^(d+1) / (d+1)^(d+1)⌉
    TverbergCertificate certificate;
};
Integer simplicial_depth_bound(std::size_t n, std::size_t d);
SimplicialDepthResult simplicial_depth_point(const PointSet& P, Backend backend = Backend::pls);

}  // namespace ccp
