#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccp/complex.hpp"
#include "ccp/instance.hpp"

namespace ccp {

struct GraphNode {
    SimplexEncoding encoding;
    std::size_t k = 0;
    std::vector<std::size_t> labels;  // label of each chain position, 0-based colors
};

// Builds the node and checks membership in V_k: labels ⊆ [k] and [k−1] ⊆ labels.
GraphNode make_node(const SpernerComplex& cx, SimplexEncoding T);

// λ(σ) = [k]
bool fully_labeled(const GraphNode& n);

GraphNode standard_source(const SpernerComplex& cx);

// The other Σ_k simplex through the facet that omits position i, if any.
std::optional<SimplexEncoding> facet_flip(const SpernerComplex& cx, const SimplexEncoding& T, std::size_t i);
SimplexEncoding lift_simplex(const SpernerComplex& cx, const SimplexEncoding& T);
std::optional<SimplexEncoding> drop_simplex(const SpernerComplex& cx, const SimplexEncoding& T);

enum class EdgeKind { flip, lift, drop };

struct Neighbor {
    GraphNode node;
    EdgeKind kind;
    std::size_t position;  // omitted chain position for flip/drop; k for lift
};

// Throws ErrorKind::audit when the degree disagrees with the path structure.
std::vector<Neighbor> node_neighbors(const SpernerComplex& cx, const GraphNode& node);

// w_i for 0-based label i ≥ 1; coordinates sum to 1.
Vector w_lift_vector(std::size_t d, std::size_t label);

// ±1; ErrorKind::audit on a zero determinant.
int orientation(const SpernerComplex& cx, const GraphNode& node, const Neighbor& nb);
// Same, with the node's relint witnesses (points of Δ) supplied by the caller.
int orientation(std::size_t d, const GraphNode& node, const std::vector<Vector>& witnesses, const Neighbor& nb);

struct TraceEvent {
    std::uint64_t step = 0;
    std::size_t level = 0;
    std::string digest;
    std::vector<std::size_t> labels;
    int sign = 0;  // orientation of the edge taken out of this node (0 at the sink)
};

struct WalkOptions {
    std::uint64_t budget = std::uint64_t(1) << 40;
    std::function<void(const TraceEvent&)> trace;
    std::function<void(const GraphNode&)> visit;  // every node on the path, source to sink
};

struct WalkResult {
    ColorfulChoice choice;  // over the ground instance
    SimplexEncoding sink;
    std::uint64_t steps = 0;
    bool inverted = false;  // source was a sink under dir, so the orientation was flipped
    SpernerComplex::Stats stats;
};

WalkResult run_standard_algorithm(const GroundInstance& ground, const WalkOptions& opt = {});
WalkResult run_standard_algorithm(const SpernerComplex& cx, const WalkOptions& opt = {});

struct PpadSolution {
    ColorfulChoice choice;  // over the original instance
    PerturbResult perturbation;
    WalkResult walk;
};
PpadSolution solve_ppad(const CcpInstance& inst, const PerturbOptions& popt = {}, const WalkOptions& wopt = {});

}  // namespace ccp
