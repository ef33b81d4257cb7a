#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ccp/instance.hpp"

namespace ccp {

struct ConeProjection {
    Vector x;                          // nearest point of pos(C) to b
    Rational dist2;                    // ‖b − x‖²
    std::vector<std::size_t> support;  // indices into C
    Vector alpha;                      // x = Σ alpha_k · C[support[k]], alpha ≥ 0
};

// Exact NNLS by subset enumeration with a KKT acceptance test. Requires linearly
// independent candidate supports only; |C| is expected to be small (≤ ~15).
ConeProjection nearest_point_in_cone(const PointSet& C, const Vector& b);

struct PlsState {
    std::vector<std::size_t> choice;  // point index per color
    Rational potential;
};

struct PlsStep {
    std::uint64_t step = 0;
    std::size_t color = 0;
    std::size_t from = 0, to = 0;
    Rational before, after;
};

struct PlsOptions {
    bool best_improvement = false;
    bool parallel = true;
    std::uint64_t budget = 1'000'000;
    std::function<void(const PlsStep&)> trace;
};

Rational potential_of(const CcpInstance& inst, const std::vector<std::size_t>& choice);

// First (or best) strictly improving single-color swap, scanned color-then-index.
std::optional<PlsState> improving_neighbor(const CcpInstance& inst, const PlsState& s, const PlsOptions& opt = {});
std::optional<PlsState> improving_neighbor_serial(const CcpInstance& inst, const PlsState& s, bool best = false);

struct PlsResult {
    ColorfulChoice choice;
    std::vector<Rational> potentials;  // starting potential, then one per step
    std::vector<PlsStep> steps;
};

// Starts from the first point of every color. ErrorKind::audit on a positive local optimum.
PlsResult run_local_search(const CcpInstance& inst, const PlsOptions& opt = {});

}  // namespace ccp
