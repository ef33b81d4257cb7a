#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ccp/complex.hpp"
#include "ccp/instance.hpp"

namespace ccp {

enum class Verdict { found, go_left, go_right };

struct Classification {
    Verdict verdict = Verdict::go_right;
    IndexSet support;                    // maximal optimal face at M(μ(t))
    IndexSet basis;                      // the k-split basis when found
    std::vector<std::size_t> counts;     // color-1 count of each vertex examined (1 or 2 entries)
};

// μ(t) = (1−t)e₁ + t·e₂, evaluated at M(μ(t)). Columns of color 0 count as C₁.
Classification classify_midpoint(const ParametricLp& lp, std::size_t k, const Rational& t);

// 2·B + 8 with B the bit bound on breakpoint denominators along the e₁e₂ edge.
std::size_t iteration_cap(const ParametricLp& lp);

struct SplitProbe {
    std::size_t iteration = 0;
    Rational t;
    Classification result;
};

struct TwoColorOptions {
    unsigned c_exponent = 12;
    bool force_pipeline = false;
    std::function<void(const SplitProbe&)> trace;
};

struct SplitResult {
    ColorfulChoice choice;  // color 0 = C1, color 1 = C2, over the original points
    std::size_t iterations = 0;
    std::size_t cap = 0;
    bool pipeline = false;  // the two colors were perturbed before the search
};

// Exactly k points of C1 and d−k of C2 whose cone contains b.
SplitResult find_split(const PointSet& C1, const PointSet& C2, const Vector& b, std::size_t k,
                       const TwoColorOptions& opt = {});

}  // namespace ccp
