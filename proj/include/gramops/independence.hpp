#pragma once

#include <vector>

#include "gramops/graph.hpp"
#include "gramops/rational.hpp"

namespace gramops {

struct IndependenceResult {
    Rational value;            // maximum (weighted) independent-set value
    std::vector<int> witness;  // one optimal independent set, sorted
};

/// Exact maximum independent set, branch-and-bound with a greedy-coloring
/// upper bound. Graphs up to 64 vertices.
IndependenceResult independence_number(const Graph& g);

/// Exact maximum-weight independent set.
IndependenceResult weighted_independence(const WeightedGraph& wg);

}  // namespace gramops
