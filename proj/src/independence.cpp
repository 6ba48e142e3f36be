#include "gramops/independence.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "gramops/capacity.hpp"
#include "gramops/errors.hpp"

namespace gramops {

namespace {

/// Search state over single-word vertex masks (n <= 64). Weights are
/// pre-scaled to integers so all bound arithmetic is exact.
struct Search {
    int n;
    std::vector<std::uint64_t> adj;
    std::vector<std::int64_t> weight;
    std::int64_t best = 0;
    std::uint64_t best_set = 0;

    /// Clique-cover bound: partition candidates into cliques greedily, sum the
    /// heaviest vertex of each clique. No independent set can beat this.
    std::int64_t upper_bound(std::uint64_t cand) const {
        std::vector<std::uint64_t> cliques;
        std::vector<std::int64_t> clique_max;
        std::int64_t bound = 0;
        while (cand) {
            const int v = std::countr_zero(cand);
            cand &= cand - 1;
            bool placed = false;
            for (std::size_t c = 0; c < cliques.size(); ++c) {
                if ((adj[v] & cliques[c]) == cliques[c]) {  // adjacent to the whole clique
                    cliques[c] |= 1ULL << v;
                    if (weight[v] > clique_max[c]) {
                        bound += weight[v] - clique_max[c];
                        clique_max[c] = weight[v];
                    }
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                cliques.push_back(1ULL << v);
                clique_max.push_back(weight[v]);
                bound += weight[v];
            }
        }
        return bound;
    }

    void run(std::uint64_t cand, std::uint64_t chosen, std::int64_t value) {
        if (value > best) {
            best = value;
            best_set = chosen;
        }
        if (!cand || value + upper_bound(cand) <= best) return;

        // Branch on the highest-degree candidate, lowest index on ties.
        int pick = -1, pick_deg = -1;
        for (std::uint64_t m = cand; m;) {
            const int v = std::countr_zero(m);
            m &= m - 1;
            const int d = std::popcount(adj[v] & cand);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        const std::uint64_t bit = 1ULL << pick;
        run(cand & ~adj[pick] & ~bit, chosen | bit, value + weight[pick]);
        run(cand & ~bit, chosen, value);
    }
};

IndependenceResult solve(const Graph& g, const std::vector<std::int64_t>& weights,
                         std::int64_t denom) {
    const int n = g.num_vertices();
    if (n > Capacity::independence_vertices)
        throw CapacityError("independence solver limited to " +
                            std::to_string(Capacity::independence_vertices) + " vertices, got " +
                            std::to_string(n));
    Search s;
    s.n = n;
    s.weight = weights;
    s.adj.assign(n, 0);
    for (const auto& [u, v] : g.edge_list()) {
        s.adj[u] |= 1ULL << v;
        s.adj[v] |= 1ULL << u;
    }
    const std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;
    s.run(all, 0, 0);

    IndependenceResult r;
    r.value = Rational(s.best, denom);
    for (std::uint64_t m = s.best_set; m;) {
        r.witness.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return r;
}

}  // namespace

IndependenceResult independence_number(const Graph& g) {
    return solve(g, std::vector<std::int64_t>(g.num_vertices(), 1), 1);
}

IndependenceResult weighted_independence(const WeightedGraph& wg) {
    const WeightedGraph scaled = scale_to_integer(wg);
    std::int64_t denom = 1;
    for (std::size_t i = 0; i < wg.weights.size(); ++i) denom = std::lcm(denom, wg.weights[i].den());
    std::vector<std::int64_t> w;
    w.reserve(scaled.weights.size());
    for (const auto& x : scaled.weights) w.push_back(x.num());
    return solve(scaled.graph, w, denom);
}

}  // namespace gramops
