#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gramops/rational.hpp"

namespace gramops {

/// Undirected simple graph with per-vertex adjacency bit sets.
/// Symmetric, loop-free by construction; violations throw ValidationError.
class Graph {
public:
    Graph() = default;
    explicit Graph(int num_vertices);

    static Graph from_edges(int num_vertices, const std::vector<std::pair<int, int>>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const;
    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);

    /// Neighbors of u as packed 64-bit words, bit v set iff (u,v) is an edge.
    const std::vector<std::uint64_t>& row(int u) const { return adj_[u]; }
    int degree(int u) const;
    std::vector<std::pair<int, int>> edge_list() const;  // u < v, lexicographic

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<std::vector<std::uint64_t>> adj_;
};

/// Graph plus strictly positive per-vertex rational weights.
struct WeightedGraph {
    Graph graph;
    std::vector<Rational> weights;

    WeightedGraph() = default;
    WeightedGraph(Graph g, std::vector<Rational> w);
};

enum class GraphFormat { json, dimacs };

/// Reads a graph in the named format. JSON: {"n": int, "edges": [[u,v],...]}
/// with 0-indexed u < v. DIMACS: "p edge n m" then "e u v" lines, 1-indexed.
Graph parse_graph(std::istream& text, GraphFormat format);
Graph parse_graph(const std::string& text, GraphFormat format);

/// Weighted JSON adds "weights": [number or "p/q" string, ...].
WeightedGraph parse_weighted_graph(const std::string& text);

std::string graph_to_json(const Graph& g);

Graph complement(const Graph& g);
bool is_triangle_free(const Graph& g);

/// Random maximal triangle-free graph: starting from the empty graph, adds a
/// uniformly random edge that closes no triangle until no such edge remains.
/// Deterministic function of (n, seed).
Graph triangle_free_process(int n, std::uint64_t seed);

/// Replaces vertex a of weight m_a by m_a pairwise non-adjacent copies, each
/// inheriting a's adjacency. Requires integer weights >= 1.
Graph blow_up(const WeightedGraph& wg);

/// Multiplies all weights by the least common denominator, making them integral.
WeightedGraph scale_to_integer(const WeightedGraph& wg);

/// The 12-vertex graph whose complement is triangle-free with 26 edges,
/// used throughout the test corpus and by `verify paper-example`.
Graph paper_example_graph();

}  // namespace gramops
