#include "gramops/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gramops/errors.hpp"
#include "gramops/rng.hpp"

namespace gramops {

namespace {
constexpr int kWordBits = 64;
inline int word_count(int n) { return (n + kWordBits - 1) / kWordBits; }
}  // namespace

Graph::Graph(int num_vertices) : n_(num_vertices) {
    if (num_vertices < 0) throw ValidationError("negative vertex count");
    adj_.assign(n_, std::vector<std::uint64_t>(word_count(n_), 0));
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw ValidationError("vertex " + std::to_string(v) + " out of range [0," +
                              std::to_string(n_) + ")");
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[u][v / kWordBits] >> (v % kWordBits)) & 1ULL;
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    adj_[u][v / kWordBits] |= 1ULL << (v % kWordBits);
    adj_[v][u / kWordBits] |= 1ULL << (u % kWordBits);
}

Graph Graph::from_edges(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
    Graph g(num_vertices);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

int Graph::degree(int u) const {
    check_vertex(u);
    int d = 0;
    for (std::uint64_t w : adj_[u]) d += std::popcount(w);
    return d;
}

int Graph::num_edges() const {
    int total = 0;
    for (int u = 0; u < n_; ++u) total += degree(u);
    return total / 2;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) edges.emplace_back(u, v);
    return edges;
}

WeightedGraph::WeightedGraph(Graph g, std::vector<Rational> w)
    : graph(std::move(g)), weights(std::move(w)) {
    if (static_cast<int>(weights.size()) != graph.num_vertices())
        throw ValidationError("weight count " + std::to_string(weights.size()) +
                              " != vertex count " + std::to_string(graph.num_vertices()));
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (!(Rational(0) < weights[i]))
            throw ValidationError("weight of vertex " + std::to_string(i) + " not positive");
}

namespace {

Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError("graph JSON must be an object with fields 'n' and 'edges'");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 0)
        throw ParseError("field 'n' must be a nonnegative integer");
    const int n = j["n"].get<int>();
    Graph g(n);
    if (!j["edges"].is_array()) throw ParseError("field 'edges' must be an array");
    std::size_t k = 0;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError("edge #" + std::to_string(k) + " must be a pair of integers");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
        ++k;
    }
    return g;
}

Graph parse_dimacs(std::istream& in) {
    std::string line;
    int n = -1, declared_edges = -1, line_no = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        const auto fail = [&](const std::string& why) {
            throw ParseError("DIMACS line " + std::to_string(line_no) + ": " + why);
        };
        char kind;
        ls >> kind;
        if (kind == 'p') {
            std::string tag;
            if (!(ls >> tag >> n >> declared_edges) || tag != "edge" || n < 0)
                fail("expected 'p edge <n> <m>'");
            g = Graph(n);
        } else if (kind == 'e') {
            if (n < 0) fail("'e' line before 'p' header");
            int u, v;
            if (!(ls >> u >> v)) fail("expected 'e <u> <v>'");
            if (u < 1 || u > n || v < 1 || v > n) fail("vertex out of range (DIMACS is 1-indexed)");
            if (u == v) fail("self-loop");
            g.add_edge(u - 1, v - 1);
        } else {
            fail(std::string("unknown record '") + kind + "'");
        }
    }
    if (n < 0) throw ParseError("DIMACS input has no 'p edge' header");
    return g;
}

}  // namespace

Graph parse_graph(std::istream& text, GraphFormat format) {
    if (format == GraphFormat::dimacs) return parse_dimacs(text);
    nlohmann::json j;
    try {
        text >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    return graph_from_json(j);
}

Graph parse_graph(const std::string& text, GraphFormat format) {
    std::istringstream in(text);
    return parse_graph(in, format);
}

WeightedGraph parse_weighted_graph(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    Graph g = graph_from_json(j);
    std::vector<Rational> weights(g.num_vertices(), Rational(1));
    if (j.contains("weights")) {
        if (!j["weights"].is_array() ||
            static_cast<int>(j["weights"].size()) != g.num_vertices())
            throw ParseError("field 'weights' must list one weight per vertex");
        weights.clear();
        for (const auto& w : j["weights"]) {
            if (w.is_number_integer())
                weights.emplace_back(w.get<std::int64_t>());
            else if (w.is_string())
                weights.push_back(Rational::parse(w.get<std::string>()));
            else
                throw ParseError("weights must be integers or 'p/q' strings");
        }
    }
    return WeightedGraph(std::move(g), std::move(weights));
}

std::string graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.num_vertices();
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edge_list()) j["edges"].push_back({u, v});
    return j.dump();
}

Graph complement(const Graph& g) {
    const int n = g.num_vertices();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) c.add_edge(u, v);
    return c;
}

bool is_triangle_free(const Graph& g) {
    const int n = g.num_vertices();
    for (const auto& [u, v] : g.edge_list()) {
        const auto& ru = g.row(u);
        const auto& rv = g.row(v);
        for (std::size_t w = 0; w < ru.size(); ++w)
            if (ru[w] & rv[w]) return false;
    }
    return true;
}

Graph triangle_free_process(int n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("triangle_free_process needs n >= 1");
    Graph g(n);
    Rng rng(seed);
    std::vector<std::pair<int, int>> candidates;
    for (;;) {
        candidates.clear();
        // Absent edges whose endpoints share no neighbor, in lexicographic order.
        for (int u = 0; u < n; ++u) {
            const auto& ru = g.row(u);
            for (int v = u + 1; v < n; ++v) {
                if (g.has_edge(u, v)) continue;
                const auto& rv = g.row(v);
                bool closes = false;
                for (std::size_t w = 0; w < ru.size(); ++w)
                    if (ru[w] & rv[w]) {
                        closes = true;
                        break;
                    }
                if (!closes) candidates.emplace_back(u, v);
            }
        }
        if (candidates.empty()) return g;
        const auto& [u, v] = candidates[rng.next_below(candidates.size())];
        g.add_edge(u, v);
    }
}

Graph blow_up(const WeightedGraph& wg) {
    std::int64_t total = 0;
    for (const auto& w : wg.weights) {
        if (!w.is_integer())
            throw ValidationError("blow_up requires integer weights, got " + w.str());
        total += w.num();
    }
    const int n = wg.graph.num_vertices();
    Graph out(static_cast<int>(total));
    std::vector<int> offset(n + 1, 0);
    for (int a = 0; a < n; ++a) offset[a + 1] = offset[a] + static_cast<int>(wg.weights[a].num());
    for (const auto& [a, b] : wg.graph.edge_list())
        for (int i = offset[a]; i < offset[a + 1]; ++i)
            for (int j = offset[b]; j < offset[b + 1]; ++j) out.add_edge(i, j);
    return out;
}

WeightedGraph scale_to_integer(const WeightedGraph& wg) {
    std::int64_t lcm = 1;
    for (const auto& w : wg.weights) {
        lcm = std::lcm(lcm, w.den());
        if (lcm <= 0) throw ValidationError("weight denominators overflow in scale_to_integer");
    }
    std::vector<Rational> scaled;
    scaled.reserve(wg.weights.size());
    for (const auto& w : wg.weights) scaled.push_back(w * Rational(lcm));
    return WeightedGraph(wg.graph, std::move(scaled));
}

Graph paper_example_graph() {
    // Complement adjacency, 12 vertices / 26 edges, 0-indexed.
    static const std::vector<std::pair<int, int>> complement_edges = {
        {0, 1}, {0, 3}, {0, 6}, {0, 7},  {1, 2},  {1, 8},  {1, 10},  {2, 3},   {2, 5},
        {2, 7}, {3, 4}, {3, 9}, {3, 11}, {4, 5},  {4, 7},  {4, 10},  {5, 6},   {5, 9},
        {5, 11}, {6, 8}, {6, 10}, {7, 8}, {7, 11}, {8, 9}, {9, 10}, {10, 11}};
    return complement(Graph::from_edges(12, complement_edges));
}

}  // namespace gramops
