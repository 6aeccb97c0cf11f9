#pragma once
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace raag {

using json = nlohmann::ordered_json;

// Finite simple graph with labeled vertices. The group presented by it has
// one generator per vertex and a commuting relation for every NON-adjacent
// pair, so the complete graph presents a free group and the edgeless graph a
// free abelian one.
struct Graph {
    int n = 0;
    std::vector<std::string> labels;        // unique, size n
    std::vector<std::pair<int, int>> edges; // i < j, sorted, deduplicated
    std::vector<uint64_t> adj;              // adjacency bitmasks

    bool adjacent(int v, int w) const { return v != w && (adj[v] >> w & 1); }
    uint64_t open_mask(int v) const { return adj[v]; }
    uint64_t closed_mask(int v) const { return adj[v] | (uint64_t{1} << v); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int label_index(const std::string& l) const; // -1 if absent
};

// labels may be empty (auto v0..v{n-1}); edges in any order/orientation.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 std::vector<std::string> labels = {});
Graph complete_graph(int r);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph edgeless_graph(int n);
// Complete bipartite graph on parts of size a and b.
Graph complete_bipartite(int a, int b);

std::vector<int> open_neighborhood(const Graph& g, int v);
std::vector<int> closed_neighborhood(const Graph& g, int v);
// v dominated by w: every neighbor of v is w or a neighbor of w.
bool dominates(const Graph& g, int v, int w);
bool equivalent(const Graph& g, int v, int w);

// Partition of the vertices into coherent components: classes of vertices
// whose pairwise transpositions are graph automorphisms. Classes are listed
// by smallest member; members ascend, fixing the intra-class order used
// everywhere downstream.
struct CoherentPartition {
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;
    int size() const { return static_cast<int>(classes.size()); }
};
CoherentPartition coherent_components(const Graph& g);

// Quotient of the graph by its coherent partition; a singleton-pair edge
// {k,k} records a loop (some two vertices of class k adjacent). Every class
// is a clique or an independent set, and a single cross edge between two
// classes forces the complete join; both facts are checked at build time.
struct QuotientGraph {
    CoherentPartition partition;
    std::vector<std::pair<int, int>> qedges; // a <= b; a == b encodes a loop
    std::vector<int> sizes;
    bool has_qedge(int a, int b) const;
    bool has_loop(int a) const { return has_qedge(a, a); }
    int size() const { return static_cast<int>(sizes.size()); }
};
QuotientGraph quotient_graph(const Graph& g);

// Bounds on the nilpotency degree at which twisted conjugacy classes are
// forced infinite: xi = min |lambda|+|mu| over quotient edges (loops count
// 2|lambda|), Xi = min over quotient edges of max(2|lambda|+|mu|,
// |lambda|+2|mu|) (loops: 2|lambda|). Both need at least one edge.
int xi(const Graph& g);
int Xi(const Graph& g);

bool is_transposition_free(const Graph& g);

// Exhaustive edge-preserving vertex permutations, lexicographic order.
std::vector<std::vector<int>> graph_automorphisms(const Graph& g, int limit = 10);
// Permutations of class indices preserving qedges (loops included) and sizes.
std::vector<std::vector<int>> quotient_automorphisms(const QuotientGraph& q, int limit = 10);
// Vertex permutation sending the i-th member of class k to the i-th member
// of class psi(k); a graph automorphism projecting back to psi.
std::vector<int> section_r(const QuotientGraph& q, const std::vector<int>& psi);

Graph parse_edgelist(const std::string& text);
Graph parse_graph_doc(const std::string& json_text);
std::string graph_to_edgelist(const Graph& g);
json graph_to_doc(const Graph& g);
json quotient_to_doc(const QuotientGraph& q);
std::string quotient_to_dot(const QuotientGraph& q);
// FNV-1a 64-bit over the canonical serialization; binds certificates to
// their graph.
std::string graph_digest(const Graph& g);

} // namespace raag
