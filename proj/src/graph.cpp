#include "raag/graph.h"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "raag/error.h"

namespace raag {

int Graph::label_index(const std::string& l) const {
    for (int i = 0; i < n; ++i)
        if (labels[i] == l) return i;
    return -1;
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels) {
    if (n < 0 || n > 64) throw resource_error("make_graph: vertex count out of range (0..64)");
    Graph g;
    g.n = n;
    if (labels.empty()) {
        for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    }
    if (static_cast<int>(labels.size()) != n)
        throw domain_error("make_graph: label count mismatch");
    {
        std::set<std::string> seen(labels.begin(), labels.end());
        if (static_cast<int>(seen.size()) != n)
            throw domain_error("make_graph: duplicate vertex labels");
    }
    g.labels = std::move(labels);
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw domain_error("make_graph: edge endpoint out of range");
        if (a == b) throw domain_error("make_graph: self-loop");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.adj.assign(n, 0);
    for (auto [a, b] : g.edges) {
        g.adj[a] |= uint64_t{1} << b;
        g.adj[b] |= uint64_t{1} << a;
    }
    return g;
}

Graph complete_graph(int r) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) e.emplace_back(i, j);
    return make_graph(r, std::move(e));
}
Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, std::move(e));
}
Graph cycle_graph(int n) {
    if (n < 3) throw domain_error("cycle_graph: need at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, std::move(e));
}
Graph edgeless_graph(int n) { return make_graph(n, {}); }
Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return make_graph(a + b, std::move(e));
}

static void check_vertex(const Graph& g, int v) {
    if (v < 0 || v >= g.n) throw domain_error("vertex index out of range");
}

static std::vector<int> mask_to_list(uint64_t m) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) out.push_back(i);
    return out;
}

std::vector<int> open_neighborhood(const Graph& g, int v) {
    check_vertex(g, v);
    return mask_to_list(g.open_mask(v));
}
std::vector<int> closed_neighborhood(const Graph& g, int v) {
    check_vertex(g, v);
    return mask_to_list(g.closed_mask(v));
}

bool dominates(const Graph& g, int v, int w) {
    check_vertex(g, v);
    check_vertex(g, w);
    return (g.open_mask(v) & ~g.closed_mask(w)) == 0;
}
bool equivalent(const Graph& g, int v, int w) { return dominates(g, v, w) && dominates(g, w, v); }

CoherentPartition coherent_components(const Graph& g) {
    CoherentPartition p;
    p.class_of.assign(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        if (p.class_of[v] >= 0) continue;
        int k = p.size();
        p.classes.push_back({v});
        p.class_of[v] = k;
        for (int w = v + 1; w < g.n; ++w)
            if (p.class_of[w] < 0 && equivalent(g, v, w)) {
                p.classes[k].push_back(w);
                p.class_of[w] = k;
            }
    }
    return p;
}

bool QuotientGraph::has_qedge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(qedges.begin(), qedges.end(), std::make_pair(a, b));
}

QuotientGraph quotient_graph(const Graph& g) {
    QuotientGraph q;
    q.partition = coherent_components(g);
    for (const auto& cl : q.partition.classes) q.sizes.push_back(static_cast<int>(cl.size()));
    int m = q.size();
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            bool any = false, all = true;
            for (int v : q.partition.classes[a])
                for (int w : q.partition.classes[b]) {
                    if (v == w) continue;
                    if (a == b && v > w) continue;
                    if (g.adjacent(v, w))
                        any = true;
                    else
                        all = false;
                }
            if (any) q.qedges.emplace_back(a, b);
            // a class is a clique or an independent set; one cross edge
            // forces the complete join
            if (any && !all)
                throw theorem_error("quotient_graph: partial adjacency between coherent classes");
        }
    std::sort(q.qedges.begin(), q.qedges.end());
    return q;
}

int xi(const Graph& g) {
    if (g.edges.empty()) throw domain_error("xi undefined for empty graph");
    QuotientGraph q = quotient_graph(g);
    int best = -1;
    for (auto [a, b] : q.qedges) {
        int v = q.sizes[a] + q.sizes[b]; // loop: a==b gives 2|lambda|
        if (best < 0 || v < best) best = v;
    }
    return best;
}

int Xi(const Graph& g) {
    if (g.edges.empty()) throw domain_error("Xi undefined for empty graph");
    QuotientGraph q = quotient_graph(g);
    int best = -1;
    for (auto [a, b] : q.qedges) {
        int v;
        if (a == b)
            v = 2 * q.sizes[a];
        else
            v = std::max(2 * q.sizes[a] + q.sizes[b], q.sizes[a] + 2 * q.sizes[b]);
        if (best < 0 || v < best) best = v;
    }
    return best;
}

bool is_transposition_free(const Graph& g) {
    CoherentPartition p = coherent_components(g);
    for (const auto& cl : p.classes)
        if (cl.size() > 1) return false;
    return true;
}

namespace {

// Backtracking over images in ascending order; output is lexicographic in
// the image vector.
void extend_automorphism(const Graph& g, std::vector<int>& img, uint64_t used,
                         std::vector<std::vector<int>>& out) {
    int v = static_cast<int>(img.size());
    if (v == g.n) {
        out.push_back(img);
        return;
    }
    for (int t = 0; t < g.n; ++t) {
        if (used >> t & 1) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
            if (g.adjacent(u, v) != g.adjacent(img[u], t)) ok = false;
        if (!ok) continue;
        img.push_back(t);
        extend_automorphism(g, img, used | (uint64_t{1} << t), out);
        img.pop_back();
    }
}

} // namespace

std::vector<std::vector<int>> graph_automorphisms(const Graph& g, int limit) {
    if (g.n > limit) throw resource_error("graph_automorphisms: vertex limit exceeded");
    std::vector<std::vector<int>> out;
    std::vector<int> img;
    extend_automorphism(g, img, 0, out);
    return out;
}

std::vector<std::vector<int>> quotient_automorphisms(const QuotientGraph& q, int limit) {
    int m = q.size();
    if (m > limit) throw resource_error("quotient_automorphisms: class limit exceeded");
    std::vector<std::vector<int>> out;
    std::vector<int> img;
    std::function<void(uint64_t)> rec = [&](uint64_t used) {
        int a = static_cast<int>(img.size());
        if (a == m) {
            out.push_back(img);
            return;
        }
        for (int t = 0; t < m; ++t) {
            if (used >> t & 1) continue;
            if (q.sizes[t] != q.sizes[a]) continue;
            if (q.has_loop(a) != q.has_loop(t)) continue;
            bool ok = true;
            for (int b = 0; b < a && ok; ++b)
                if (q.has_qedge(a, b) != q.has_qedge(t, img[b])) ok = false;
            if (!ok) continue;
            img.push_back(t);
            rec(used | (uint64_t{1} << t));
            img.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<int> section_r(const QuotientGraph& q, const std::vector<int>& psi) {
    int m = q.size();
    if (static_cast<int>(psi.size()) != m) throw domain_error("section_r: wrong permutation size");
    std::vector<char> seen(m, 0);
    for (int k = 0; k < m; ++k) {
        if (psi[k] < 0 || psi[k] >= m || seen[psi[k]])
            throw domain_error("section_r: not a permutation");
        seen[psi[k]] = 1;
        if (q.sizes[psi[k]] != q.sizes[k])
            throw domain_error("section_r: permutation does not preserve class sizes");
    }
    int n = 0;
    for (int s : q.sizes) n += s;
    std::vector<int> perm(n, -1);
    for (int k = 0; k < m; ++k) {
        const auto& from = q.partition.classes[k];
        const auto& to = q.partition.classes[psi[k]];
        for (size_t i = 0; i < from.size(); ++i) perm[from[i]] = to[i];
    }
    return perm;
}

// ---------------------------------------------------------------------------
// Parsing and serialization

Graph parse_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0, n = -1;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        if (n < 0) {
            if (!(ls >> n) || n < 0)
                continue; // blank/comment before header
            std::string rest;
            if (ls >> rest)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected vertex count alone on first line");
            continue;
        }
        int a, b;
        if (!(ls >> a)) continue; // blank line
        if (!(ls >> b))
            throw parse_error("line " + std::to_string(lineno) + ": expected two vertex indices");
        std::string rest;
        if (ls >> rest)
            throw parse_error("line " + std::to_string(lineno) + ": trailing tokens");
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw parse_error("line " + std::to_string(lineno) + ": vertex index out of range");
        if (a == b) throw parse_error("line " + std::to_string(lineno) + ": self-loop");
        auto e = std::minmax(a, b);
        if (!seen.insert({e.first, e.second}).second)
            throw parse_error("line " + std::to_string(lineno) + ": duplicate edge");
        edges.emplace_back(a, b);
    }
    if (n < 0) throw parse_error("edgelist: missing vertex count header");
    return make_graph(n, std::move(edges));
}

Graph parse_graph_doc(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("graph doc: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
        throw parse_error("graph doc: need object with 'vertices' and 'edges'");
    std::vector<std::string> labels;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string()) throw parse_error("graph doc: vertex labels must be strings");
        labels.push_back(v.get<std::string>());
    }
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size()) throw parse_error("graph doc: duplicate vertex label");
    auto index_of = [&](const std::string& l) {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return static_cast<int>(i);
        throw parse_error("graph doc: unknown vertex label '" + l + "'");
    };
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw parse_error("graph doc: each edge must be a 2-element list");
        int a = index_of(e[0].get<std::string>());
        int b = index_of(e[1].get<std::string>());
        if (a == b) throw parse_error("graph doc: self-loop at '" + labels[a] + "'");
        auto mm = std::minmax(a, b);
        if (!seen.insert({mm.first, mm.second}).second)
            throw parse_error("graph doc: duplicate edge");
        edges.emplace_back(a, b);
    }
    int n = static_cast<int>(labels.size());
    return make_graph(n, std::move(edges), std::move(labels));
}

std::string graph_to_edgelist(const Graph& g) {
    std::ostringstream out;
    out << g.n << "\n";
    for (auto [a, b] : g.edges) out << a << " " << b << "\n";
    return out.str();
}

json graph_to_doc(const Graph& g) {
    json doc;
    doc["format_version"] = 1;
    doc["vertices"] = g.labels;
    json edges = json::array();
    for (auto [a, b] : g.edges) edges.push_back({g.labels[a], g.labels[b]});
    doc["edges"] = edges;
    return doc;
}

json quotient_to_doc(const QuotientGraph& q) {
    json doc;
    doc["format_version"] = 1;
    json classes = json::array();
    for (const auto& cl : q.partition.classes) classes.push_back(cl);
    doc["classes"] = classes;
    doc["sizes"] = q.sizes;
    json qe = json::array();
    for (auto [a, b] : q.qedges) {
        if (a == b)
            qe.push_back({a});
        else
            qe.push_back({a, b});
    }
    doc["qedges"] = qe;
    return doc;
}

std::string quotient_to_dot(const QuotientGraph& q) {
    std::ostringstream out;
    out << "graph quotient {\n";
    for (int k = 0; k < q.size(); ++k)
        out << "  q" << k << " [label=\"\xce\xbb" << k << " (size " << q.sizes[k] << ")\"];\n";
    for (auto [a, b] : q.qedges) out << "  q" << a << " -- q" << b << ";\n";
    out << "}\n";
    return out.str();
}

std::string graph_digest(const Graph& g) {
    std::ostringstream s;
    s << g.n << "|";
    for (int i = 0; i < g.n; ++i) s << g.labels[i] << ",";
    s << "|";
    for (auto [a, b] : g.edges) s << a << "-" << b << ";";
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex;
    for (int i = 15; i >= 0; --i) hex << ((h >> (4 * i)) & 0xf);
    return hex.str();
}

} // namespace raag
