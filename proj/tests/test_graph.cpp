#include <doctest.h>

#include <algorithm>

#include "raag/error.h"
#include "raag/graph.h"
#include "raag/rational.h"

using namespace raag;

namespace {

Graph fig4() {
    // 4-vertex running example: triangle v1 v2 v3 with pendant v4 at v1
    return make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}, {"v1", "v2", "v3", "v4"});
}

bool perm_preserves_edges(const Graph& g, const std::vector<int>& p) {
    for (int v = 0; v < g.n; ++v)
        for (int w = v + 1; w < g.n; ++w)
            if (g.adjacent(v, w) != g.adjacent(p[v], p[w])) return false;
    return true;
}

bool transposition_is_aut(const Graph& g, int v, int w) {
    std::vector<int> p(g.n);
    for (int i = 0; i < g.n; ++i) p[i] = i;
    std::swap(p[v], p[w]);
    return perm_preserves_edges(g, p);
}

Graph random_graph(int n, SmallRng& rng) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.below(2)) e.emplace_back(i, j);
    return make_graph(n, std::move(e));
}

} // namespace

TEST_CASE("neighborhoods and domination") {
    Graph g = fig4();
    CHECK(open_neighborhood(g, 0) == std::vector<int>{1, 2, 3});
    CHECK(closed_neighborhood(g, 3) == std::vector<int>{0, 3});
    CHECK(open_neighborhood(edgeless_graph(3), 1).empty());
    Graph p = path_graph(3);
    CHECK(open_neighborhood(p, 1) == std::vector<int>{0, 2});
    CHECK(dominates(p, 0, 1));
    CHECK_FALSE(dominates(p, 1, 0));
    CHECK(dominates(p, 1, 1));
    CHECK(equivalent(p, 0, 2));
    CHECK_THROWS_AS(open_neighborhood(p, 7), domain_error);
}

TEST_CASE("coherent components") {
    auto c = coherent_components(fig4());
    CHECK(c.classes == std::vector<std::vector<int>>{{0}, {1, 2}, {3}});
    CHECK(c.class_of == std::vector<int>{0, 1, 1, 2});
    CHECK(coherent_components(complete_graph(4)).classes ==
          std::vector<std::vector<int>>{{0, 1, 2, 3}});
    CHECK(coherent_components(path_graph(3)).classes == std::vector<std::vector<int>>{{0, 2}, {1}});
    CHECK(coherent_components(edgeless_graph(3)).classes ==
          std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("equivalence matches the transposition oracle") {
    // exhaustive over all graphs on up to 4 vertices
    for (int n = 1; n <= 4; ++n) {
        int pairs = n * (n - 1) / 2;
        for (uint64_t mask = 0; mask < (uint64_t{1} << pairs); ++mask) {
            std::vector<std::pair<int, int>> e;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if (mask >> bit & 1) e.emplace_back(i, j);
            Graph g = make_graph(n, std::move(e));
            for (int v = 0; v < n; ++v)
                for (int w = v + 1; w < n; ++w)
                    CHECK(equivalent(g, v, w) == transposition_is_aut(g, v, w));
        }
    }
    // seeded graphs at n = 8
    SmallRng rng(20260822);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_graph(8, rng);
        for (int v = 0; v < 8; ++v)
            for (int w = v + 1; w < 8; ++w)
                CHECK(equivalent(g, v, w) == transposition_is_aut(g, v, w));
    }
}

TEST_CASE("quotient graph of the running example") {
    QuotientGraph q = quotient_graph(fig4());
    CHECK(q.sizes == std::vector<int>{1, 2, 1});
    CHECK(q.qedges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 1}});
    CHECK(q.has_loop(1));
    CHECK_FALSE(q.has_loop(0));
    CHECK(q.has_qedge(1, 0));

    QuotientGraph k2 = quotient_graph(complete_graph(2));
    CHECK(k2.sizes == std::vector<int>{2});
    CHECK(k2.qedges == std::vector<std::pair<int, int>>{{0, 0}});

    QuotientGraph e3 = quotient_graph(edgeless_graph(3));
    CHECK(e3.sizes == std::vector<int>{3});
    CHECK(e3.qedges.empty());
}

TEST_CASE("xi and Xi") {
    Graph g = fig4();
    CHECK(xi(g) == 2);
    CHECK(Xi(g) == 3);
    for (int r = 2; r <= 5; ++r) {
        CHECK(xi(complete_graph(r)) == 2 * r);
        CHECK(Xi(complete_graph(r)) == 2 * r);
    }
    Graph p3 = path_graph(3);
    CHECK(xi(p3) == 3);
    CHECK(Xi(p3) == 5);
    CHECK_THROWS_AS(xi(edgeless_graph(2)), domain_error);
    CHECK_THROWS_AS(Xi(edgeless_graph(2)), domain_error);
    // sandwich and global cap on every graph with n <= 4 and an edge
    for (int n = 2; n <= 4; ++n) {
        int pairs = n * (n - 1) / 2;
        for (uint64_t mask = 1; mask < (uint64_t{1} << pairs); ++mask) {
            std::vector<std::pair<int, int>> e;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if (mask >> bit & 1) e.emplace_back(i, j);
            Graph g2 = make_graph(n, std::move(e));
            CHECK(xi(g2) <= Xi(g2));
            CHECK(Xi(g2) <= 2 * n);
            CHECK(xi(g2) >= 2);
        }
    }
}

TEST_CASE("transposition freeness") {
    CHECK(is_transposition_free(path_graph(4)));
    CHECK_FALSE(is_transposition_free(fig4()));
    CHECK(is_transposition_free(make_graph(1, {})));
    CHECK_FALSE(is_transposition_free(complete_graph(2)));
}

TEST_CASE("graph automorphisms") {
    auto a3 = graph_automorphisms(path_graph(3));
    CHECK(a3 == std::vector<std::vector<int>>{{0, 1, 2}, {2, 1, 0}});
    CHECK(graph_automorphisms(complete_graph(3)).size() == 6);
    auto a4 = graph_automorphisms(path_graph(4));
    CHECK(a4 == std::vector<std::vector<int>>{{0, 1, 2, 3}, {3, 2, 1, 0}});
    CHECK_THROWS_AS(graph_automorphisms(edgeless_graph(11)), resource_error);
    // group closure under composition and inverse
    Graph g = fig4();
    auto auts = graph_automorphisms(g);
    auto find = [&](const std::vector<int>& p) {
        return std::find(auts.begin(), auts.end(), p) != auts.end();
    };
    for (const auto& p : auts) {
        std::vector<int> inv(g.n);
        for (int i = 0; i < g.n; ++i) inv[p[i]] = i;
        CHECK(find(inv));
        for (const auto& q : auts) {
            std::vector<int> comp(g.n);
            for (int i = 0; i < g.n; ++i) comp[i] = p[q[i]];
            CHECK(find(comp));
        }
    }
}

TEST_CASE("order of Aut factors through the quotient") {
    // |Aut(graph)| = prod |class|! * |Aut(quotient)|
    SmallRng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(6, rng);
        QuotientGraph q = quotient_graph(g);
        size_t fact = 1;
        for (int s : q.sizes)
            for (int i = 2; i <= s; ++i) fact *= i;
        CHECK(graph_automorphisms(g).size() == fact * quotient_automorphisms(q).size());
    }
}

TEST_CASE("section of a quotient automorphism") {
    // two disjoint edges; swapping the classes lifts to (0 2)(1 3)
    Graph g = make_graph(4, {{0, 1}, {2, 3}}, {"a", "b", "c", "d"});
    QuotientGraph q = quotient_graph(g);
    CHECK(q.sizes == std::vector<int>{2, 2});
    auto qa = quotient_automorphisms(q);
    CHECK(qa.size() == 2);
    CHECK(section_r(q, {0, 1}) == std::vector<int>{0, 1, 2, 3});
    CHECK(section_r(q, {1, 0}) == std::vector<int>{2, 3, 0, 1});
    CHECK_THROWS_AS(section_r(q, {0, 0}), domain_error);

    // lifted permutations are graph automorphisms projecting back to psi
    Graph h = fig4();
    QuotientGraph qh = quotient_graph(h);
    for (const auto& psi : quotient_automorphisms(qh)) {
        auto lift = section_r(qh, psi);
        CHECK(perm_preserves_edges(h, lift));
        for (int v = 0; v < h.n; ++v)
            CHECK(qh.partition.class_of[lift[v]] == psi[qh.partition.class_of[v]]);
    }
}

TEST_CASE("edgelist parsing") {
    Graph g = parse_edgelist("3\n0 1\n1 2\n");
    CHECK(g.n == 3);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(parse_edgelist("2\n0 0\n"), parse_error);
    CHECK_THROWS_AS(parse_edgelist("2\n0 1\n1 0\n"), parse_error);
    CHECK_THROWS_AS(parse_edgelist("2\n0 3\n"), parse_error);
    CHECK_THROWS_AS(parse_edgelist(""), parse_error);
    CHECK_THROWS_AS(parse_edgelist("2\n0\n"), parse_error);
    Graph r = parse_edgelist(graph_to_edgelist(fig4()));
    CHECK(r.edges == fig4().edges);
}

TEST_CASE("graph document parsing") {
    std::string doc = R"({"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]})";
    Graph g = parse_graph_doc(doc);
    CHECK(g.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(parse_graph_doc(R"({"vertices":["a"],"edges":[["a","a"]]})"), parse_error);
    CHECK_THROWS_AS(parse_graph_doc(R"({"vertices":["a","a"],"edges":[]})"), parse_error);
    CHECK_THROWS_AS(parse_graph_doc(R"({"vertices":["a","b"],"edges":[["a","z"]]})"), parse_error);
    CHECK_THROWS_AS(parse_graph_doc("not json"), parse_error);
    Graph r = parse_graph_doc(graph_to_doc(fig4()).dump());
    CHECK(r.labels == fig4().labels);
    CHECK(r.edges == fig4().edges);
}

TEST_CASE("digest binds the structure") {
    Graph g = fig4();
    CHECK(graph_digest(g) == graph_digest(fig4()));
    CHECK(graph_digest(g).size() == 16);
    Graph h = make_graph(4, {{0, 1}, {1, 2}, {0, 2}}, {"v1", "v2", "v3", "v4"});
    CHECK(graph_digest(g) != graph_digest(h));
}
