// End-to-end acceptance gate. Each numbered check prints exactly one
// PASS/FAIL line; the process exits with the number of failures.
//
// argv[1]: path to the raagtc executable (used by the document and census
// checks, which go through the real command line).
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "raag/rinfty.h"

using namespace raag;

namespace {

struct check_failure : std::runtime_error {
    explicit check_failure(const std::string& m) : std::runtime_error(m) {}
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw check_failure(msg);
}

std::string cli_path;    // raagtc executable
std::string scratch_dir; // per-run temporary directory
std::vector<std::string> notes;

int run_cli(const std::string& args) {
    std::string cmd = "'" + cli_path + "' " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    require(status != -1, "could not spawn the command line");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Shared small helpers

bool transposition_is_automorphism(const Graph& g, int v, int w) {
    std::vector<int> p(static_cast<size_t>(g.n));
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[static_cast<size_t>(v)], p[static_cast<size_t>(w)]);
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (g.adjacent(a, b) !=
                g.adjacent(p[static_cast<size_t>(a)], p[static_cast<size_t>(b)]))
                return false;
    return true;
}

std::vector<Graph> census_graphs(int n_max, bool nonempty_only) {
    CensusResult r = census(n_max, 4, true);
    std::vector<Graph> out;
    for (const CensusGraph& cg : r.detail) {
        if (nonempty_only && cg.edges.empty()) continue;
        out.push_back(make_graph(cg.n, cg.edges));
    }
    return out;
}

std::vector<Rat> element_vector(const LieElement& x, int dim) {
    std::vector<Rat> v(static_cast<size_t>(dim), Rat(0));
    for (const auto& [i, c] : x.coeff) v[static_cast<size_t>(i)] = c;
    return v;
}

bool fixed_under(const QMat& m, const std::vector<Rat>& v) {
    for (int i = 0; i < m.rows; ++i) {
        Rat acc(0);
        for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[static_cast<size_t>(j)];
        if (acc != v[static_cast<size_t>(i)]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 1. Invariant suite at n <= 5

void criterion_invariants() {
    std::vector<Graph> graphs = census_graphs(5, false);
    require(graphs.size() == 1 + 2 + 4 + 11 + 34, "unexpected census size");
    for (const Graph& g : graphs) {
        CoherentPartition part = coherent_components(g);
        for (int v = 0; v < g.n; ++v)
            for (int w = v + 1; w < g.n; ++w) {
                bool together = part.class_of[static_cast<size_t>(v)] ==
                                part.class_of[static_cast<size_t>(w)];
                require(together == transposition_is_automorphism(g, v, w),
                        "coherent classes disagree with transposition checking");
            }
        if (g.edge_count() > 0) {
            auto [lo, hi] = bounds(g);
            require(2 <= lo && lo <= hi && hi <= 2 * g.n, "bound ordering violated");
        }
    }
}

// ---------------------------------------------------------------------------
// 2. The labeled 4-vertex example

void criterion_figure_graph() {
    Graph g = make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}, {"v1", "v2", "v3", "v4"});
    CoherentPartition part = coherent_components(g);
    require(part.classes == std::vector<std::vector<int>>{{0}, {1, 2}, {3}},
            "component split mismatch");
    require(!is_transposition_free(g), "graph should not be transposition-free");
    auto [lo, hi] = bounds(g);
    require(lo == 2 && hi == 3, "bounds mismatch");
    json rep = analyze_graph(g);
    require(rep["components"] ==
                json::parse(R"([["v1"],["v2","v3"],["v4"]])"),
            "reported components mismatch");
    require(rep["transposition_free"] == json(false), "reported flag mismatch");
}

// ---------------------------------------------------------------------------
// 3. Complete graphs K_r behave like free groups of rank r

void criterion_free_groups() {
    for (int r = 2; r <= 3; ++r) {
        Graph g = complete_graph(r);
        auto [lo, hi] = bounds(g);
        require(lo == 2 * r && hi == 2 * r, "K_r bounds must be (2r, 2r)");

        LowerBoundWitness w = lower_bound_witness(g);
        require(w.c == 2 * r - 1, "witness class mismatch");
        verify_lower_bound_witness(w);
        require(!w.dets.empty(), "witness has no determinants");
        for (const Rat& d : w.dets) require(d != 0, "zero layer determinant");

        // materialized degrees match the Witt numbers before sampling
        GradedPcLie L = build_pc_lie(g, 2 * r);
        for (int d = 1; d <= 2 * r; ++d)
            require(L.dim(d) == witt_dimension(r, d), "layer dimension off the Witt number");

        SmallRng rng(4200 + static_cast<uint64_t>(r));
        for (int trial = 0; trial < 50; ++trial) {
            QMat M = sample_integer_member(g, rng);
            require(is_integer_like(M), "sampled member is not integer-like");
            auto [hit, dets] = has_eigenvalue_one_upto(L, M, 2 * r);
            require(hit, "member without an eigenvalue-1 layer through 2r");
        }
    }
}

// ---------------------------------------------------------------------------
// 4. Transposition-free graphs: degree <= 2 eigenvectors for all signs

void criterion_transposition_free() {
    long pairs = 0, combos = 0;
    for (const Graph& g : census_graphs(6, true)) {
        bool tf = true;
        for (int v = 0; v < g.n && tf; ++v)
            for (int w = v + 1; w < g.n && tf; ++w)
                if (transposition_is_automorphism(g, v, w)) tf = false;
        require(tf == is_transposition_free(g), "transposition-freeness disagreement");
        if (!tf) continue;

        GradedPcLie L = build_pc_lie(g, 2);
        for (const std::vector<int>& psi : graph_automorphisms(g)) {
            ++pairs;
            EdgeCase ec = transposition_free_case(g, psi);
            std::vector<std::vector<int>> cycles = vertex_cycles(psi);
            if (ec.item == 1) {
                const auto& cyc = cycles[static_cast<size_t>(ec.i)];
                require(g.adjacent(cyc[static_cast<size_t>(ec.s - 1)],
                                   cyc[static_cast<size_t>(ec.t - 1)]),
                        "claimed intra-cycle edge is absent");
            } else {
                long ki = static_cast<long>(cycles[static_cast<size_t>(ec.i)].size());
                long kj = static_cast<long>(cycles[static_cast<size_t>(ec.j)].size());
                long lc = std::lcm(ki, kj);
                require(g.adjacent(
                            cycles[static_cast<size_t>(ec.i)][static_cast<size_t>(ec.s - 1)],
                            cycles[static_cast<size_t>(ec.j)][static_cast<size_t>(ec.t - 1)]),
                        "claimed cross edge is absent");
                require((lc / ki + lc / kj) % 2 == 0, "cross-edge parity condition fails");
            }

            size_t nc = cycles.size();
            for (uint64_t mask = 0; mask < (uint64_t(1) << nc); ++mask) {
                ++combos;
                std::vector<int> signs(nc);
                for (size_t i = 0; i < nc; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
                Index2Witness wit = index2_eigenvector(g, L, psi, signs);
                require(!wit.x.is_zero(), "eigenvector is zero");
                require(wit.x.degree >= 1 && wit.x.degree <= 2, "eigenvector degree out of range");

                // the degree-1 matrix really is the signed lift of (psi, signs)
                for (int v = 0; v < g.n; ++v)
                    for (int r = 0; r < g.n; ++r) {
                        Rat e = wit.degree1.at(r, v);
                        if (r == psi[static_cast<size_t>(v)])
                            require(e == 1 || e == -1, "lift column is not a unit");
                        else
                            require(e == 0, "lift has an off-cycle entry");
                    }
                for (size_t ci = 0; ci < nc; ++ci) {
                    Rat prod(1);
                    for (int v : cycles[ci])
                        prod *= wit.degree1.at(psi[static_cast<size_t>(v)], v);
                    require(prod == Rat(signs[ci]), "cycle sign product mismatch");
                }

                QMat act = induced_layer_map(L, wit.degree1, wit.x.degree);
                require(fixed_under(act, element_vector(wit.x, L.dim(wit.x.degree))),
                        "eigenvector is not fixed by the induced map");
            }
        }
    }
    notes.push_back("  checked " + std::to_string(pairs) + " automorphism pairs, " +
                    std::to_string(combos) + " sign combinations");
}

// ---------------------------------------------------------------------------
// 5. Sandwich at n <= 5: witness below, eigenvalue-1 layers at Xi

void criterion_sandwich() {
    long direct_members = 0, covered_members = 0, cert_count = 0;
    int gi = 0;
    for (const Graph& g : census_graphs(5, true)) {
        if (std::getenv("ACCEPT_TRACE"))
            std::cerr << "[5] graph " << gi++ << " n=" << g.n << " edges=" << g.edge_count()
                      << "\n";
        LowerBoundWitness w = lower_bound_witness(g);
        auto [xi, Xi] = bounds(g);
        if (w.abelian_special)
            require(xi == 2, "abelian special case outside xi == 2");
        else
            require(w.c == xi - 1, "witness class is not xi - 1");
        verify_lower_bound_witness(w);

        // largest degree whose layers stay materializable and det-friendly
        std::vector<long> qd = quotient_layer_dims(g, Xi);
        int dstar = 0;
        for (int d = 1; d <= Xi; ++d) {
            if (witt_dimension(g.n, d) > 5000 || qd[static_cast<size_t>(d)] > 300) break;
            dstar = d;
        }
        require(dstar >= 2, "no materializable prefix");
        GradedPcLie L = build_pc_lie(g, dstar);

        bool family_done = false;
        SmallRng rng(9900 + static_cast<uint64_t>(g.edge_count()) * 31 +
                     static_cast<uint64_t>(g.n));
        for (int trial = 0; trial < 50; ++trial) {
            if (std::getenv("ACCEPT_TRACE")) std::cerr << "  trial " << trial << "\n";
            QMat M = sample_integer_member(g, rng);
            bool hit = false;
            for (int d = 1; d <= dstar && !hit; ++d) {
                QMat shifted = induced_layer_map(L, M, d);
                for (int i = 0; i < shifted.rows; ++i) shifted.at(i, i) -= 1;
                hit = qm_det(shifted) == 0;
            }
            if (hit) {
                ++direct_members;
                continue;
            }
            require(dstar < Xi, "member without an eigenvalue-1 layer through Xi");

            // layers past the materialization cap: cover every reduced shape
            // the member's semisimple part could take, i.e. every quotient
            // automorphism under every sign pattern, by verified certificates
            if (!family_done) {
                QuotientGraph qg = quotient_graph(g);
                for (const std::vector<int>& qpsi : quotient_automorphisms(qg)) {
                    size_t nc = cycle_decomposition(qg, qpsi).cycles.size();
                    for (uint64_t mask = 0; mask < (uint64_t(1) << nc); ++mask) {
                        std::vector<int> signs(nc);
                        for (size_t i = 0; i < nc; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
                        UpperBoundCertificate cert = upper_bound_certificate(g, qpsi, signs);
                        verify_upper_bound_certificate(cert);
                        require(cert.degree <= Xi, "certificate degree exceeds Xi");
                        ++cert_count;
                    }
                }
                family_done = true;
            }
            ++covered_members;
        }
    }
    notes.push_back("  " + std::to_string(direct_members) +
                    " members hit an eigenvalue-1 layer directly; " +
                    std::to_string(covered_members) +
                    " (first layer past the materialization cap) covered by " +
                    std::to_string(cert_count) +
                    " verified certificates spanning every quotient automorphism and sign choice");
}

// ---------------------------------------------------------------------------
// 6. Root-of-unity index selection against brute force, plus dispatch

Rat angle_raw(int k, int t, int sign) {
    return sign == 1 ? make_rat(2 * (t - 1), k) : make_rat(2 * t - 1, k);
}

bool even_integer(const Rat& v) {
    if (v.get_den() != 1) return false;
    return mpz_even_p(v.get_num().get_mpz_t());
}

void criterion_root_lemmas() {
    for (int k = 1; k <= 12; ++k)
        for (int l = 1; l <= 12; ++l) {
            long M = std::lcm(k, l);
            bool k_odd = (M / k) % 2 == 1, l_odd = (M / l) % 2 == 1;

            // same sign (+, +): the trivial pair
            RootIndexResult pp = root_index_same_sign(k, l, 1, 1);
            require(pp.item == 1 && pp.s == 1 && pp.t == 1 && !pp.r, "(+,+) must be (1,1) at (" + std::to_string(k) + "," + std::to_string(l) + ")");
            require(pp.parity_value == 0, "(+,+) parity at (" + std::to_string(k) + "," + std::to_string(l) + ")");

            // same sign (-, -)
            std::pair<int, int> plain{0, 0};
            for (int s = 1; s <= k && !plain.first; ++s)
                for (int t = 1; t <= l; ++t)
                    if (even_integer(angle_raw(k, s, -1) + angle_raw(l, t, -1))) {
                        plain = {s, t};
                        break;
                    }
            if (k_odd == l_odd) {
                require(plain.first != 0, "(-,-) equal parity must be solvable at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                RootIndexResult rr = root_index_same_sign(k, l, -1, -1);
                require(rr.item == 2 && rr.s == plain.first && rr.t == plain.second,
                        "(-,-) least pair mismatch at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(rr.parity_value == angle_raw(k, rr.s, -1) + angle_raw(l, rr.t, -1) &&
                            even_integer(rr.parity_value),
                        "(-,-) parity identity at (" + std::to_string(k) + "," + std::to_string(l) + ")");
            } else if (k_odd) {
                require(plain.first == 0, "mixed parity should have no plain pair at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                std::tuple<int, int, int> best{0, 0, 0};
                for (int s = 1; s <= k && !std::get<0>(best); ++s)
                    for (int t = 1; t <= l && !std::get<0>(best); ++t)
                        for (int r = 1; r <= k; ++r)
                            if (even_integer(angle_raw(k, s, -1) + angle_raw(k, r, -1) +
                                             angle_raw(l, t, -1))) {
                                best = {s, t, r};
                                break;
                            }
                require(std::get<0>(best) != 0, "doubled side must be solvable at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                RootIndexResult rr = root_index_same_sign(k, l, -1, -1);
                require(rr.item == 3 && rr.r, "expected the doubled clause at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(std::tuple(rr.s, rr.t, *rr.r) == best, "doubled triple mismatch at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(rr.parity_value == angle_raw(k, rr.s, -1) + angle_raw(k, *rr.r, -1) +
                                               angle_raw(l, rr.t, -1) &&
                            even_integer(rr.parity_value),
                        "doubled parity identity at (" + std::to_string(k) + "," + std::to_string(l) + ")");
            } else {
                bool threw = false;
                try {
                    root_index_same_sign(k, l, -1, -1);
                } catch (const domain_error&) {
                    threw = true;
                }
                require(threw, "wrong orientation must be rejected at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(plain.first == 0, "rejected case must really be unsolvable at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                // and the swap is the documented way out
                RootIndexResult sw = root_index_same_sign(l, k, -1, -1);
                require(sw.item == 3, "swapped call must take the doubled clause at (" + std::to_string(k) + "," + std::to_string(l) + ")");
            }

            // different signs: the minus side first, doubling it when needed
            RootIndexResult ds = root_index_diff_sign(k, l);
            if (!k_odd) {
                std::pair<int, int> ref{0, 0};
                for (int s = 1; s <= k && !ref.first; ++s)
                    for (int t = 1; t <= l; ++t)
                        if (even_integer(angle_raw(k, s, -1) + angle_raw(l, t, 1))) {
                            ref = {s, t};
                            break;
                        }
                require(ds.item == 1 && !ds.r, "diff-sign clause mismatch at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(std::pair(ds.s, ds.t) == ref, "diff-sign least pair mismatch at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(ds.parity_value == angle_raw(k, ds.s, -1) + angle_raw(l, ds.t, 1) &&
                            even_integer(ds.parity_value),
                        "diff-sign parity identity at (" + std::to_string(k) + "," + std::to_string(l) + ")");
            } else {
                std::tuple<int, int, int> best{0, 0, 0};
                for (int s = 1; s <= k && !std::get<0>(best); ++s)
                    for (int t = 1; t <= l && !std::get<0>(best); ++t)
                        for (int r = 1; r <= k; ++r)
                            if (even_integer(angle_raw(k, s, -1) + angle_raw(k, r, -1) +
                                             angle_raw(l, t, 1))) {
                                best = {s, t, r};
                                break;
                            }
                require(ds.item == 2 && ds.r, "diff-sign doubled clause mismatch at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(std::tuple(ds.s, ds.t, *ds.r) == best, "diff-sign doubled triple mismatch at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                require(ds.parity_value == angle_raw(k, ds.s, -1) + angle_raw(k, *ds.r, -1) +
                                               angle_raw(l, ds.t, 1) &&
                            even_integer(ds.parity_value),
                        "diff-sign doubled parity identity at (" + std::to_string(k) + "," + std::to_string(l) + ")");
            }

            // dispatch totality: every sign pattern routes to a clause that
            // succeeds, swapping sides exactly where the table says so
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    if (e1 == 1 && e2 == 1) continue; // handled above
                    if (e1 == -1 && e2 == -1) {
                        if (k_odd == l_odd)
                            require(root_index_same_sign(k, l, -1, -1).item == 2, "route P1 at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                        else if (k_odd)
                            require(root_index_same_sign(k, l, -1, -1).item == 3, "route P2 at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                        else
                            require(root_index_same_sign(l, k, -1, -1).item == 3,
                                    "route P3 via swap at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                    } else if (e1 == -1) {
                        require(root_index_diff_sign(k, l).item == (k_odd ? 2 : 1),
                                "diff-sign route at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                    } else {
                        long Ml = M; // same lcm, swapped orientation
                        bool lo = (Ml / l) % 2 == 1;
                        require(root_index_diff_sign(l, k).item == (lo ? 2 : 1),
                                "swapped diff-sign route at (" + std::to_string(k) + "," + std::to_string(l) + ")");
                    }
                }
        }
}

// ---------------------------------------------------------------------------
// 7. Lie layer dimensions against a tensor-algebra oracle

std::map<Word, Rat> rn_tensor(const std::vector<int>& seq, size_t i) {
    std::map<Word, Rat> out;
    if (i + 1 == seq.size()) {
        out[Word{seq[i]}] = 1;
        return out;
    }
    auto inner = rn_tensor(seq, i + 1);
    for (const auto& [w, c] : inner) {
        Word xw{seq[i]};
        xw.insert(xw.end(), w.begin(), w.end());
        Word wx = w;
        wx.push_back(seq[i]);
        auto bump = [&out](const Word& key, const Rat& v) {
            Rat& slot = out[key];
            slot += v;
            if (slot == 0) out.erase(key);
        };
        bump(xw, c);
        bump(wx, -c);
    }
    return out;
}

int word_code(int n, const Word& w) {
    int code = 0;
    for (int letter : w) code = code * n + letter;
    return code;
}

QMat rows_to_matrix(int n, int d, const std::vector<std::map<Word, Rat>>& rows) {
    int cols = 1;
    for (int i = 0; i < d; ++i) cols *= n;
    QMat m(static_cast<int>(rows.size()), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (const auto& [w, c] : rows[r]) m.at(static_cast<int>(r), word_code(n, w)) = c;
    return m;
}

void all_sequences(int n, int d, std::vector<std::vector<int>>& out) {
    std::vector<int> seq(static_cast<size_t>(d), 0);
    while (true) {
        out.push_back(seq);
        int i = d - 1;
        while (i >= 0 && seq[static_cast<size_t>(i)] == n - 1) seq[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++seq[static_cast<size_t>(i)];
    }
}

int free_layer_rank(int n, int d) {
    std::vector<std::vector<int>> seqs;
    all_sequences(n, d, seqs);
    std::vector<std::map<Word, Rat>> rows;
    for (const auto& s : seqs) rows.push_back(rn_tensor(s, 0));
    return qm_rank(rows_to_matrix(n, d, rows));
}

int ideal_layer_rank(const Graph& g, int d) {
    std::vector<std::pair<int, int>> nonedges;
    for (int v = 0; v < g.n; ++v)
        for (int w = v + 1; w < g.n; ++w)
            if (!g.adjacent(v, w)) nonedges.push_back({v, w});
    std::vector<std::vector<int>> prefixes;
    if (d == 2)
        prefixes.push_back({});
    else
        all_sequences(g.n, d - 2, prefixes);
    std::vector<std::map<Word, Rat>> rows;
    for (const auto& p : prefixes)
        for (const auto& [v, w] : nonedges) {
            std::vector<int> seq = p;
            seq.push_back(v);
            seq.push_back(w);
            rows.push_back(rn_tensor(seq, 0));
        }
    if (rows.empty()) return 0;
    return qm_rank(rows_to_matrix(g.n, d, rows));
}

void criterion_lie_dimensions() {
    for (const Graph& g : census_graphs(4, false)) {
        if (g.n < 1) continue;
        GradedPcLie L = build_pc_lie(g, 4);
        require(L.dim(1) == g.n, "degree-1 dimension");
        for (int d = 2; d <= 4; ++d)
            require(L.dim(d) == free_layer_rank(g.n, d) - ideal_layer_rank(g, d),
                    "layer dimension off the tensor oracle");

        // product over layers of (1 - t^d)^{dim_d} against the series
        std::vector<Int> series(5, Int(0));
        series[0] = 1;
        for (int d = 1; d <= 4; ++d)
            for (int rep = 0; rep < L.dim(d); ++rep) {
                std::vector<Int> next = series;
                for (int j = 0; j + d <= 4; ++j) next[static_cast<size_t>(j + d)] -= series[static_cast<size_t>(j)];
                series = std::move(next);
            }
        std::vector<Int> expected = clique_series_coeffs(g, 4);
        for (int j = 0; j <= 4; ++j)
            require(series[static_cast<size_t>(j)] ==
                        (j % 2 ? -expected[static_cast<size_t>(j)] : expected[static_cast<size_t>(j)]),
                    "layer product off the generating series");

        // antisymmetry and Jacobi across all basis elements that fit
        std::vector<LieElement> basis_elems;
        for (int d = 1; d <= 4; ++d)
            for (int i = 0; i < L.dim(d); ++i) {
                LieElement e;
                e.degree = d;
                e.coeff[i] = 1;
                basis_elems.push_back(e);
            }
        for (const LieElement& a : basis_elems)
            for (const LieElement& b : basis_elems) {
                if (a.degree + b.degree > 4) continue;
                LieElement ab = lie_bracket(L, a, b);
                LieElement ba = lie_bracket(L, b, a);
                require(lie_add(ab, ba).is_zero(), "antisymmetry fails");
                for (const LieElement& c : basis_elems) {
                    if (a.degree + b.degree + c.degree > 4) continue;
                    LieElement s = lie_add(
                        lie_bracket(L, lie_bracket(L, a, b), c),
                        lie_add(lie_bracket(L, lie_bracket(L, b, c), a),
                                lie_bracket(L, lie_bracket(L, c, a), b)));
                    require(s.is_zero(), "Jacobi fails");
                }
            }
    }
}

// ---------------------------------------------------------------------------
// 8. Document round-trips and tamper detection through the command line

std::vector<std::pair<std::string, Graph>> fixture_graphs() {
    std::vector<std::pair<std::string, Graph>> out;
    out.push_back({"k2", complete_graph(2)});
    out.push_back({"k3", complete_graph(3)});
    out.push_back({"k4", complete_graph(4)});
    out.push_back({"path3", path_graph(3)});
    out.push_back({"path4", path_graph(4)});
    out.push_back({"path5", path_graph(5)});
    out.push_back({"cycle4", cycle_graph(4)});
    out.push_back({"cycle5", cycle_graph(5)});
    out.push_back({"cycle6", cycle_graph(6)});
    out.push_back({"star3", complete_bipartite(1, 3)});
    out.push_back({"star4", complete_bipartite(1, 4)});
    out.push_back({"k22", complete_bipartite(2, 2)});
    out.push_back({"k23", complete_bipartite(2, 3)});
    out.push_back({"figure4", make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}})});
    out.push_back({"path3_plus_edge", make_graph(5, {{0, 1}, {1, 2}, {3, 4}})});
    out.push_back({"two_edges", make_graph(4, {{0, 1}, {2, 3}})});
    out.push_back({"paw", make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})});
    out.push_back({"diamond", make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}})});
    out.push_back({"bull", make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 4}})});
    out.push_back({"triangle_plus_vertex", make_graph(4, {{0, 1}, {1, 2}, {0, 2}})});
    return out;
}

void criterion_documents() {
    auto fixtures = fixture_graphs();
    require(fixtures.size() == 20, "fixture count");
    // claim fields to disturb, cycled across fixtures; the first list targets
    // witnesses, the second certificates. "/signs/@" negates the sign of the
    // cycle carrying the chosen quotient edge; any other flip could leave the
    // certificate true.
    std::vector<std::string> witness_fields{"/xi", "/c", "/mode", "/determinants/0",
                                            "/exponents/0", "/components/0/0"};
    std::vector<std::string> cert_fields{"/Xi", "/degree", "/bracket_word", "/indices/s",
                                         "/value/terms", "/signs/@", "/qedge/0"};
    int fi = 0;
    for (const auto& [name, g] : fixtures) {
        std::string base = scratch_dir + "/" + name;
        write_file(base + ".el", graph_to_edgelist(g));

        require(run_cli("witness-lower '" + base + ".el' -o '" + base + ".w.json'") == 0,
                name + ": witness build failed");
        require(run_cli("verify '" + base + ".w.json'") == 0, name + ": witness verify failed");

        int q = quotient_graph(g).size();
        std::string psi, signs;
        for (int i = 0; i < q; ++i) {
            psi += "(" + std::to_string(i) + ")";
            signs += (i ? ",+" : "+");
        }
        require(run_cli("certify-upper '" + base + ".el' --psi '" + psi + "' --signs '" + signs +
                        "' -o '" + base + ".c.json'") == 0,
                name + ": certificate build failed");
        require(run_cli("verify '" + base + ".c.json'") == 0, name + ": certificate verify failed");

        // disturb exactly one claim field and demand exit 5
        bool on_witness = fi % 2 == 0;
        std::string doc_path = base + (on_witness ? ".w.json" : ".c.json");
        const auto& field_pool = on_witness ? witness_fields : cert_fields;
        json doc = json::parse(read_file(doc_path));
        json::json_pointer ptr;
        bool negate = false;
        for (size_t off = 0; off < field_pool.size(); ++off) {
            std::string text = field_pool[(static_cast<size_t>(fi) + off) % field_pool.size()];
            if (text == "/signs/@") {
                // the identity permutation makes cycle index == class index
                text = "/signs/" + std::to_string(doc["qedge"][0].get<int>());
                negate = true;
            }
            json::json_pointer cand(text);
            if (doc.contains(cand)) {
                ptr = cand;
                break;
            }
            negate = false;
        }
        require(!ptr.empty(), name + ": no tamper target present");
        json& slot = doc[ptr];
        if (negate)
            slot = -slot.get<long>();
        else if (slot.is_number_integer())
            slot = slot.get<long>() + 1;
        else if (slot.is_string())
            slot = slot.get<std::string>() + "0";
        else
            require(false, name + ": untamperable field type");
        std::string tampered = base + ".tampered.json";
        write_file(tampered, doc.dump(2) + "\n");
        require(run_cli("verify '" + tampered + "'") == 5,
                name + ": tampering " + ptr.to_string() + " was not detected as exit 5");
        ++fi;
    }
}

// ---------------------------------------------------------------------------
// 9. Census counts and job-count determinism through the command line

void criterion_census() {
    std::string a = scratch_dir + "/census_j1.json", b = scratch_dir + "/census_j4.json";
    require(run_cli("census 5 --jobs 1 -o '" + a + "'") == 0, "census run failed");
    require(run_cli("census 5 --jobs 4 -o '" + b + "'") == 0, "census run failed");
    require(read_file(a) == read_file(b), "census output differs across job counts");

    json doc = json::parse(read_file(a));
    std::vector<long> expect{1, 2, 4, 11, 34};
    require(doc["rows"].size() == 5, "census row count");
    for (size_t i = 0; i < 5; ++i)
        require(doc["rows"][i]["graphs"].get<long>() == expect[i], "census count mismatch");
}

struct Criterion {
    std::string name;
    double limit_seconds; // 0: no stated limit
    std::function<void()> run;
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-raagtc>\n";
        return 64;
    }
    cli_path = argv[1];
    std::set<size_t> only;
    for (int a = 2; a < argc; ++a) only.insert(static_cast<size_t>(std::atoi(argv[a])));
    std::cout << std::unitbuf;
    char tmpl[] = "/tmp/raag-accept-XXXXXX";
    const char* dir = mkdtemp(tmpl);
    if (!dir) {
        std::cerr << "cannot create scratch directory\n";
        return 64;
    }
    scratch_dir = dir;

    std::vector<Criterion> criteria{
        {"invariant suite over every graph with n <= 5", 10.0, criterion_invariants},
        {"labeled 4-vertex example: components, flags, bounds", 0.0, criterion_figure_graph},
        {"complete graphs: bounds 2r, witness at 2r-1, 50 sampled members", 300.0,
         criterion_free_groups},
        {"transposition-free graphs n <= 6: all automorphisms, all signs", 600.0,
         criterion_transposition_free},
        {"sandwich at n <= 5: witness below, eigenvalue-1 layers at Xi", 0.0, criterion_sandwich},
        {"root-of-unity index selection vs brute force, dispatch total", 0.0,
         criterion_root_lemmas},
        {"Lie layer dimensions vs tensor oracle and series; Jacobi", 0.0,
         criterion_lie_dimensions},
        {"document round-trip and single-field tamper detection", 0.0, criterion_documents},
        {"census counts 1,2,4,11,34 and job-count determinism", 0.0, criterion_census},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(i + 1)) continue;
        const Criterion& c = criteria[i];
        notes.clear();
        auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS", why;
        try {
            c.run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            why = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (verdict == "PASS" && c.limit_seconds > 0 && secs > c.limit_seconds) {
            verdict = "FAIL";
            why = "exceeded the stated time limit of " + std::to_string(c.limit_seconds) + "s";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << "[" << i + 1 << "] " << verdict << "  " << secs << "s  " << c.name;
        if (!why.empty()) line << "\n      " << why;
        std::cout << line.str() << "\n";
        for (const std::string& n : notes) std::cout << n << "\n";
        if (verdict == "FAIL") ++failures;
    }
    std::cout << "acceptance: " << criteria.size() - static_cast<size_t>(failures) << "/"
              << criteria.size() << " passed\n";
    return failures;
}
