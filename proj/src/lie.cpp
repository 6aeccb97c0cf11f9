#include "raag/lie.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <tuple>

#include "raag/error.h"

namespace raag {

namespace {

std::string word_str(const Word& w, const std::vector<std::string>& labels) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += labels[w[i]];
    }
    return s;
}

int mobius(int m) {
    int mu = 1;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) return 0;
        mu = -mu;
    }
    if (m > 1) mu = -mu;
    return mu;
}

} // namespace

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (size_t i = 1; i < w.size(); ++i) {
        Word suffix(w.begin() + i, w.end());
        if (!(w < suffix)) return false;
    }
    return true;
}

std::vector<Word> lyndon_words(int alphabet, int length) {
    if (alphabet < 1 || length < 1) throw domain_error("lyndon_words: alphabet and length must be positive");
    std::vector<Word> out;
    Word w{0};
    if (length == 1) out.push_back(w);
    while (true) {
        Word ext;
        for (int i = 0; i < length; ++i) ext.push_back(w[i % w.size()]);
        w = ext;
        while (!w.empty() && w.back() == alphabet - 1) w.pop_back();
        if (w.empty()) break;
        ++w.back();
        if (static_cast<int>(w.size()) == length) out.push_back(w);
    }
    return out;
}

long witt_dimension(int n, int d) {
    if (n < 1 || d < 1) throw domain_error("witt_dimension: arguments must be positive");
    Int total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        total += mobius(d / e) * int_pow(Int(n), e);
    }
    Int dim = total / d;
    if (!dim.fits_slong_p()) throw resource_error("witt_dimension: layer dimension overflows");
    return dim.get_si();
}

std::pair<Word, Word> standard_factorization(const Word& w) {
    if (w.size() < 2) throw domain_error("standard_factorization: word must have length at least 2");
    size_t best = 1;
    Word best_suffix(w.begin() + 1, w.end());
    for (size_t i = 2; i < w.size(); ++i) {
        Word suffix(w.begin() + i, w.end());
        if (suffix < best_suffix) {
            best = i;
            best_suffix = std::move(suffix);
        }
    }
    Word u(w.begin(), w.begin() + best);
    if (!is_lyndon(u) || !is_lyndon(best_suffix))
        throw theorem_error("standard_factorization: factors of a Lyndon word must be Lyndon");
    return {std::move(u), std::move(best_suffix)};
}

// ---------------------------------------------------------------------------
// Bracket words

int BracketWord::length() const {
    if (is_leaf()) return 1;
    return kids[0].length() + kids[1].length();
}

std::map<int, int> BracketWord::weight() const {
    std::map<int, int> w;
    if (is_leaf()) {
        w[leaf] = 1;
        return w;
    }
    for (const BracketWord& k : kids)
        for (const auto& [s, m] : k.weight()) w[s] += m;
    return w;
}

std::string BracketWord::format(const std::vector<std::string>& names) const {
    if (is_leaf()) {
        if (leaf < 0 || leaf >= static_cast<int>(names.size()))
            throw domain_error("BracketWord::format: leaf symbol out of range");
        return names[leaf];
    }
    return "[" + kids[0].format(names) + "," + kids[1].format(names) + "]";
}

BracketWord bw_leaf(int s) {
    BracketWord b;
    b.leaf = s;
    return b;
}

BracketWord bw_pair(BracketWord a, BracketWord b) {
    BracketWord p;
    p.kids.push_back(std::move(a));
    p.kids.push_back(std::move(b));
    return p;
}

BracketWord bw_right_normed(const std::vector<int>& seq) {
    if (seq.empty()) throw domain_error("bw_right_normed: empty sequence");
    BracketWord b = bw_leaf(seq.back());
    for (size_t i = seq.size() - 1; i-- > 0;) b = bw_pair(bw_leaf(seq[i]), std::move(b));
    return b;
}

BracketWord lyndon_bracketing(const Word& w) {
    if (w.size() == 1) return bw_leaf(w[0]);
    auto [u, v] = standard_factorization(w);
    return bw_pair(lyndon_bracketing(u), lyndon_bracketing(v));
}

namespace {

BracketWord parse_bw(const std::string& s, size_t& pos, const std::map<std::string, int>& symbols) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size()) throw parse_error("bracket word: unexpected end of input");
    if (s[pos] == '[') {
        ++pos;
        BracketWord left = parse_bw(s, pos, symbols);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size() || s[pos] != ',') throw parse_error("bracket word: expected ','");
        ++pos;
        BracketWord right = parse_bw(s, pos, symbols);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size() || s[pos] != ']') throw parse_error("bracket word: expected ']'");
        ++pos;
        return bw_pair(std::move(left), std::move(right));
    }
    size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ']' && s[pos] != '[' &&
           !std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    if (pos == start) throw parse_error("bracket word: empty symbol name");
    std::string name = s.substr(start, pos - start);
    auto it = symbols.find(name);
    if (it == symbols.end()) throw parse_error("bracket word: unknown symbol '" + name + "'");
    return bw_leaf(it->second);
}

} // namespace

BracketWord parse_bracket_word(const std::string& text, const std::map<std::string, int>& symbols) {
    size_t pos = 0;
    BracketWord b = parse_bw(text, pos, symbols);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw parse_error("bracket word: trailing input after expression");
    return b;
}

// ---------------------------------------------------------------------------
// Free associative expansion of Lyndon bracketings

namespace {

using Tensor = std::map<Word, Rat>;

void tensor_accumulate(Tensor& acc, const Word& w, const Rat& coeff) {
    Rat& slot = acc[w];
    slot += coeff;
    if (slot == 0) acc.erase(w);
}

Tensor tensor_bracket(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) {
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            Word vu = v;
            vu.insert(vu.end(), u.begin(), u.end());
            Rat c = cu * cv;
            tensor_accumulate(out, uv, c);
            tensor_accumulate(out, vu, -c);
        }
    return out;
}

const Tensor& tensor_of_lyndon(const Word& w) {
    // node references stay valid under later insertions
    static std::map<Word, Tensor> memo;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }
    Tensor t;
    if (w.size() == 1) {
        t[w] = 1;
    } else {
        auto [u, v] = standard_factorization(w);
        const Tensor& tu = tensor_of_lyndon(u);
        const Tensor& tv = tensor_of_lyndon(v);
        t = tensor_bracket(tu, tv);
    }
    if (t.empty() || t.begin()->first != w || t.begin()->second != 1)
        throw theorem_error("Lyndon bracketing must expand with leading word itself and coefficient 1");
    std::lock_guard<std::mutex> lock(mtx);
    return memo.emplace(w, std::move(t)).first->second;
}

// Express a homogeneous Lie tensor in the Lyndon bracketing basis.
std::map<Word, Rat> lyndon_decompose(Tensor t) {
    std::map<Word, Rat> out;
    while (!t.empty()) {
        Word w = t.begin()->first;
        Rat c = t.begin()->second;
        if (!is_lyndon(w))
            throw theorem_error("leading word of a Lie element must be Lyndon");
        out[w] = c;
        for (const auto& [u, cu] : tensor_of_lyndon(w)) tensor_accumulate(t, u, -c * cu);
    }
    return out;
}

std::vector<int> word_content(int n, const Word& w) {
    std::vector<int> content(n, 0);
    for (int letter : w) ++content[letter];
    return content;
}

// Incrementally maintained reduced echelon basis of one weight block.
struct RowBasis {
    // pivot word -> row (support on the pivot plus non-pivot words, pivot coeff 1)
    std::map<Word, std::map<Word, Rat>> rows;

    void insert(std::map<Word, Rat> r) {
        // eliminate existing pivots from r
        for (auto it = r.begin(); it != r.end();) {
            auto pit = rows.find(it->first);
            if (pit == rows.end()) {
                ++it;
                continue;
            }
            Rat c = it->second;
            for (const auto& [u, cu] : pit->second) {
                Rat& slot = r[u];
                slot -= c * cu;
            }
            for (auto jt = r.begin(); jt != r.end();)
                jt = jt->second == 0 ? r.erase(jt) : std::next(jt);
            it = r.upper_bound(pit->first);
        }
        if (r.empty()) return;
        Rat lead = r.begin()->second;
        Word pivot = r.begin()->first;
        for (auto& [u, cu] : r) cu /= lead;
        // eliminate the new pivot from stored rows
        for (auto& [pw, row] : rows) {
            auto hit = row.find(pivot);
            if (hit == row.end()) continue;
            Rat c = hit->second;
            for (const auto& [u, cu] : r) {
                Rat& slot = row[u];
                slot -= c * cu;
            }
            for (auto jt = row.begin(); jt != row.end();)
                jt = jt->second == 0 ? row.erase(jt) : std::next(jt);
        }
        rows.emplace(std::move(pivot), std::move(r));
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Graded algebra construction

struct GradedPcLie::ScCache {
    std::mutex mtx;
    std::map<std::tuple<int, int, int, int>, std::map<int, Rat>> memo;
};

std::vector<int> GradedPcLie::weight_of(int degree, int index) const {
    return word_content(graph.n, basis[degree][index]);
}

GradedPcLie build_pc_lie(const Graph& g, int c, long dim_cap) {
    if (c < 1) throw domain_error("build_pc_lie: nilpotency class must be at least 1");
    if (g.n < 1) throw domain_error("build_pc_lie: graph must have at least one vertex");
    GradedPcLie L;
    L.graph = g;
    L.c = c;
    L.basis.resize(c + 1);
    L.index_of.resize(c + 1);
    L.pivot_expand.resize(c + 1);
    L.free_dims.assign(c + 1, 0);
    L.sc = std::make_shared<GradedPcLie::ScCache>();
    for (int d = 1; d <= c; ++d) {
        long dim = witt_dimension(g.n, d);
        if (dim > dim_cap)
            throw resource_error("build_pc_lie: free layer at degree " + std::to_string(d) +
                                 " has dimension " + std::to_string(dim) + " exceeding cap " +
                                 std::to_string(dim_cap));
        L.free_dims[d] = dim;
    }

    for (int v = 0; v < g.n; ++v) {
        L.basis[1].push_back(Word{v});
        L.index_of[1][Word{v}] = v;
    }

    // reduced spanning rows of the relation ideal in the previous degree
    std::vector<std::map<Word, Rat>> reduced_prev;
    for (int d = 2; d <= c; ++d) {
        std::vector<std::map<Word, Rat>> incoming;
        if (d == 2) {
            for (int v = 0; v < g.n; ++v)
                for (int w = v + 1; w < g.n; ++w)
                    if (!g.adjacent(v, w)) incoming.push_back({{Word{v, w}, Rat(1)}});
        } else {
            for (int a = 0; a < g.n; ++a)
                for (const auto& r : reduced_prev) {
                    Tensor tr;
                    for (const auto& [w, cw] : r)
                        for (const auto& [u, cu] : tensor_of_lyndon(w))
                            tensor_accumulate(tr, u, cw * cu);
                    Tensor bracketed;
                    for (const auto& [u, cu] : tr) {
                        Word au{a};
                        au.insert(au.end(), u.begin(), u.end());
                        Word ua = u;
                        ua.push_back(a);
                        tensor_accumulate(bracketed, au, cu);
                        tensor_accumulate(bracketed, ua, -cu);
                    }
                    auto row = lyndon_decompose(std::move(bracketed));
                    if (!row.empty()) incoming.push_back(std::move(row));
                }
        }

        // elimination never mixes distinct letter multisets, so reduce blockwise
        std::map<std::vector<int>, RowBasis> blocks;
        for (auto& row : incoming)
            blocks[word_content(g.n, row.begin()->first)].insert(std::move(row));

        std::map<Word, std::map<Word, Rat>> reduced;
        for (auto& [content, block] : blocks)
            for (auto& [pivot, row] : block.rows) reduced.emplace(pivot, std::move(row));

        for (const Word& w : lyndon_words(g.n, d)) {
            if (reduced.count(w)) continue;
            L.index_of[d][w] = static_cast<int>(L.basis[d].size());
            L.basis[d].push_back(w);
        }
        for (const auto& [pivot, row] : reduced) {
            std::map<int, Rat> expansion;
            for (const auto& [u, cu] : row) {
                if (u == pivot) continue;
                expansion[L.index_of[d].at(u)] = -cu;
            }
            L.pivot_expand[d][pivot] = std::move(expansion);
        }

        reduced_prev.clear();
        for (const auto& [pivot, row] : reduced) reduced_prev.push_back(row);
    }
    return L;
}

namespace {

// Reduce a Lyndon-coordinate vector of one degree into the quotient basis.
std::map<int, Rat> reduce_to_basis(const GradedPcLie& L, int d, const std::map<Word, Rat>& coords) {
    std::map<int, Rat> out;
    auto add = [&out](int idx, const Rat& c) {
        Rat& slot = out[idx];
        slot += c;
        if (slot == 0) out.erase(idx);
    };
    for (const auto& [w, cw] : coords) {
        auto it = L.index_of[d].find(w);
        if (it != L.index_of[d].end()) {
            add(it->second, cw);
            continue;
        }
        const auto& expansion = L.pivot_expand[d].at(w);
        for (const auto& [idx, cu] : expansion) add(idx, cw * cu);
    }
    return out;
}

const std::map<int, Rat>& basis_bracket(const GradedPcLie& L, int d1, int i1, int d2, int i2) {
    auto& cache = *L.sc;
    std::tuple<int, int, int, int> key{d1, i1, d2, i2};
    {
        std::lock_guard<std::mutex> lock(cache.mtx);
        auto it = cache.memo.find(key);
        if (it != cache.memo.end()) return it->second;
    }
    Tensor t = tensor_bracket(tensor_of_lyndon(L.basis[d1][i1]), tensor_of_lyndon(L.basis[d2][i2]));
    auto result = reduce_to_basis(L, d1 + d2, lyndon_decompose(std::move(t)));
    std::lock_guard<std::mutex> lock(cache.mtx);
    return cache.memo.emplace(std::move(key), std::move(result)).first->second;
}

} // namespace

LieElement lie_add(const LieElement& x, const LieElement& y) {
    if (x.is_zero()) return y.is_zero() ? x : y;
    if (y.is_zero()) return x;
    if (x.degree != y.degree) throw domain_error("lie_add: degree mismatch");
    LieElement out = x;
    for (const auto& [i, cy] : y.coeff) {
        Rat& slot = out.coeff[i];
        slot += cy;
        if (slot == 0) out.coeff.erase(i);
    }
    return out;
}

LieElement lie_scale(const LieElement& x, const Rat& s) {
    LieElement out;
    out.degree = x.degree;
    if (s == 0) return out;
    for (const auto& [i, cx] : x.coeff) out.coeff[i] = cx * s;
    return out;
}

LieElement lie_bracket(const GradedPcLie& L, const LieElement& x, const LieElement& y) {
    LieElement out;
    out.degree = x.degree + y.degree;
    if (x.is_zero() || y.is_zero()) return out;
    if (out.degree > L.c)
        throw domain_error("lie_bracket: bracket degree " + std::to_string(out.degree) +
                           " exceeds nilpotency class " + std::to_string(L.c));
    for (const auto& [i, cx] : x.coeff)
        for (const auto& [j, cy] : y.coeff) {
            Rat c = cx * cy;
            for (const auto& [k, ck] : basis_bracket(L, x.degree, i, y.degree, j)) {
                Rat& slot = out.coeff[k];
                slot += c * ck;
                if (slot == 0) out.coeff.erase(k);
            }
        }
    return out;
}

LieElement lie_degree1(const GradedPcLie& L, const std::map<int, Rat>& vertex_coeffs) {
    LieElement out;
    out.degree = 1;
    for (const auto& [v, c] : vertex_coeffs) {
        if (v < 0 || v >= L.graph.n) throw domain_error("lie_degree1: vertex out of range");
        if (c == 0) continue;
        out.coeff[v] = c;
    }
    return out;
}

LieElement evaluate_bracket_word(const GradedPcLie& L, const BracketWord& b,
                                 const std::vector<LieElement>& leaf_values) {
    if (b.is_leaf()) {
        if (b.leaf < 0 || b.leaf >= static_cast<int>(leaf_values.size()))
            throw domain_error("evaluate_bracket_word: leaf symbol out of range");
        return leaf_values[b.leaf];
    }
    return lie_bracket(L, evaluate_bracket_word(L, b.kids[0], leaf_values),
                       evaluate_bracket_word(L, b.kids[1], leaf_values));
}

LieElement evaluate_bracket_word(const GradedPcLie& L, const BracketWord& b) {
    std::vector<LieElement> leaves;
    for (int v = 0; v < L.graph.n; ++v) leaves.push_back(lie_degree1(L, {{v, Rat(1)}}));
    return evaluate_bracket_word(L, b, leaves);
}

std::optional<BracketWord> find_nonzero_bracket_word(const GradedPcLie& L,
                                                     const std::map<int, int>& weight) {
    int degree = 0;
    std::vector<int> letters;
    for (const auto& [v, m] : weight) {
        if (v < 0 || v >= L.graph.n) throw domain_error("find_nonzero_bracket_word: vertex out of range");
        if (m < 0) throw domain_error("find_nonzero_bracket_word: negative multiplicity");
        for (int i = 0; i < m; ++i) letters.push_back(v);
        degree += m;
    }
    if (degree < 1 || degree > L.c)
        throw domain_error("find_nonzero_bracket_word: weight degree must lie in [1, c]");
    if (degree == 1) {
        LieElement e = lie_degree1(L, {{letters[0], Rat(1)}});
        if (e.is_zero()) return std::nullopt;
        return bw_leaf(letters[0]);
    }
    std::sort(letters.begin(), letters.end());
    do {
        if (letters[degree - 2] == letters[degree - 1]) continue; // innermost pair vanishes
        BracketWord b = bw_right_normed(letters);
        if (!evaluate_bracket_word(L, b).is_zero()) return b;
    } while (std::next_permutation(letters.begin(), letters.end()));
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Associative expansion with the commutation relations, for degrees where the
// graded basis is out of reach

TraceElement trace_expand_bracket(const Graph& g, const BracketWord& b,
                                  const std::vector<std::map<int, Rat>>& leaf_values) {
    if (b.is_leaf()) {
        if (b.leaf < 0 || b.leaf >= static_cast<int>(leaf_values.size()))
            throw domain_error("trace_expand_bracket: leaf symbol out of range");
        TraceElement t;
        for (const auto& [v, c] : leaf_values[b.leaf]) {
            if (v < 0 || v >= g.n) throw domain_error("trace_expand_bracket: vertex out of range");
            if (c == 0) continue;
            t[Word{v}] = c;
        }
        return t;
    }
    return trace_bracket(g, trace_expand_bracket(g, b.kids[0], leaf_values),
                         trace_expand_bracket(g, b.kids[1], leaf_values));
}

BracketWord find_nonzero_bracket_word_general(const Graph& g, int c,
                                              const std::vector<std::map<int, Rat>>& W,
                                              const std::vector<int>& kappa,
                                              const std::vector<int>& weight) {
    size_t m = W.size();
    if (m == 0 || kappa.size() != m || weight.size() != m)
        throw domain_error("find_nonzero_bracket_word_general: W, kappa, weight must be nonempty and aligned");
    int total = 0;
    for (size_t i = 0; i < m; ++i) {
        if (weight[i] < 1)
            throw domain_error("find_nonzero_bracket_word_general: every symbol must have multiplicity >= 1");
        total += weight[i];
        if (kappa[i] < 0 || kappa[i] >= g.n)
            throw domain_error("find_nonzero_bracket_word_general: marked vertex out of range");
        auto it = W[i].find(kappa[i]);
        if (it == W[i].end() || it->second == 0)
            throw domain_error("find_nonzero_bracket_word_general: marked vertex must carry a nonzero coefficient");
        for (const auto& [v, cv] : W[i])
            if (v < 0 || v >= g.n)
                throw domain_error("find_nonzero_bracket_word_general: symbol support out of range");
    }
    if (total > c)
        throw domain_error("find_nonzero_bracket_word_general: total degree exceeds nilpotency class");

    std::vector<int> marked;
    for (int v : kappa) marked.push_back(v);
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    if (marked.size() < 2)
        throw domain_error("find_nonzero_bracket_word_general: need at least two distinct marked vertices");
    {
        // connectivity of the induced subgraph on the marked set
        std::vector<int> seen{marked[0]};
        std::vector<int> frontier{marked[0]};
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (int w : marked)
                if (g.adjacent(v, w) && std::find(seen.begin(), seen.end(), w) == seen.end()) {
                    seen.push_back(w);
                    frontier.push_back(w);
                }
        }
        if (seen.size() != marked.size())
            throw domain_error("find_nonzero_bracket_word_general: marked vertices must induce a connected subgraph");
    }

    // pushforward weight on the marked vertices, then search a nonzero
    // right-normed word over them
    std::map<int, int> pushed;
    for (size_t i = 0; i < m; ++i) pushed[kappa[i]] += weight[i];
    std::vector<int> letters;
    for (const auto& [v, mult] : pushed)
        for (int i = 0; i < mult; ++i) letters.push_back(v);

    std::vector<std::map<int, Rat>> vertex_leaves;
    for (int v = 0; v < g.n; ++v) vertex_leaves.push_back({{v, Rat(1)}});

    std::vector<int> base;
    std::sort(letters.begin(), letters.end());
    do {
        if (letters.size() >= 2 && letters[letters.size() - 2] == letters.back()) continue;
        BracketWord b = bw_right_normed(letters);
        if (!trace_expand_bracket(g, b, vertex_leaves).empty()) {
            base = letters;
            break;
        }
    } while (std::next_permutation(letters.begin(), letters.end()));
    if (base.empty())
        throw theorem_error("find_nonzero_bracket_word_general: a connected marked set must support a nonzero right-normed word");

    // replace the occurrences of each marked vertex, left to right, by its
    // symbols in ascending order with their multiplicities
    std::map<int, std::vector<int>> queues;
    for (size_t i = 0; i < m; ++i)
        for (int k = 0; k < weight[i]; ++k) queues[kappa[i]].push_back(static_cast<int>(i));
    std::map<int, size_t> cursor;
    std::vector<int> lifted;
    for (int a : base) lifted.push_back(queues.at(a)[cursor[a]++]);

    BracketWord result = bw_right_normed(lifted);
    if (trace_expand_bracket(g, result, W).empty())
        throw theorem_error("find_nonzero_bracket_word_general: lifted bracket word vanished");
    return result;
}

json pc_lie_to_doc(const GradedPcLie& L) {
    json doc;
    doc["n"] = L.graph.n;
    doc["class"] = L.c;
    json dims = json::array(), free_dims = json::array();
    for (int d = 1; d <= L.c; ++d) {
        dims.push_back(L.dim(d));
        free_dims.push_back(L.free_dims[d]);
    }
    doc["dims"] = dims;
    doc["free_dims"] = free_dims;
    json basis;
    for (int d = 1; d <= L.c; ++d) {
        json layer = json::array();
        for (const Word& w : L.basis[d]) layer.push_back(word_str(w, L.graph.labels));
        basis[std::to_string(d)] = layer;
    }
    doc["basis"] = basis;
    return doc;
}

std::vector<Int> clique_series_coeffs(const Graph& g, int max_k) {
    if (max_k < 0) throw domain_error("clique_series_coeffs: max_k must be nonnegative");
    std::vector<Int> counts(max_k + 1, 0);
    counts[0] = 1;
    std::vector<int> chosen;
    std::function<void(int, uint64_t)> go = [&](int start, uint64_t mask) {
        if (static_cast<int>(chosen.size()) >= max_k) return;
        for (int v = start; v < g.n; ++v) {
            if (mask & g.adj[v]) continue;
            chosen.push_back(v);
            counts[chosen.size()] += 1;
            go(v + 1, mask | (uint64_t(1) << v));
            chosen.pop_back();
        }
    };
    go(0, 0);
    return counts;
}

} // namespace raag
