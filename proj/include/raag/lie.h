#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "raag/graph.h"
#include "raag/matrix.h"
#include "raag/rational.h"
#include "raag/trace_monoid.h"

namespace raag {

// ---------------------------------------------------------------------------
// Lyndon word machinery for the free Lie algebra

bool is_lyndon(const Word& w);
// All Lyndon words of exactly this length over {0..alphabet-1}, lex order.
std::vector<Word> lyndon_words(int alphabet, int length);
// Dimension of the degree-d layer of the free Lie algebra on n generators.
long witt_dimension(int n, int d);
// w = uv with v the longest proper Lyndon suffix; both factors Lyndon.
std::pair<Word, Word> standard_factorization(const Word& w);

// ---------------------------------------------------------------------------
// Bracket words: binary trees with symbol leaves

struct BracketWord {
    int leaf = -1;                 // leaf symbol when kids is empty
    std::vector<BracketWord> kids; // empty or exactly {left, right}
    bool is_leaf() const { return kids.empty(); }
    int length() const;
    // symbol -> multiplicity
    std::map<int, int> weight() const;
    std::string format(const std::vector<std::string>& names) const;
};
BracketWord bw_leaf(int s);
BracketWord bw_pair(BracketWord a, BracketWord b);
// [s1,[s2,[...,[s_{n-1},s_n]]]]
BracketWord bw_right_normed(const std::vector<int>& seq);
// Standard bracketing of a Lyndon word.
BracketWord lyndon_bracketing(const Word& w);
// Nested-pair notation, e.g. "[[a,b],c]"; names resolved via the map.
BracketWord parse_bracket_word(const std::string& text, const std::map<std::string, int>& symbols);

// ---------------------------------------------------------------------------
// The graded partially commutative Lie algebra, truncated at class c

struct LieElement {
    int degree = 0;
    std::map<int, Rat> coeff; // basis index -> coefficient, zeros dropped
    bool is_zero() const { return coeff.empty(); }
    bool operator==(const LieElement& o) const { return degree == o.degree && coeff == o.coeff; }
};

struct GradedPcLie {
    Graph graph;
    int c = 0;
    // index 0 unused; per degree 1..c
    std::vector<std::vector<Word>> basis;      // quotient basis: non-pivot Lyndon words, lex
    std::vector<std::map<Word, int>> index_of; // word -> index in basis[d]
    // pivot Lyndon words rewritten into the quotient basis of their degree
    std::vector<std::map<Word, std::map<int, Rat>>> pivot_expand;
    std::vector<long> free_dims; // Witt numbers, index 1..c

    int dim(int degree) const { return static_cast<int>(basis[degree].size()); }
    // letter-multiplicity vector (size graph.n) of a basis element
    std::vector<int> weight_of(int degree, int index) const;

    struct ScCache; // bracket structure constants, populated lazily
    std::shared_ptr<ScCache> sc;
};

// Quotient bases per degree: the relation layer is spanned from the degree-2
// commuting pairs by repeated bracketing with degree 1, then row reduced; the
// reduction is blocked by letter multiset, which the elimination preserves.
GradedPcLie build_pc_lie(const Graph& g, int c, long dim_cap = 5000);

// Image of a bracket word with vertex leaves.
LieElement evaluate_bracket_word(const GradedPcLie& L, const BracketWord& b);
// Leaves are symbols indexing degree-1 elements.
LieElement evaluate_bracket_word(const GradedPcLie& L, const BracketWord& b,
                                 const std::vector<LieElement>& leaf_values);
LieElement lie_add(const LieElement& x, const LieElement& y);
LieElement lie_scale(const LieElement& x, const Rat& s);
LieElement lie_bracket(const GradedPcLie& L, const LieElement& x, const LieElement& y);
// degree-1 element from vertex coefficients
LieElement lie_degree1(const GradedPcLie& L, const std::map<int, Rat>& vertex_coeffs);

// Weight as letter-multiplicity map vertex -> multiplicity (zeros omitted).
// Searches right-normed words of the given weight in lex order; right-normed
// images span every layer, so absence after exhaustion decides vanishing.
std::optional<BracketWord> find_nonzero_bracket_word(const GradedPcLie& L,
                                                     const std::map<int, int>& weight);

// Generalized search: abstract symbols W (degree-1 vertex-coefficient maps),
// kappa mapping each symbol to a marked vertex with nonzero coefficient, all
// marked vertices forming a connected set A with |A| >= 2, weight over W with
// full support. Returns a bracket word over W whose expansion in the trace
// algebra is nonzero; total degree must be <= c. Works directly in the trace
// algebra so it stays usable when the layer bases are out of reach.
BracketWord find_nonzero_bracket_word_general(const Graph& g, int c,
                                              const std::vector<std::map<int, Rat>>& W,
                                              const std::vector<int>& kappa,
                                              const std::vector<int>& weight);

// Trace-algebra expansion of a bracket word whose leaves are degree-1
// vertex-coefficient maps; nonzero iff the element is nonzero in every
// truncation at class >= its degree.
TraceElement trace_expand_bracket(const Graph& g, const BracketWord& b,
                                  const std::vector<std::map<int, Rat>>& leaf_values);

// Dimensions / basis summary for golden files.
json pc_lie_to_doc(const GradedPcLie& L);

// Coefficients c_0..c_max of the alternating independent-set polynomial:
// c_k = number of k-subsets of vertices that are pairwise NON-adjacent.
std::vector<Int> clique_series_coeffs(const Graph& g, int max_k);

} // namespace raag
