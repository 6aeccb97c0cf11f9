#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "raag/graded_aut.h"
#include "raag/graph.h"
#include "raag/lie.h"
#include "raag/matrix.h"
#include "raag/poly.h"
#include "raag/rational.h"

namespace raag {

// ---------------------------------------------------------------------------
// Unimodular complex numbers e^{i pi q} as exact rationals q in [0, 2)

struct AngleRat {
    Rat q; // reduced mod 2
    AngleRat() : q(0) {}
    explicit AngleRat(const Rat& v);
    bool is_one() const { return q == 0; }
    bool operator==(const AngleRat& o) const { return q == o.q; }
};
AngleRat angle_add(const AngleRat& a, const AngleRat& b);
// Angle of the t-th k-th root of sign (+1 or -1), t in 1..k:
// sign +1 -> 2(t-1)/k, sign -1 -> (2t-1)/k.
AngleRat root_angle(int k, int t, int sign);

// ---------------------------------------------------------------------------
// Pinned polynomial family for lower-bound witnesses

// Monic integer polynomial of degree d >= 1 with root product -1, constant
// term (-1)^{d+1}, and (for d >= 2) a single real root > 1 dominating d-1
// roots strictly inside the unit circle. All of that is re-verified here by
// exact Sturm counts and scaled disk counts; a failure is a theorem_error.
ZPoly pisot_family_poly(int d);

// Replaces p_i by the polynomial of the m_i-th root powers, m_i odd, so that
// no unbalanced selection of roots with total multiplicity <= c multiplies
// to 1. Checked by composed-product arithmetic with a mod-p prescreen;
// `budget` caps the number of multiplicity vectors visited.
struct SafePolys {
    std::vector<ZPoly> polys;
    std::vector<long> exponents; // one odd m_i per input
};
SafePolys make_exponent_safe(const std::vector<ZPoly>& polys, int c, long budget = 100000);

// ---------------------------------------------------------------------------
// Lower-bound witness: an automorphism whose layers 1..c all avoid
// eigenvalue 1, for c = xi(graph) - 1

struct SpectralItem {
    std::vector<int> pattern; // per-vertex multiplicity, grouped by component
    // "selection": selection product certified nonzero mod `prime`;
    // "balanced-odd": balanced vector, root product -1 by parity;
    // "balanced-split": balanced vector whose support cannot carry a
    // nonzero element (disconnected, or one vertex with multiplicity >= 2).
    std::string kind;
    uint64_t prime = 0;
    uint64_t residue = 0;
};

struct LowerBoundWitness {
    Graph graph;
    int xi_value = 0;
    int c = 0;
    bool abelian_special = false; // xi == 2: witness on the abelianization
    std::vector<std::vector<int>> components;
    std::vector<ZPoly> polys;    // safe polynomial per component
    std::vector<long> exponents; // odd powers chosen by make_exponent_safe
    QMat B;                      // block companion assembly on degree 1
    std::string mode;            // "abelian" | "direct" | "spectral"
    std::vector<Rat> dets;       // direct/abelian: det(M_d - I), d = 1..c
    std::vector<SpectralItem> items; // spectral: one entry per multiplicity vector
    // resource policy the witness was built under, kept for reproducibility
    long dim_cap = 5000, det_cap = 300, budget = 100000;
};

// Layer dimensions 1..c of the quotient Lie algebra, from the alternating
// independent-set series alone (no basis build).
std::vector<long> quotient_layer_dims(const Graph& g, int c);
// True when every free layer fits dim_cap and every quotient layer fits
// det_cap, so layer matrices can be materialized through degree c.
bool direct_layers_feasible(const Graph& g, int c, long dim_cap, long det_cap);

LowerBoundWitness lower_bound_witness(const Graph& g, long dim_cap = 5000, long det_cap = 300,
                                      long budget = 100000);
// Recomputes the whole witness from its graph under the stored resource
// policy and compares field by field, then re-checks every nonvanishing
// claim. Any mismatch is a theorem_error.
void verify_lower_bound_witness(const LowerBoundWitness& w);
json witness_to_doc(const LowerBoundWitness& w);
LowerBoundWitness witness_from_doc(const json& doc);

// ---------------------------------------------------------------------------
// Root-of-unity index selection

struct RootIndexResult {
    int item = 0; // clause number within the statement
    int s = 1;    // index on the first (k-)side
    int t = 1;    // index on the second (l-)side
    std::optional<int> r; // second k-side index when the k-side doubles
    Rat parity_value;     // the even integer witnessing the angle identity
};

// Indices with R_{k,s}(sign1) * R_{l,t}(sign2) = 1 (doubling the first
// factor when the statement requires it). Lexicographically smallest
// solution; hypothesis failures are domain_errors naming the parity
// obstruction.
RootIndexResult root_index_same_sign(int k, int l, int sign1, int sign2);
// First factor carries -1, second +1: R_{k,s}(-1) [* R_{k,r}(-1)] * R_{l,t}(1) = 1.
RootIndexResult root_index_diff_sign(int k, int l);
// Per-factor indices s_1..s_n with prod R_{k,s_i}(sign_i) = R_{k,s}(prod sign_i);
// all but the first are 1.
std::vector<int> distribute_root_indices(int k, int s, const std::vector<int>& factor_signs);

// ---------------------------------------------------------------------------
// Upper-bound certificate: a nonzero element of the layer at degree <= Xi
// fixed by the induced action, for any quotient automorphism and sign choice

struct CertSymbol {
    std::string name;
    int kappa = -1;           // marked vertex carried by this eigenvector
    int weight = 1;           // multiplicity in the bracket word
    std::vector<int> support; // vertex per class along the cycle
};

struct UpperBoundCertificate {
    Graph graph;
    int Xi_value = 0;
    int c = 0; // certificate degree bound (= Xi_value)
    std::pair<int, int> qedge; // chosen class pair, a <= b
    std::vector<std::vector<int>> psi_cycles;
    std::vector<int> cycle_signs; // +-1 per cycle, canonical order
    // "P1" | "P2" | "P3": distinct cycles, weights n+m / 2n+m / n+2m;
    // "diagonal": one cycle, class size >= 2, weight 2n;
    // "cycle-sum": one cycle of singleton classes, sign +1, degree 1;
    // "cycle-pair": one cycle of singleton classes, sign -1, degree 2.
    std::string case_tag;
    int k = 1, l = 1; // cycle lengths (lambda-side, mu-side)
    int n = 1, m = 1; // class sizes
    std::string lemma; // "same-sign" | "diff-sign" | "" ; swapped roles noted
    RootIndexResult indices;
    std::vector<CertSymbol> symbols;
    std::string bracket_word; // nested pairs over symbol names
    int degree = 0;           // total weight
    std::string value_digest; // digest of the trace expansion
    long value_terms = 0;
    std::string value_leading; // lex-least normal form in the expansion
};

UpperBoundCertificate upper_bound_certificate(const Graph& g, const std::vector<int>& psi,
                                              const std::vector<int>& cycle_signs);
// Rebuilds the certificate from (graph, psi, signs) and compares, then
// re-checks the angle identity and re-evaluates the bracket word under three
// distinct placeholder coefficient sets, all of which must be nonzero.
void verify_upper_bound_certificate(const UpperBoundCertificate& cert);
json certificate_to_doc(const UpperBoundCertificate& cert);
UpperBoundCertificate certificate_from_doc(const json& doc);

// ---------------------------------------------------------------------------
// Transposition-free graphs: degree <= 2 eigenvectors for every sign choice

// Cycles of a vertex permutation, each starting at its minimum, sorted.
std::vector<std::vector<int>> vertex_cycles(const std::vector<int>& psi);

struct EdgeCase {
    int item = 0;     // 1: edge inside one cycle; 2: edge joining two cycles
    int i = 0, j = 0; // cycle indices (item 2; i == j for item 1)
    int s = 0, t = 0; // 1-based positions within the cycles
};
// For a non-empty transposition-free graph and any automorphism: either an
// edge inside one cycle, or an edge joining cycles i, j whose lengths obey
// lcm(k_i,k_j) (1/k_i + 1/k_j) even. Scans edges in order, preferring item 1.
EdgeCase transposition_free_case(const Graph& g, const std::vector<int>& psi);

struct Index2Witness {
    std::string case_tag; // "C1" | "C2" | "C3"
    int cycle_i = -1, cycle_j = -1;
    int s = 0, t = 0; // 1-based positions used by C2/C3
    int length = 0;   // number of summed brackets
    LieElement x;
    QMat degree1; // signed permutation matrix the construction is fixed by
};
// A nonzero element of degree <= 2 fixed by the signed-permutation extension
// of psi, for every sign vector over psi's cycles; L must have c >= 2.
Index2Witness index2_eigenvector(const Graph& g, const GradedPcLie& L,
                                 const std::vector<int>& psi, const std::vector<int>& signs);

// ---------------------------------------------------------------------------
// Sampling and census

// Pseudo-random integer member of the graded automorphism group on degree 1:
// a product of <= max_factors transvections, permutation parts, and
// unimodular block companions.
QMat sample_integer_member(const Graph& g, SmallRng& rng, int max_factors = 12);

struct CensusGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    bool transposition_free = false;
    int xi_value = 0, Xi_value = 0; // 0 when edgeless
};
struct CensusRow {
    int n = 0;
    long graphs = 0, transposition_free = 0, nonempty = 0;
    int min_xi = 0, max_Xi = 0; // over non-empty graphs; 0 when none
    std::map<std::pair<int, int>, long> bound_pairs; // (xi, Xi) -> count
};
struct CensusResult {
    std::vector<CensusRow> rows;
    std::vector<CensusGraph> detail; // filled when requested
};
// Isomorphism census of all graphs on 1..n_max vertices (n_max <= 7) with
// bound statistics; byte-identical output for every jobs count.
CensusResult census(int n_max, int jobs = 1, bool want_detail = false);
json census_to_doc(const CensusResult& r);

// ---------------------------------------------------------------------------
// Report

// (xi, Xi); domain_error when the graph has no edge.
std::pair<int, int> bounds(const Graph& g);
// Full analysis document: invariants, quotient, bounds, the pinned index
// statement. Bounds are null for edgeless graphs.
json analyze_graph(const Graph& g);

} // namespace raag
