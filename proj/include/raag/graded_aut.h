#pragma once
#include <utility>
#include <vector>

#include "raag/graph.h"
#include "raag/lie.h"
#include "raag/matrix.h"
#include "raag/poly.h"

namespace raag {

// Degree-1 maps are square rational matrices over the vertices in global
// order; column v holds the image of v.

// I + t E_{vw}. Requires v strictly dominated by w (open neighborhood of v
// inside the closed one of w) and v, w not equivalent.
QMat transvection(const Graph& g, int v, int w, const Rat& t);

// Permutation matrix of the section of a quotient automorphism.
QMat perm_part(const QuotientGraph& q, const std::vector<int>& psi);

// The cycle matrix T(sigma, B): each class of the cycle maps identically onto
// the next, and the last maps onto the first through B. A 1-cycle places B on
// its single class. All classes in the cycle must share B's dimension.
QMat block_companion(const QuotientGraph& q, const std::vector<int>& cycle, const QMat& B);

struct CycleDecomposition {
    std::vector<std::vector<int>> cycles; // class indices; each cycle starts at its minimum
    std::vector<int> sizes;               // common class size per cycle
};
// Disjoint cycles of a class permutation, 1-cycles included, each rotated to
// start at its smallest class and listed by that class.
CycleDecomposition cycle_decomposition(const QuotientGraph& q, const std::vector<int>& psi);

// Membership in the graded automorphism group: an invertible degree-1 map
// extends to the quotient iff it kills every degree-2 relation.
bool is_graded_extension(const GradedPcLie& L, const QMat& M);

// Matrix of the unique graded extension on the chosen basis of one layer.
QMat induced_layer_map(const GradedPcLie& L, const QMat& M, int degree);
// Layers 1..upto at once; index 0 is an empty placeholder.
std::vector<QMat> induced_layer_maps(const GradedPcLie& L, const QMat& M, int upto);

// Characteristic polynomial has integer coefficients and constant term +-1.
bool is_integer_like(const QMat& a);

// Whether det(M_i - I) vanishes on some layer i <= bound; all determinants
// are returned for certificates.
std::pair<bool, std::vector<Rat>> has_eigenvalue_one_upto(const GradedPcLie& L, const QMat& M,
                                                          int bound);

// The semisimple part S of the multiplicative Jordan decomposition, as a
// polynomial in the input, via the squarefree part of the characteristic
// polynomial and Newton iteration.
QMat jordan_chevalley_semisimple(const QMat& a);

struct ReducedForm {
    CycleDecomposition cycles;
    std::vector<QMat> blocks; // integral, determinant +-1, one per cycle
    QMat conjugator;          // h with h^-1 S h = product of the cycle matrices, S semisimple part
    QPoly degree1_char_poly;
};
// Factor the semisimple part of an integer-like member through a class
// permutation with one integral block per cycle. Fails loudly when the
// semisimple part does not visibly permute the component spans.
ReducedForm reduced_form(const Graph& g, const GradedPcLie& L, const QMat& M);

// Exact-rational matrix serialization: array of rows, entries as strings.
json mat_to_doc(const QMat& m);
QMat mat_from_doc(const json& doc);

} // namespace raag
