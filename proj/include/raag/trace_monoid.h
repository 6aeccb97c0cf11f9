#pragma once
#include <map>
#include <string>
#include <vector>

#include "raag/graph.h"
#include "raag/rational.h"

namespace raag {

using Word = std::vector<int>;

// The associative algebra presented by the same commutation relations as the
// Lie algebra of the graph: monomials are words in the vertices modulo
// swapping NON-adjacent neighbors. It is the universal envelope of the
// partially commutative Lie algebra, so a homogeneous Lie element of degree
// <= c vanishes in the c-step quotient iff its expansion here vanishes.

// Lexicographically least word in the commutation class of w.
Word trace_normal_form(const Graph& g, const Word& w);

// Sparse element: normal-form monomial -> coefficient, zeros dropped.
using TraceElement = std::map<Word, Rat>;

TraceElement trace_add(const TraceElement& a, const TraceElement& b);
TraceElement trace_scale(const TraceElement& a, const Rat& s);
// Concatenation product followed by normalization.
TraceElement trace_mul(const Graph& g, const TraceElement& a, const TraceElement& b);
// ab - ba.
TraceElement trace_bracket(const Graph& g, const TraceElement& a, const TraceElement& b);

// FNV-1a digest of the canonical serialization, for certificate binding.
std::string trace_digest(const TraceElement& t);

} // namespace raag
