#include "raag/graded_aut.h"

#include <algorithm>
#include <map>

#include "raag/error.h"

namespace raag {

QMat transvection(const Graph& g, int v, int w, const Rat& t) {
    if (v < 0 || v >= g.n || w < 0 || w >= g.n || v == w)
        throw domain_error("transvection: vertices must be distinct and in range");
    if (!dominates(g, v, w))
        throw domain_error("transvection: " + g.labels[v] + " does not dominate " + g.labels[w]);
    if (equivalent(g, v, w))
        throw domain_error("transvection: " + g.labels[v] + " and " + g.labels[w] +
                           " are equivalent, transvections require inequivalent vertices");
    QMat m = QMat::identity(g.n);
    m.at(v, w) += t;
    return m;
}

QMat perm_part(const QuotientGraph& q, const std::vector<int>& psi) {
    std::vector<int> r = section_r(q, psi);
    int n = static_cast<int>(r.size());
    QMat m(n, n);
    for (int v = 0; v < n; ++v) m.at(r[v], v) = 1;
    return m;
}

QMat block_companion(const QuotientGraph& q, const std::vector<int>& cycle, const QMat& B) {
    if (cycle.empty()) throw domain_error("block_companion: empty cycle");
    int nclasses = q.size();
    int size = -1;
    for (int c : cycle) {
        if (c < 0 || c >= nclasses) throw domain_error("block_companion: class index out of range");
        int s = static_cast<int>(q.partition.classes[c].size());
        if (size == -1) size = s;
        if (s != size) throw domain_error("block_companion: classes in a cycle must have equal size");
    }
    {
        std::vector<int> sorted = cycle;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw domain_error("block_companion: repeated class in cycle");
    }
    if (B.rows != size || B.cols != size)
        throw domain_error("block_companion: block dimension must match the class size");
    int n = 0;
    for (const auto& cls : q.partition.classes) n += static_cast<int>(cls.size());
    QMat m = QMat::identity(n);
    int k = static_cast<int>(cycle.size());
    for (int j = 0; j < k; ++j) {
        const auto& src = q.partition.classes[cycle[j]];
        for (int col = 0; col < size; ++col)
            for (int row = 0; row < n; ++row) m.at(row, src[col]) = 0;
    }
    for (int j = 0; j < k; ++j) {
        const auto& src = q.partition.classes[cycle[j]];
        if (j + 1 < k) {
            const auto& dst = q.partition.classes[cycle[j + 1]];
            for (int col = 0; col < size; ++col) m.at(dst[col], src[col]) = 1;
        } else {
            const auto& dst = q.partition.classes[cycle[0]];
            for (int col = 0; col < size; ++col)
                for (int row = 0; row < size; ++row) m.at(dst[row], src[col]) = B.at(row, col);
        }
    }
    return m;
}

CycleDecomposition cycle_decomposition(const QuotientGraph& q, const std::vector<int>& psi) {
    int n = q.size();
    if (static_cast<int>(psi.size()) != n)
        throw domain_error("cycle_decomposition: permutation length must equal the class count");
    std::vector<bool> hit(n, false);
    for (int c : psi) {
        if (c < 0 || c >= n || hit[c]) throw domain_error("cycle_decomposition: not a permutation");
        hit[c] = true;
    }
    CycleDecomposition out;
    std::vector<bool> seen(n, false);
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<int> cycle;
        int c = start;
        do {
            seen[c] = true;
            cycle.push_back(c);
            c = psi[c];
        } while (c != start);
        int size = static_cast<int>(q.partition.classes[start].size());
        for (int cls : cycle)
            if (static_cast<int>(q.partition.classes[cls].size()) != size)
                throw domain_error("cycle_decomposition: cycle mixes classes of different sizes");
        out.cycles.push_back(std::move(cycle));
        out.sizes.push_back(size);
    }
    return out;
}

namespace {

LieElement column_element(const QMat& M, int v) {
    LieElement e;
    e.degree = 1;
    for (int row = 0; row < M.rows; ++row)
        if (M.at(row, v) != 0) e.coeff[row] = M.at(row, v);
    return e;
}

void check_square(const GradedPcLie& L, const QMat& M, const char* who) {
    if (M.rows != L.graph.n || M.cols != L.graph.n)
        throw domain_error(std::string(who) + ": matrix dimension must equal the vertex count");
}

// Image of a Lyndon word under the graded extension, memoized across degrees.
const LieElement& word_image(const GradedPcLie& L, const QMat& M, const Word& w,
                             std::map<Word, LieElement>& memo) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    LieElement img;
    if (w.size() == 1) {
        img = column_element(M, w[0]);
    } else {
        auto [u, v] = standard_factorization(w);
        const LieElement& iu = word_image(L, M, u, memo);
        const LieElement& iv = word_image(L, M, v, memo);
        img = lie_bracket(L, iu, iv);
    }
    return memo.emplace(w, std::move(img)).first->second;
}

} // namespace

bool is_graded_extension(const GradedPcLie& L, const QMat& M) {
    check_square(L, M, "is_graded_extension");
    if (qm_det(M) == 0) throw domain_error("is_graded_extension: matrix is singular");
    if (L.c < 2) return true;
    const Graph& g = L.graph;
    for (int v = 0; v < g.n; ++v)
        for (int w = v + 1; w < g.n; ++w) {
            if (g.adjacent(v, w)) continue;
            LieElement img =
                lie_bracket(L, column_element(M, v), column_element(M, w));
            if (!img.is_zero()) return false;
        }
    return true;
}

std::vector<QMat> induced_layer_maps(const GradedPcLie& L, const QMat& M, int upto) {
    if (upto < 1 || upto > L.c)
        throw domain_error("induced_layer_maps: degree bound must lie in [1, c]");
    if (!is_graded_extension(L, M))
        throw domain_error("induced_layer_maps: matrix is not a graded automorphism");
    std::vector<QMat> maps(upto + 1);
    maps[1] = M;
    std::map<Word, LieElement> memo;
    for (int d = 2; d <= upto; ++d) {
        int dim = L.dim(d);
        QMat A(dim, dim);
        for (int j = 0; j < dim; ++j) {
            const LieElement& img = word_image(L, M, L.basis[d][j], memo);
            for (const auto& [i, c] : img.coeff) A.at(i, j) = c;
        }
        maps[d] = std::move(A);
    }
    return maps;
}

QMat induced_layer_map(const GradedPcLie& L, const QMat& M, int degree) {
    return induced_layer_maps(L, M, degree)[degree];
}

bool is_integer_like(const QMat& a) {
    if (a.rows != a.cols) throw domain_error("is_integer_like: matrix must be square");
    QPoly chi = qm_char_poly(a);
    for (const Rat& c : chi.c)
        if (c.get_den() != 1) return false;
    Rat constant = chi.c.empty() ? Rat(1) : chi.c[0];
    return constant == 1 || constant == -1;
}

std::pair<bool, std::vector<Rat>> has_eigenvalue_one_upto(const GradedPcLie& L, const QMat& M,
                                                          int bound) {
    std::vector<QMat> maps = induced_layer_maps(L, M, bound);
    std::vector<Rat> dets;
    bool found = false;
    for (int d = 1; d <= bound; ++d) {
        int dim = maps[d].rows;
        QMat shifted = maps[d];
        for (int i = 0; i < dim; ++i) shifted.at(i, i) -= 1;
        Rat det = qm_det(shifted);
        if (det == 0) found = true;
        dets.push_back(det);
    }
    return {found, dets};
}

namespace {

// extended euclid: returns (d, u, v) with u a + v b = d, d monic (or zero)
std::tuple<QPoly, QPoly, QPoly> qp_extgcd(QPoly a, QPoly b) {
    QPoly one(std::vector<Rat>{Rat(1)});
    QPoly r0 = a, r1 = b;
    QPoly s0 = one, s1;
    QPoly t0, t1 = one;
    while (r1.degree() >= 0) {
        QPoly quo, rem;
        qp_divmod(r0, r1, quo, rem);
        QPoly s2 = qp_sub(s0, qp_mul(quo, s1));
        QPoly t2 = qp_sub(t0, qp_mul(quo, t1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() < 0) return {r0, s0, t0};
    Rat lead = r0.c.back();
    for (auto& c : r0.c) c /= lead;
    for (auto& c : s0.c) c /= lead;
    for (auto& c : t0.c) c /= lead;
    return {r0, s0, t0};
}

QMat qm_poly_eval(const QPoly& p, const QMat& x) {
    int n = x.rows;
    QMat acc(n, n);
    for (size_t k = p.c.size(); k-- > 0;) {
        acc = qm_mul(acc, x);
        for (int i = 0; i < n; ++i) acc.at(i, i) += p.c[k];
    }
    return acc;
}

} // namespace

QMat jordan_chevalley_semisimple(const QMat& a) {
    if (a.rows != a.cols) throw domain_error("jordan_chevalley_semisimple: matrix must be square");
    int n = a.rows;
    if (n == 0) return a;
    QPoly chi = qm_char_poly(a);
    QPoly g, rem;
    qp_divmod(chi, qp_gcd(chi, qp_derivative(chi)), g, rem);
    auto [d, u, v] = qp_extgcd(g, qp_derivative(g));
    if (d.degree() != 0)
        throw theorem_error("jordan_chevalley_semisimple: squarefree part must be coprime to its derivative");
    QMat x = a;
    for (int iter = 0; iter < n + 2; ++iter) {
        QMat gx = qm_poly_eval(g, x);
        if (gx.is_zero()) return x;
        x = qm_sub(x, qm_mul(gx, qm_poly_eval(v, x)));
    }
    throw theorem_error("jordan_chevalley_semisimple: Newton iteration failed to converge");
}

namespace {

// Column-style Hermite reduction: an integer basis of the lattice spanned by
// the columns of gen (full row rank required).
std::vector<std::vector<Int>> lattice_basis(std::vector<std::vector<Int>> gen, int n) {
    // gen: list of columns, each of length n
    std::vector<std::vector<Int>> basis;
    for (int row = 0; row < n; ++row) {
        // gcd-reduce all columns with a nonzero entry in this row
        while (true) {
            int best = -1;
            for (size_t j = 0; j < gen.size(); ++j) {
                if (gen[j][row] == 0) continue;
                if (best == -1 || abs(gen[j][row]) < abs(gen[best][row])) best = static_cast<int>(j);
            }
            if (best == -1) throw theorem_error("lattice_basis: generators do not span full rank");
            bool reduced_all = true;
            for (size_t j = 0; j < gen.size(); ++j) {
                if (static_cast<int>(j) == best || gen[j][row] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), gen[j][row].get_mpz_t(), gen[best][row].get_mpz_t());
                for (int i = 0; i < n; ++i) gen[j][i] -= q * gen[best][i];
                if (gen[j][row] != 0) reduced_all = false;
            }
            if (reduced_all) {
                if (gen[best][row] < 0)
                    for (int i = 0; i < n; ++i) gen[best][i] = -gen[best][i];
                basis.push_back(gen[best]);
                gen.erase(gen.begin() + best);
                break;
            }
        }
        // later rows only: clear this row from the remaining columns using the
        // new basis vector (entries above stay zero by induction)
    }
    return basis; // lower-triangular echelon: basis[row][row] > 0
}

} // namespace

ReducedForm reduced_form(const Graph& g, const GradedPcLie& L, const QMat& M) {
    if (g.n != L.graph.n || g.edges != L.graph.edges)
        throw domain_error("reduced_form: graph does not match the graded algebra");
    if (!is_graded_extension(L, M))
        throw domain_error("reduced_form: matrix is not a graded automorphism");
    if (!is_integer_like(M)) throw domain_error("reduced_form: matrix is not integer-like");

    QMat S = jordan_chevalley_semisimple(M);
    if (!is_graded_extension(L, S))
        throw theorem_error("reduced_form: semisimple part must remain a graded automorphism");

    CoherentPartition part = coherent_components(g);
    QuotientGraph q = quotient_graph(g);
    int nclasses = part.size();

    // read the class permutation off the span action
    std::vector<int> psi(nclasses, -1);
    for (int a = 0; a < nclasses; ++a) {
        int target = -1;
        for (int v : part.classes[a])
            for (int row = 0; row < g.n; ++row) {
                if (S.at(row, v) == 0) continue;
                int b = part.class_of[row];
                if (target == -1) target = b;
                if (b != target)
                    throw domain_error(
                        "reduced_form: not reduced, the semisimple part does not permute component spans");
            }
        psi[a] = target;
    }
    {
        std::vector<bool> hit(nclasses, false);
        for (int b : psi) {
            if (b < 0 || hit[b])
                throw theorem_error("reduced_form: span action of the semisimple part must be a permutation");
            hit[b] = true;
        }
        for (int a = 0; a < nclasses; ++a)
            if (part.classes[a].size() != part.classes[psi[a]].size())
                throw theorem_error("reduced_form: span permutation must preserve class sizes");
        for (const auto& e : q.qedges) {
            int ia = psi[e.first], ib = psi[e.second];
            if (!q.has_qedge(std::min(ia, ib), std::max(ia, ib)))
                throw theorem_error("reduced_form: span permutation must preserve quotient edges");
        }
    }

    CycleDecomposition cycles = cycle_decomposition(q, psi);
    QMat h(g.n, g.n);
    std::vector<QMat> blocks;

    for (size_t ci = 0; ci < cycles.cycles.size(); ++ci) {
        const std::vector<int>& cycle = cycles.cycles[ci];
        int k = static_cast<int>(cycle.size());
        int size = cycles.sizes[ci];
        const std::vector<int>& lead = part.classes[cycle[0]];

        QMat Sk = qm_pow(S, k);
        QMat Bt(size, size);
        for (int col = 0; col < size; ++col)
            for (int row = 0; row < g.n; ++row) {
                if (Sk.at(row, lead[col]) == 0) continue;
                if (part.class_of[row] != cycle[0])
                    throw theorem_error("reduced_form: cycle power must stabilize the leading span");
                int r = static_cast<int>(std::lower_bound(lead.begin(), lead.end(), row) - lead.begin());
                Bt.at(r, col) = Sk.at(row, lead[col]);
            }

        // integral form: a basis of the smallest lattice containing the unit
        // vectors and stable under Bt (stability follows from the integral
        // characteristic polynomial)
        QMat gi = QMat::identity(size);
        bool integral = true;
        for (int i = 0; i < size && integral; ++i)
            for (int j = 0; j < size && integral; ++j)
                if (Bt.at(i, j).get_den() != 1) integral = false;
        QMat B = Bt;
        if (!integral) {
            Int den = 1;
            std::vector<QMat> powers{QMat::identity(size)};
            for (int j = 1; j < size; ++j) powers.push_back(qm_mul(powers.back(), Bt));
            for (const QMat& p : powers)
                for (const Rat& e : p.a) den = lcm(den, Int(e.get_den()));
            std::vector<std::vector<Int>> gens;
            for (const QMat& p : powers)
                for (int col = 0; col < size; ++col) {
                    std::vector<Int> vec(size);
                    for (int row = 0; row < size; ++row) {
                        Rat scaled = p.at(row, col) * Rat(den);
                        vec[row] = scaled.get_num();
                    }
                    gens.push_back(std::move(vec));
                }
            auto basis = lattice_basis(std::move(gens), size);
            for (int col = 0; col < size; ++col)
                for (int row = 0; row < size; ++row)
                    gi.at(row, col) = Rat(basis[col][row]) / Rat(den);
            auto inv = qm_inverse(gi);
            if (!inv.has_value()) throw theorem_error("reduced_form: lattice basis must be invertible");
            B = qm_mul(qm_mul(*inv, Bt), gi);
            for (const Rat& e : B.a)
                if (e.get_den() != 1)
                    throw theorem_error("reduced_form: conjugated block must be integral");
        }
        {
            Rat db = qm_det(B);
            if (db != 1 && db != -1)
                throw theorem_error("reduced_form: block determinant must be +-1");
        }
        blocks.push_back(B);

        // conjugator columns: class j of the cycle carries S^j applied to the
        // lattice basis embedded in the leading class
        QMat embedded(g.n, size);
        for (int col = 0; col < size; ++col)
            for (int row = 0; row < size; ++row) embedded.at(lead[row], col) = gi.at(row, col);
        QMat cur = embedded;
        for (int j = 0; j < k; ++j) {
            const std::vector<int>& cls = part.classes[cycle[j]];
            for (int col = 0; col < size; ++col)
                for (int row = 0; row < g.n; ++row) h.at(row, cls[col]) = cur.at(row, col);
            if (j + 1 < k) cur = qm_mul(S, cur);
        }
    }

    QMat R = QMat::identity(g.n);
    for (size_t ci = 0; ci < cycles.cycles.size(); ++ci)
        R = qm_mul(R, block_companion(q, cycles.cycles[ci], blocks[ci]));

    auto hinv = qm_inverse(h);
    if (!hinv.has_value()) throw theorem_error("reduced_form: conjugator must be invertible");
    if (!(qm_mul(qm_mul(*hinv, S), h) == R))
        throw theorem_error("reduced_form: conjugated semisimple part must equal the cycle form");

    QPoly chiM = qm_char_poly(M);
    for (int d = 1; d <= L.c; ++d) {
        QPoly a = qm_char_poly(induced_layer_map(L, M, d));
        QPoly b = qm_char_poly(induced_layer_map(L, R, d));
        if (!(a.c == b.c))
            throw theorem_error("reduced_form: cycle form must match the layer characteristic polynomials");
    }

    ReducedForm out;
    out.cycles = std::move(cycles);
    out.blocks = std::move(blocks);
    out.conjugator = std::move(h);
    out.degree1_char_poly = std::move(chiM);
    return out;
}

json mat_to_doc(const QMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

QMat mat_from_doc(const json& doc) {
    if (!doc.is_array() || doc.empty()) throw parse_error("matrix: expected a nonempty array of rows");
    int rows = static_cast<int>(doc.size());
    if (!doc[0].is_array()) throw parse_error("matrix: rows must be arrays");
    int cols = static_cast<int>(doc[0].size());
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!doc[i].is_array() || static_cast<int>(doc[i].size()) != cols)
            throw parse_error("matrix: ragged rows");
        for (int j = 0; j < cols; ++j) {
            if (!doc[i][j].is_string()) throw parse_error("matrix: entries must be strings");
            m.at(i, j) = parse_rat(doc[i][j].get<std::string>());
        }
    }
    return m;
}

} // namespace raag
