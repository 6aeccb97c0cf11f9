#include "raag/poly.h"

#include <algorithm>
#include <cassert>

#include "raag/error.h"

namespace raag {

void QPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
void ZPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}
Int ZPoly::eval(const Int& x) const {
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

QPoly qp_from(const ZPoly& p) {
    std::vector<Rat> c(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) c[i] = Rat(p.c[i]);
    return QPoly(std::move(c));
}
bool qp_integral(const QPoly& p) {
    for (const auto& x : p.c)
        if (x.get_den() != 1) return false;
    return true;
}
ZPoly zp_from(const QPoly& p) {
    std::vector<Int> c(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i].get_den() != 1) throw domain_error("zp_from: non-integral coefficient");
        c[i] = p.c[i].get_num();
    }
    return ZPoly(std::move(c));
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return QPoly(std::move(c));
}
QPoly qp_sub(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return QPoly(std::move(c));
}
QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rat> c(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return QPoly(std::move(c));
}
QPoly qp_scale(const QPoly& a, const Rat& s) {
    std::vector<Rat> c(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i] * s;
    return QPoly(std::move(c));
}
QPoly qp_monic(const QPoly& a) {
    if (a.is_zero()) return a;
    return qp_scale(a, Rat(1) / a.leading());
}
QPoly qp_derivative(const QPoly& a) {
    if (a.c.size() <= 1) return QPoly();
    std::vector<Rat> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(c));
}
void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.is_zero()) throw domain_error("qp_divmod: division by zero polynomial");
    r = a;
    q = QPoly();
    if (r.degree() >= b.degree()) q.c.assign(r.degree() - b.degree() + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Rat f = r.leading() / b.leading();
        q.c[shift] = f;
        for (int i = 0; i <= b.degree(); ++i) r.c[shift + i] -= f * b.c[i];
        r.normalize();
    }
    q.normalize();
}
QPoly qp_mod(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    qp_divmod(a, b, q, r);
    return r;
}
QPoly qp_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = qp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return qp_monic(a);
}
QPoly qp_compose(const QPoly& a, const QPoly& b) {
    QPoly acc;
    for (size_t i = a.c.size(); i-- > 0;) {
        acc = qp_mul(acc, b);
        acc = qp_add(acc, QPoly({a.c[i]}));
    }
    return acc;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return ZPoly(std::move(c));
}
ZPoly zp_neg(const ZPoly& a) {
    std::vector<Int> c(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = -a.c[i];
    return ZPoly(std::move(c));
}
ZPoly zp_reverse(const ZPoly& p) {
    std::vector<Int> c(p.c.rbegin(), p.c.rend());
    return ZPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Sturm sequences

SturmSeq::SturmSeq(const QPoly& p) {
    seq.push_back(p);
    QPoly d = qp_derivative(p);
    if (!d.is_zero()) seq.push_back(d);
    while (seq.size() >= 2 && !seq.back().is_zero()) {
        QPoly r = qp_mod(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(qp_scale(r, Rat(-1)));
    }
}
static int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}
int SturmSeq::variations_at(const Rat& x) const {
    std::vector<int> signs;
    for (const auto& f : seq) signs.push_back(sgn(f.eval(x)));
    return count_variations(signs);
}
int SturmSeq::variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& f : seq) signs.push_back(f.is_zero() ? 0 : sgn(f.leading()));
    return count_variations(signs);
}
int SturmSeq::variations_at_neg_inf() const {
    std::vector<int> signs;
    for (const auto& f : seq) {
        if (f.is_zero()) {
            signs.push_back(0);
            continue;
        }
        int s = sgn(f.leading());
        if (f.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return count_variations(signs);
}

int count_real_roots_open(const QPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw domain_error("count_real_roots_open: zero polynomial");
    if (p.eval(a) == 0 || p.eval(b) == 0)
        throw domain_error("count_real_roots_open: endpoint is a root");
    SturmSeq s(p);
    return s.variations_at(a) - s.variations_at(b);
}
int count_real_roots_above(const QPoly& p, const Rat& a) {
    if (p.is_zero()) throw domain_error("count_real_roots_above: zero polynomial");
    if (p.eval(a) == 0) throw domain_error("count_real_roots_above: endpoint is a root");
    SturmSeq s(p);
    return s.variations_at(a) - s.variations_at_pos_inf();
}
int count_real_roots_all(const QPoly& p) {
    if (p.is_zero()) throw domain_error("count_real_roots_all: zero polynomial");
    SturmSeq s(p);
    return s.variations_at_neg_inf() - s.variations_at_pos_inf();
}

// ---------------------------------------------------------------------------
// Schur-Cohn disk counting

// Roots of f in |z| < 1; nullopt when a reduction step degenerates.
static std::optional<int> unit_disk_count(ZPoly f) {
    int at_zero = 0;
    while (!f.is_zero() && f.c[0] == 0) { // roots at the origin are inside
        f.c.erase(f.c.begin());
        ++at_zero;
    }
    if (f.is_zero()) return std::nullopt;
    if (f.degree() == 0) return at_zero;
    Int gamma = f.c[0] * f.c[0] - f.leading() * f.leading();
    if (gamma == 0) return std::nullopt;
    int d = f.degree();
    ZPoly rev = zp_reverse(f);
    std::vector<Int> tc(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) tc[i] = f.c[0] * f.c[i] - f.leading() * rev.c[i];
    ZPoly tf(std::move(tc));
    if (tf.degree() >= d) throw theorem_error("schur-cohn: reduction did not drop degree");
    auto sub = unit_disk_count(std::move(tf));
    if (!sub) return std::nullopt;
    return at_zero + (gamma > 0 ? *sub : d - *sub);
}

std::optional<int> count_roots_in_disk(const ZPoly& p, const Rat& rho) {
    if (p.is_zero() || rho <= 0) throw domain_error("count_roots_in_disk: bad input");
    // q(x) = p(rho x) * den^deg, integer coefficients; |root(p)| < rho iff
    // the corresponding root of q is in the open unit disk.
    Int num = rho.get_num(), den = rho.get_den();
    int d = p.degree();
    std::vector<Int> c(p.c.size());
    Int np = 1;
    for (int i = 0; i <= d; ++i) {
        c[i] = p.c[i] * np * int_pow(den, static_cast<unsigned long>(d - i));
        np *= num;
    }
    return unit_disk_count(ZPoly(std::move(c)));
}

// ---------------------------------------------------------------------------
// Power sums and composed products

std::vector<Int> power_sums(const ZPoly& p, int n) {
    if (!p.is_monic()) throw domain_error("power_sums: polynomial not monic");
    int d = p.degree();
    // e_k = (-1)^k c_{d-k}
    std::vector<Int> e(d + 1);
    e[0] = 1;
    for (int k = 1; k <= d; ++k) e[k] = (k % 2 ? -p.c[d - k] : p.c[d - k]);
    std::vector<Int> s(n + 1);
    s[0] = d;
    for (int k = 1; k <= n; ++k) {
        Int acc = 0;
        for (int i = 1; i < k && i <= d; ++i) {
            Int t = e[i] * s[k - i];
            acc += (i % 2 ? t : -t);
        }
        if (k <= d) {
            Int t = Int(k) * e[k];
            acc += (k % 2 ? t : -t);
        }
        s[k] = acc;
    }
    return std::vector<Int>(s.begin() + 1, s.end());
}

ZPoly from_power_sums(int n, const std::vector<Int>& s) {
    assert(static_cast<int>(s.size()) >= n);
    std::vector<Int> e(n + 1);
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Int acc = 0;
        for (int i = 1; i <= k; ++i) {
            Int t = e[k - i] * s[i - 1];
            acc += (i % 2 ? t : -t);
        }
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), Int(k).get_mpz_t());
        if (r != 0) throw theorem_error("from_power_sums: non-integral Newton division");
        e[k] = q;
    }
    std::vector<Int> c(n + 1);
    c[n] = 1;
    for (int k = 1; k <= n; ++k) c[n - k] = (k % 2 ? -e[k] : e[k]);
    return ZPoly(std::move(c));
}

ZPoly composed_product(const ZPoly& A, const ZPoly& B, int cap) {
    if (!A.is_monic() || !B.is_monic()) throw domain_error("composed_product: inputs not monic");
    long N = static_cast<long>(A.degree()) * B.degree();
    if (N > cap) throw resource_error("composed_product: degree cap exceeded");
    if (N == 0) return ZPoly({Int(1)});
    auto sa = power_sums(A, static_cast<int>(N));
    auto sb = power_sums(B, static_cast<int>(N));
    std::vector<Int> s(N);
    for (long k = 0; k < N; ++k) s[k] = sa[k] * sb[k];
    return from_power_sums(static_cast<int>(N), s);
}

ZPoly composed_power(const ZPoly& A, long m) {
    if (!A.is_monic()) throw domain_error("composed_power: input not monic");
    if (m < 1) throw domain_error("composed_power: exponent must be >= 1");
    int d = A.degree();
    if (d == 0) return A;
    auto s = power_sums(A, static_cast<int>(d * m));
    std::vector<Int> sm(d);
    for (int k = 1; k <= d; ++k) sm[k - 1] = s[k * m - 1];
    return from_power_sums(d, sm);
}

// ---------------------------------------------------------------------------
// Exact selection products via resultants

Int int_det(std::vector<Int> a, int n) {
    if (n == 0) return Int(1);
    auto at = [&](int i, int j) -> Int& { return a[static_cast<size_t>(i) * n + j]; };
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (at(r, k) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Int(0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = t;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    Int res = at(n - 1, n - 1);
    return sign > 0 ? res : -res;
}

Int selection_product_one_minus(std::vector<ZPoly> polys, int cap) {
    if (polys.empty()) throw domain_error("selection_product: no factors");
    for (const auto& p : polys)
        if (!p.is_monic() || p.degree() < 1)
            throw domain_error("selection_product: factors must be monic of degree >= 1");
    // Fold the composed product over all slots but the smallest-degree one,
    // then evaluate the reversed product at the companion matrix of the last:
    //   prod over roots a of A of rev(S)(a) = det(rev(S)(C_A)),
    // and rev(S)(x) = prod over roots u of S of (1 - u x).
    std::sort(polys.begin(), polys.end(),
              [](const ZPoly& x, const ZPoly& y) { return x.degree() > y.degree(); });
    ZPoly A = polys.back();
    polys.pop_back();
    if (polys.empty()) return A.eval(Int(1)); // A(1) = prod (1 - a)
    ZPoly S = polys[0];
    for (size_t i = 1; i < polys.size(); ++i) S = composed_product(S, polys[i], cap);
    ZPoly revS = zp_reverse(S);
    int d = A.degree();
    auto idx = [d](int i, int j) { return static_cast<size_t>(i) * d + j; };
    std::vector<Int> comp(static_cast<size_t>(d) * d, Int(0));
    for (int i = 1; i < d; ++i) comp[idx(i, i - 1)] = 1;
    for (int i = 0; i < d; ++i) comp[idx(i, d - 1)] = -A.c[i];
    std::vector<Int> R(static_cast<size_t>(d) * d, Int(0));
    for (int i = 0; i < d; ++i) R[idx(i, i)] = revS.c.empty() ? Int(0) : revS.c.back();
    for (int k = revS.degree() - 1; k >= 0; --k) {
        std::vector<Int> next(static_cast<size_t>(d) * d, Int(0));
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) {
                if (R[idx(i, l)] == 0) continue;
                for (int j = 0; j < d; ++j) {
                    if (comp[idx(l, j)] == 0) continue;
                    next[idx(i, j)] += R[idx(i, l)] * comp[idx(l, j)];
                }
            }
        for (int i = 0; i < d; ++i) next[idx(i, i)] += revS.c[k];
        R = std::move(next);
    }
    return int_det(std::move(R), d);
}

// ---------------------------------------------------------------------------
// Mod-p mirror of the selection product (one-sided zero test)

namespace {

struct ModP {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
    uint64_t from_int(const Int& x) const {
        Int m = x % Int(static_cast<unsigned long>(p));
        if (m < 0) m += Int(static_cast<unsigned long>(p));
        return m.get_ui();
    }
};

std::vector<uint64_t> power_sums_modp(const std::vector<uint64_t>& e, int d, int n, const ModP& M) {
    std::vector<uint64_t> s(n + 1, 0);
    s[0] = static_cast<uint64_t>(d) % M.p;
    for (int k = 1; k <= n; ++k) {
        uint64_t acc = 0;
        for (int i = 1; i < k && i <= d; ++i) {
            uint64_t t = M.mul(e[i], s[k - i]);
            acc = (i % 2 ? M.add(acc, t) : M.sub(acc, t));
        }
        if (k <= d) {
            uint64_t t = M.mul(static_cast<uint64_t>(k) % M.p, e[k]);
            acc = (k % 2 ? M.add(acc, t) : M.sub(acc, t));
        }
        s[k] = acc;
    }
    return s;
}

// e_0..e_n from s_1..s_n; requires p > n so the divisions exist.
std::vector<uint64_t> elem_from_power_sums_modp(int n, const std::vector<uint64_t>& s, const ModP& M) {
    std::vector<uint64_t> e(n + 1, 0);
    e[0] = 1;
    for (int k = 1; k <= n; ++k) {
        uint64_t acc = 0;
        for (int i = 1; i <= k; ++i) {
            uint64_t t = M.mul(e[k - i], s[i]);
            acc = (i % 2 ? M.add(acc, t) : M.sub(acc, t));
        }
        e[k] = M.mul(acc, M.inv(static_cast<uint64_t>(k) % M.p));
    }
    return e;
}

uint64_t det_modp(std::vector<uint64_t> a, int n, const ModP& M) {
    if (n == 0) return 1;
    auto at = [&](int i, int j) -> uint64_t& { return a[static_cast<size_t>(i) * n + j]; };
    uint64_t det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (at(r, k) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
            det = M.sub(0, det);
        }
        det = M.mul(det, at(k, k));
        uint64_t ip = M.inv(at(k, k));
        for (int i = k + 1; i < n; ++i) {
            uint64_t f = M.mul(at(i, k), ip);
            if (f == 0) continue;
            for (int j = k; j < n; ++j) at(i, j) = M.sub(at(i, j), M.mul(f, at(k, j)));
        }
    }
    return det;
}

// Elementary symmetric functions e_0..e_d of the roots, reduced mod p.
std::vector<uint64_t> elems_of(const ZPoly& p, const ModP& M) {
    int d = p.degree();
    std::vector<uint64_t> e(d + 1);
    e[0] = 1;
    for (int k = 1; k <= d; ++k) {
        uint64_t v = M.from_int(p.c[d - k]);
        e[k] = (k % 2 ? M.sub(0, v) : v);
    }
    return e;
}

} // namespace

uint64_t selection_product_one_minus_modp(std::vector<ZPoly> polys, int cap, uint64_t prime) {
    if (polys.empty()) throw domain_error("selection_product: no factors");
    for (const auto& p : polys)
        if (!p.is_monic() || p.degree() < 1)
            throw domain_error("selection_product: factors must be monic of degree >= 1");
    ModP M{prime};
    std::sort(polys.begin(), polys.end(),
              [](const ZPoly& x, const ZPoly& y) { return x.degree() > y.degree(); });
    ZPoly A = polys.back();
    polys.pop_back();
    if (polys.empty()) {
        uint64_t acc = 0;
        for (size_t i = A.c.size(); i-- > 0;) acc = M.add(M.mul(acc, 1) /*x=1*/, M.from_int(A.c[i]));
        return acc;
    }
    long N = polys[0].degree();
    for (size_t i = 1; i < polys.size(); ++i) N *= polys[i].degree();
    if (N > cap) throw resource_error("composed_product: degree cap exceeded");
    if (static_cast<uint64_t>(N) >= prime)
        throw domain_error("selection_product_modp: prime too small");
    // Composed product mod p via power sums.
    std::vector<uint64_t> s(N + 1, 0);
    bool first = true;
    for (const auto& q : polys) {
        auto sq = power_sums_modp(elems_of(q, M), q.degree(), static_cast<int>(N), M);
        if (first) {
            s = sq;
            first = false;
        } else {
            for (long k = 1; k <= N; ++k) s[k] = M.mul(s[k], sq[k]);
        }
    }
    std::vector<uint64_t> eS = elem_from_power_sums_modp(static_cast<int>(N), s, M);
    // Coefficients of S low->high: c_{N-k} = (-1)^k e_k; rev(S) low->high is
    // then c_high->low, i.e. revS[j] = c_{N-j} = (-1)^j e_j.
    std::vector<uint64_t> revS(N + 1);
    for (long j = 0; j <= N; ++j) revS[j] = (j % 2 ? M.sub(0, eS[j]) : eS[j]);
    int d = A.degree();
    auto idx = [d](int i, int j) { return static_cast<size_t>(i) * d + j; };
    std::vector<uint64_t> comp(static_cast<size_t>(d) * d, 0);
    for (int i = 1; i < d; ++i) comp[idx(i, i - 1)] = 1;
    for (int i = 0; i < d; ++i) comp[idx(i, d - 1)] = M.sub(0, M.from_int(A.c[i]));
    std::vector<uint64_t> R(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) R[idx(i, i)] = revS[N];
    for (long k = N - 1; k >= 0; --k) {
        std::vector<uint64_t> next(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) {
                if (R[idx(i, l)] == 0) continue;
                for (int j = 0; j < d; ++j)
                    next[idx(i, j)] = M.add(next[idx(i, j)], M.mul(R[idx(i, l)], comp[idx(l, j)]));
            }
        for (int i = 0; i < d; ++i) next[idx(i, i)] = M.add(next[idx(i, i)], revS[k]);
        R = std::move(next);
    }
    return det_modp(std::move(R), d, M);
}

} // namespace raag
