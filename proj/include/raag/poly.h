#pragma once
#include <optional>
#include <vector>
#include "raag/rational.h"

namespace raag {

// Dense univariate polynomial over Q; coefficients low -> high, no trailing zeros.
// Empty vector = zero polynomial (degree -1).
struct QPoly {
    std::vector<Rat> c;
    QPoly() = default;
    explicit QPoly(std::vector<Rat> cc) : c(std::move(cc)) { normalize(); }
    void normalize();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& leading() const { return c.back(); }
    Rat eval(const Rat& x) const;
};

// Dense univariate polynomial over Z, same conventions.
struct ZPoly {
    std::vector<Int> c;
    ZPoly() = default;
    explicit ZPoly(std::vector<Int> cc) : c(std::move(cc)) { normalize(); }
    void normalize();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Int& leading() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    Int eval(const Int& x) const;
    bool operator==(const ZPoly& o) const { return c == o.c; }
};

QPoly qp_from(const ZPoly& p);
// Requires every coefficient integral.
ZPoly zp_from(const QPoly& p);
bool qp_integral(const QPoly& p);

QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& s);
QPoly qp_monic(const QPoly& a);
QPoly qp_derivative(const QPoly& a);
// Quotient and remainder; b nonzero.
void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qp_mod(const QPoly& a, const QPoly& b);
// Monic gcd.
QPoly qp_gcd(QPoly a, QPoly b);
// Composition a(b(x)).
QPoly qp_compose(const QPoly& a, const QPoly& b);

ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
// x^deg * p(1/x): coefficient reversal.
ZPoly zp_reverse(const ZPoly& p);

// Sturm sequence of p; counts distinct real roots in the open interval (a, b),
// endpoints must not be roots. b may be +infinity via count_real_roots_above.
struct SturmSeq {
    std::vector<QPoly> seq;
    explicit SturmSeq(const QPoly& p);
    int variations_at(const Rat& x) const;
    int variations_at_pos_inf() const;
    int variations_at_neg_inf() const;
};
int count_real_roots_open(const QPoly& p, const Rat& a, const Rat& b);
int count_real_roots_above(const QPoly& p, const Rat& a); // interval (a, +inf)
int count_real_roots_all(const QPoly& p);

// Number of roots of p (with multiplicity) in the open disk |z| < rho, rho > 0
// rational, via the Schur-Cohn reduction applied to p(rho*x). Returns nullopt
// when the reduction degenerates (some step has |a_0| = |a_n| or vanishes);
// callers retry with a different rho.
std::optional<int> count_roots_in_disk(const ZPoly& p, const Rat& rho);

// Power sums s_1..s_n of the roots of monic p (exact integers; Newton).
std::vector<Int> power_sums(const ZPoly& p, int n);
// Monic degree-n polynomial whose root power sums are s[0..n-1] = s_1..s_n.
// All Newton divisions must be exact (throws theorem_error otherwise).
ZPoly from_power_sums(int n, const std::vector<Int>& s);

// Monic polynomial whose roots are all products a*b, a root of A, b root of B
// (with multiplicity); degree deg(A)*deg(B). Degree capped by `cap`
// (resource_error beyond).
ZPoly composed_product(const ZPoly& A, const ZPoly& B, int cap);
// Monic polynomial whose roots are a^m, a root of A; same degree. m >= 1.
ZPoly composed_power(const ZPoly& A, long m);

// Exact integer  Prod over all selections (a_1,..,a_r), a_j a root of
// polys[j], of (1 - a_1*...*a_r).  All polys monic with |constant| = 1.
// Zero iff some selection of roots multiplies to 1.
Int selection_product_one_minus(std::vector<ZPoly> polys, int cap);
// Same value mod prime (prime > internal composed degree); sound one-sided
// certificate: nonzero mod prime implies nonzero over Z.
uint64_t selection_product_one_minus_modp(std::vector<ZPoly> polys, int cap, uint64_t prime);

// det of n x n integer matrix (row-major), fraction-free Bareiss.
Int int_det(std::vector<Int> a, int n);

} // namespace raag
