#include <doctest.h>

#include "raag/matrix.h"

using namespace raag;

static QMat qm(int r, int c, std::vector<long> v) {
    QMat m(r, c);
    for (size_t i = 0; i < v.size(); ++i) m.a[i] = Rat(v[i]);
    return m;
}

TEST_CASE("matrix multiply and power") {
    QMat a = qm(2, 2, {1, 1, 0, 1});
    QMat p = qm_pow(a, 5);
    CHECK(p.at(0, 1) == 5);
    CHECK(qm_mul(a, QMat::identity(2)) == a);
    CHECK(qm_pow(a, 0).is_identity());
}

TEST_CASE("rref, rank, det") {
    QMat a = qm(2, 2, {1, 2, 2, 4});
    CHECK(qm_rank(a) == 1);
    CHECK(qm_det(a) == 0);
    CHECK(qm_det(qm(2, 2, {1, 2, 3, 4})) == -2);
    QMat f(2, 2);
    f.at(0, 0) = make_rat(1, 2);
    f.at(0, 1) = make_rat(1, 3);
    f.at(1, 0) = make_rat(1, 4);
    f.at(1, 1) = make_rat(1, 5);
    CHECK(qm_det(f) == make_rat(1, 60));
    QMat r = qm(3, 3, {1, 2, 3, 2, 4, 6, 1, 1, 1});
    auto piv = qm_rref(r);
    CHECK(piv == std::vector<int>{0, 1});
}

TEST_CASE("inverse and solve") {
    QMat a = qm(2, 2, {2, 1, 1, 1});
    auto inv = qm_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(qm_mul(a, *inv).is_identity());
    CHECK_FALSE(qm_inverse(qm(2, 2, {1, 2, 2, 4})).has_value());

    auto x = qm_solve(a, {Rat(3), Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(qm_solve(qm(2, 2, {1, 1, 1, 1}), {Rat(0), Rat(1)}).has_value());
    // underdetermined: free variable pinned to zero, still a solution
    auto u = qm_solve(qm(1, 2, {1, 1}), {Rat(5)});
    REQUIRE(u.has_value());
    CHECK((*u)[0] + (*u)[1] == 5);
}

TEST_CASE("characteristic polynomials") {
    CHECK(qm_char_poly(qm(2, 2, {0, 1, -1, 0})).c == std::vector<Rat>{1, 0, 1});  // x^2+1
    CHECK(qm_char_poly(qm(2, 2, {1, 1, 0, 1})).c == std::vector<Rat>{1, -2, 1}); // (x-1)^2
    // companion matrix of x^3 - 2x^2 + 5x - 7 reproduces it
    QMat c = qm(3, 3, {0, 0, 7, 1, 0, -5, 0, 1, 2});
    auto ch = qm_char_poly(c);
    CHECK(ch.c == std::vector<Rat>{-7, 5, -2, 1});
    // Cayley-Hamilton spot check
    QMat acc(3, 3);
    for (int k = 3; k >= 0; --k) acc = qm_add(qm_mul(acc, c), qm_scale(QMat::identity(3), ch.c[k]));
    CHECK(acc.is_zero());
}
