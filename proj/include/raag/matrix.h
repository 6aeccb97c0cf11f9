#pragma once
#include <optional>
#include <vector>
#include "raag/poly.h"
#include "raag/rational.h"

namespace raag {

// Dense rational matrix, row-major.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;
    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}
    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    static QMat identity(int n);
    bool is_identity() const;
    bool is_zero() const;
};

QMat qm_add(const QMat& x, const QMat& y);
QMat qm_sub(const QMat& x, const QMat& y);
QMat qm_mul(const QMat& x, const QMat& y);
QMat qm_scale(const QMat& x, const Rat& s);
QMat qm_transpose(const QMat& x);
QMat qm_pow(QMat x, long e); // e >= 0, square x

// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> qm_rref(QMat& m);
int qm_rank(QMat m);
Rat qm_det(const QMat& m);                 // square
std::optional<QMat> qm_inverse(const QMat& m); // square; nullopt if singular
// Solve M x = b; nullopt if inconsistent; free variables set to 0.
std::optional<std::vector<Rat>> qm_solve(const QMat& m, const std::vector<Rat>& b);

// Characteristic polynomial det(xI - M), monic, via Faddeev-LeVerrier.
QPoly qm_char_poly(const QMat& m);

bool qm_integral(const QMat& m);

} // namespace raag
