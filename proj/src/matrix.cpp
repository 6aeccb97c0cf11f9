#include "raag/matrix.h"

#include <cassert>

#include "raag/error.h"

namespace raag {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}
bool QMat::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}
bool QMat::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

QMat qm_add(const QMat& x, const QMat& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}
QMat qm_sub(const QMat& x, const QMat& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}
QMat qm_mul(const QMat& x, const QMat& y) {
    assert(x.cols == y.rows);
    QMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rat& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) {
                const Rat& w = y.at(k, j);
                if (w != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}
QMat qm_scale(const QMat& x, const Rat& s) {
    QMat r = x;
    for (auto& v : r.a) v *= s;
    return r;
}
QMat qm_transpose(const QMat& x) {
    QMat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}
QMat qm_pow(QMat x, long e) {
    assert(x.rows == x.cols && e >= 0);
    QMat r = QMat::identity(x.rows);
    while (e) {
        if (e & 1) r = qm_mul(r, x);
        x = qm_mul(x, x);
        e >>= 1;
    }
    return r;
}

std::vector<int> qm_rref(QMat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            Rat f = m.at(r, col);
            if (f == 0) continue;
            for (int j = col; j < m.cols; ++j) m.at(r, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int qm_rank(QMat m) { return static_cast<int>(qm_rref(m).size()); }

Rat qm_det(const QMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    if (n == 0) return Rat(1);
    // Scale each row to integers, then fraction-free Bareiss.
    std::vector<Int> b(static_cast<size_t>(n) * n);
    Rat scale = 1;
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j) l = lcm(l, Int(m.at(i, j).get_den()));
        scale /= Rat(l);
        for (int j = 0; j < n; ++j) {
            Rat v = m.at(i, j) * Rat(l);
            b[static_cast<size_t>(i) * n + j] = v.get_num();
        }
    }
    return Rat(int_det(std::move(b), n)) * scale;
}

std::optional<QMat> qm_inverse(const QMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    QMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = qm_rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
    QMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::optional<std::vector<Rat>> qm_solve(const QMat& m, const std::vector<Rat>& b) {
    assert(static_cast<int>(b.size()) == m.rows);
    QMat aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    auto piv = qm_rref(aug);
    for (int p : piv)
        if (p == m.cols) return std::nullopt; // pivot in the constants column
    std::vector<Rat> x(m.cols, Rat(0));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), m.cols);
    return x;
}

QPoly qm_char_poly(const QMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    std::vector<Rat> cs(n + 1, Rat(0));
    cs[n] = 1;
    QMat B = QMat::identity(n);
    for (int k = 1; k <= n; ++k) {
        QMat M = qm_mul(m, B);
        Rat tr = 0;
        for (int i = 0; i < n; ++i) tr += M.at(i, i);
        Rat ck = tr / Rat(k);
        // char poly = x^n - c_1 x^{n-1} - ... - c_n
        cs[n - k] = -ck;
        B = M;
        for (int i = 0; i < n; ++i) B.at(i, i) -= ck;
    }
    return QPoly(std::move(cs));
}

bool qm_integral(const QMat& m) {
    for (const auto& v : m.a)
        if (v.get_den() != 1) return false;
    return true;
}

} // namespace raag
