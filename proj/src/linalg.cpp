#include "serialhom/linalg.hpp"

#include <stdexcept>

namespace serialhom {

QVec QMatrix::apply(const QVec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("QMatrix::apply: size mismatch");
    QVec y(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rational s = 0;
        for (int j = 0; j < cols_; ++j) {
            if (a_[idx(i, j)] != 0) s += a_[idx(i, j)] * x[j];
        }
        y[i] = s;
    }
    return y;
}

int rank(const QMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row; row scaling preserves rank.
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i) {
        Int l = 1;
        for (int j = 0; j < cols; ++j) l = lcm(l, denominator(m.at(i, j)));
        for (int j = 0; j < cols; ++j) a[i][j] = numerator(m.at(i, j)) * (l / denominator(m.at(i, j)));
    }

    Int prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(std::vector<QVec>& rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i) {
            if (rows[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = rows[r][c];
        for (int j = c; j < cols; ++j) rows[r][j] /= inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

}  // namespace

std::vector<QVec> kernel_basis(const QMatrix& a) {
    const int rows = a.rows(), cols = a.cols();
    std::vector<QVec> rr(rows, QVec(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) rr[i][j] = a.at(i, j);
    std::vector<int> pivots = rref(rr, cols);

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<QVec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVec v(cols);
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rr[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMatrix& a, const QVec& b) {
    const int rows = a.rows(), cols = a.cols();
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("solve: rhs size mismatch");
    std::vector<QVec> aug(rows, QVec(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a.at(i, j);
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug, cols + 1);
    QVec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt;  // pivot in rhs column: inconsistent
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

bool is_zero(const QVec& v) {
    for (const Rational& q : v)
        if (q != 0) return false;
    return true;
}

bool Subspace::add(QVec v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < n_; ++j) {
        if (v[j] != 0) {
            p = j;
            break;
        }
    }
    if (p < 0) return false;
    Rational inv = v[p];
    for (int j = p; j < n_; ++j) v[j] /= inv;
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][p] != 0) {
            Rational f = rows_[r][p];
            for (int j = 0; j < n_; ++j) rows_[r][j] -= f * v[j];
        }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

QVec Subspace::reduce(QVec v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("Subspace::reduce: size mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (v[pivots_[r]] != 0) {
            Rational f = v[pivots_[r]];
            for (int j = 0; j < n_; ++j) v[j] -= f * rows_[r][j];
        }
    }
    return v;
}

bool Subspace::contains(const QVec& v) const { return is_zero(reduce(v)); }

}  // namespace serialhom
