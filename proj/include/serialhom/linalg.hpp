#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace serialhom {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using QVec = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[idx(i, j)]; }
    const Rational& at(int i, int j) const { return a_[idx(i, j)]; }

    QVec apply(const QVec& x) const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + static_cast<size_t>(j); }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> a_;
};

/// Rank by fraction-free (Bareiss) elimination on a denominator-cleared
/// integer copy.
int rank(const QMatrix& m);

/// Basis of the right kernel {x : A x = 0}.
std::vector<QVec> kernel_basis(const QMatrix& a);

/// One solution of A x = b, or nothing when the system is inconsistent.
std::optional<QVec> solve(const QMatrix& a, const QVec& b);

/// Subspace of Q^n kept in reduced row-echelon form; supports incremental
/// growth and reduction of vectors modulo the subspace.
class Subspace {
public:
    explicit Subspace(int ambient) : n_(ambient) {}

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    /// Reduces v modulo the subspace; when the residue is nonzero, inserts it
    /// and returns true.
    bool add(QVec v);
    QVec reduce(QVec v) const;
    bool contains(const QVec& v) const;

private:
    int n_;
    std::vector<QVec> rows_;
    std::vector<int> pivots_;
};

bool is_zero(const QVec& v);

}  // namespace serialhom
