#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace cuntz {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> data);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transposed() const;
    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVec operator*(const IntVec& v) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool isZero() const;

    /// Stacks `below` underneath this matrix (column counts must agree).
    IntMatrix vstack(const IntMatrix& below) const;
    /// Places `right` to the right of this matrix (row counts must agree).
    IntMatrix hstack(const IntMatrix& right) const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

/// Result of the Smith decomposition U*M*V = D.
struct SmithForm {
    IntMatrix U;  // unimodular, rows x rows
    IntMatrix D;  // diagonal, d1 | d2 | ..., nonnegative
    IntMatrix V;  // unimodular, cols x cols
    std::size_t rank = 0;  // number of nonzero diagonal entries

    Int diag(std::size_t i) const { return D.at(i, i); }
};

/// Smith normal form with a fixed pivoting rule (least nonzero absolute
/// value, row-major tie-break), so output is deterministic.
SmithForm smithNormalForm(const IntMatrix& m);

/// Integer determinant by fraction-free Gaussian elimination (Bareiss).
Int determinant(const IntMatrix& m);

/// Solves A*x = b over the integers. Empty optional when no solution exists.
std::optional<IntVec> solveLinear(const SmithForm& snf, const IntVec& b);
std::optional<IntVec> solveLinear(const IntMatrix& a, const IntVec& b);

/// Basis of the integer kernel {x : A*x = 0}, one column per basis vector.
IntMatrix kernelBasis(const IntMatrix& a);

IntVec addVec(const IntVec& a, const IntVec& b);
IntVec subVec(const IntVec& a, const IntVec& b);
IntVec scaleVec(const Int& c, const IntVec& a);
bool isZeroVec(const IntVec& v);

}  // namespace cuntz
