#include "cuntz/int_matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace cuntz {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("IntMatrix: entry count != rows*cols");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("IntMatrix: shape mismatch in mat*vec");
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * v[j];
    return out;
}

bool IntMatrix::isZero() const {
    for (const Int& v : data_)
        if (v != 0) return false;
    return true;
}

IntMatrix IntMatrix::vstack(const IntMatrix& below) const {
    if (cols_ != below.cols_ && rows_ != 0 && below.rows_ != 0)
        throw std::invalid_argument("IntMatrix: vstack column mismatch");
    std::size_t c = rows_ ? cols_ : below.cols_;
    IntMatrix out(rows_ + below.rows_, c);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
        for (std::size_t j = 0; j < below.cols_; ++j) out.at(rows_ + i, j) = below.at(i, j);
    return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& right) const {
    if (rows_ != right.rows_) throw std::invalid_argument("IntMatrix: hstack row mismatch");
    IntMatrix out(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) out.at(i, cols_ + j) = right.at(i, j);
    }
    return out;
}

namespace {

void swapRows(IntMatrix& a, IntMatrix& u, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r1, j), a.at(r2, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(r1, j), u.at(r2, j));
}

void swapCols(IntMatrix& a, IntMatrix& v, std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, c1), a.at(i, c2));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, c1), v.at(i, c2));
}

// row r1 -= q * row r2
void addRow(IntMatrix& a, IntMatrix& u, std::size_t r1, std::size_t r2, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(r1, j) -= q * a.at(r2, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(r1, j) -= q * u.at(r2, j);
}

void addCol(IntMatrix& a, IntMatrix& v, std::size_t c1, std::size_t c2, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, c1) -= q * a.at(i, c2);
    for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, c1) -= q * v.at(i, c2);
}

void negateRow(IntMatrix& a, IntMatrix& u, std::size_t r) {
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) = -a.at(r, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
}

// Least nonzero absolute value in the trailing submatrix, row-major tie-break.
bool findPivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            const Int& e = a.at(i, j);
            if (e == 0) continue;
            Int ab = abs(e);
            if (!found || ab < best) {
                found = true;
                best = ab;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithForm smithNormalForm(const IntMatrix& m) {
    SmithForm out;
    IntMatrix a = m;
    out.U = IntMatrix::identity(m.rows());
    out.V = IntMatrix::identity(m.cols());
    const std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!findPivot(a, t, pi, pj)) break;
        swapRows(a, out.U, t, pi);
        swapCols(a, out.V, t, pj);

        for (;;) {
            if (a.at(t, t) < 0) negateRow(a, out.U, t);
            // Clear column t.
            bool dirty = false;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = a.at(i, t) / a.at(t, t);
                addRow(a, out.U, i, t, q);
                if (a.at(i, t) != 0) dirty = true;
            }
            // Clear row t.
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = a.at(t, j) / a.at(t, t);
                addCol(a, out.V, j, t, q);
                if (a.at(t, j) != 0) dirty = true;
            }
            if (dirty) {
                std::size_t qi = 0, qj = 0;
                findPivot(a, t, qi, qj);
                swapRows(a, out.U, t, qi);
                swapCols(a, out.V, t, qj);
                continue;
            }
            // Enforce d_t | everything below-right.
            bool fixed = true;
            for (std::size_t i = t + 1; i < a.rows() && fixed; ++i)
                for (std::size_t j = t + 1; j < a.cols() && fixed; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        addRow(a, out.U, t, i, Int(-1));  // row t += row i
                        fixed = false;
                    }
            if (fixed) break;
        }
    }

    out.rank = 0;
    out.D = IntMatrix(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i) {
        out.D.at(i, i) = a.at(i, i);
        if (a.at(i, i) != 0) ++out.rank;
    }
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

std::optional<IntVec> solveLinear(const SmithForm& snf, const IntVec& b) {
    const std::size_t rows = snf.U.cols();
    const std::size_t cols = snf.V.rows();
    if (b.size() != rows) throw std::invalid_argument("solveLinear: bad rhs size");
    IntVec c = snf.U * b;
    IntVec y(cols);
    const std::size_t n = std::min(rows, cols);
    for (std::size_t i = 0; i < n; ++i) {
        if (snf.D.at(i, i) == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % snf.D.at(i, i) != 0) return std::nullopt;
            y[i] = c[i] / snf.D.at(i, i);
        }
    }
    for (std::size_t i = n; i < rows; ++i)
        if (c[i] != 0) return std::nullopt;
    return snf.V * y;
}

std::optional<IntVec> solveLinear(const IntMatrix& a, const IntVec& b) {
    return solveLinear(smithNormalForm(a), b);
}

IntMatrix kernelBasis(const IntMatrix& a) {
    SmithForm snf = smithNormalForm(a);
    std::size_t k = a.cols() - snf.rank;
    IntMatrix out(a.cols(), k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) out.at(i, j) = snf.V.at(i, snf.rank + j);
    return out;
}

IntVec addVec(const IntVec& a, const IntVec& b) {
    assert(a.size() == b.size());
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVec subVec(const IntVec& a, const IntVec& b) {
    assert(a.size() == b.size());
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVec scaleVec(const Int& c, const IntVec& a) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

bool isZeroVec(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace cuntz
