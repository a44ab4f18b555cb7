#pragma once

#include "tate/arith.hpp"

#include <cassert>
#include <initializer_list>
#include <sstream>
#include <vector>

namespace tate {

// Dense row-major matrix over an exact scalar (Int or Rat).
template <class T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {
        assert(rows >= 0 && cols >= 0);
    }
    Matrix(int rows, int cols, std::initializer_list<T> vals) : Matrix(rows, cols) {
        assert(int(vals.size()) == rows * cols);
        size_t i = 0;
        for (const T& v : vals) e_[i++] = v;
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const T& v : e_)
            if (v != 0) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const T& b = o(k, j);
                    if (b != 0) r(i, j) += a * b;
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }
    Matrix operator*(const T& c) const {
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<T>& v) {
        assert(int(v.size()) == rows_);
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    Matrix cols_subset(const std::vector<int>& idx) const {
        Matrix r(rows_, int(idx.size()));
        for (int j = 0; j < int(idx.size()); ++j)
            for (int i = 0; i < rows_; ++i) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    // Horizontal concatenation [this | o].
    Matrix hcat(const Matrix& o) const {
        assert(rows_ == o.rows_);
        Matrix r(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        assert(int(x.size()) == cols_);
        std::vector<T> y(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && x[j] != 0) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        }
        os << "]";
        return os.str();
    }

  private:
    int rows_, cols_;
    std::vector<T> e_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

inline RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

// Exact determinant, Bareiss fraction-free elimination.
Int det(const IntMat& a);

// --- Rational linear algebra -------------------------------------------------

// Reduced column echelon transform: returns rank; optionally records pivot rows.
int rank(const RatMat& a);

// Basis of ker(a) as columns; exact.
RatMat kernel(const RatMat& a);

// Solve a * x = b for x (b may have several columns); nullopt if inconsistent.
std::optional<RatMat> solve(const RatMat& a, const RatMat& b);

// Inverse of a square invertible matrix; nullopt if singular.
std::optional<RatMat> inverse(const RatMat& a);

// Column space basis (as columns).
RatMat column_space(const RatMat& a);

// Does col_space(sub) equal col_space(sup)?  (mutual containment by rank)
bool same_column_space(const RatMat& a, const RatMat& b);

// Rank over F_p for small prime p (independent oracle helper).
int rank_mod_p(const IntMat& a, long p);

}  // namespace tate
