#pragma once

#include <fittkit/exact.hpp>

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace fittkit {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw MathError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // Empty matrices keep their column count through this.
  static Matrix with_cols(std::size_t cols) {
    Matrix m;
    m.cols_ = cols;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix<T>::with_cols(m.rows());
  Matrix<T> t(m.cols(), m.rows(), m(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw MathError("matrix shape mismatch in product");
  if (a.rows() == 0 || b.cols() == 0) return Matrix<T>::with_cols(b.cols());
  if (a.cols() == 0) throw MathError("product with an inner dimension of zero needs an explicit zero");
  Matrix<T> c(a.rows(), b.cols(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + x * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("matrix shape mismatch in sum");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw MathError("column mismatch in vstack");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < b.rows(); ++i) c.append_row(b.row(i));
  return c;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  return transpose(vstack(transpose(a), transpose(b)));
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix<T> s(rows.size(), cols.size(), m.empty() ? T() : m(0, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

template <class T, class F>
auto map_matrix(const Matrix<T>& m, F f) -> Matrix<decltype(f(m(0, 0)))> {
  using U = decltype(f(m(0, 0)));
  if (m.rows() == 0 || m.cols() == 0) return Matrix<U>::with_cols(m.cols());
  Matrix<U> out(m.rows(), m.cols(), f(m(0, 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

// Fraction-free (Bareiss) elimination with row pivoting.
template <class T>
T det_exact(Matrix<T> a, const T& one) {
  if (a.rows() != a.cols()) throw MathError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return one;
  T prev = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t r = k + 1;
      while (r < n && is_zero(a(r, k))) ++r;
      if (r == n) return zero_like(one);
      a.swap_rows(k, r);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = exact_div(num, prev);
      }
      a(i, k) = zero_like(one);
    }
    prev = a(k, k);
  }
  T d = a(n - 1, n - 1);
  return negate ? zero_like(one) - d : d;
}

template <class T>
T det_exact(const Matrix<T>& a) {
  if (a.rows() == 0) throw MathError("determinant of an empty matrix needs an explicit one");
  return det_exact(a, one_like(a(0, 0)));
}

// det(X*I - M) by Berkowitz' division-free recurrence; coefficients from X^0 up, monic.
template <class T>
std::vector<T> charpoly_exact(const Matrix<T>& m, const T& one) {
  if (m.rows() != m.cols()) throw MathError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  const T zero = zero_like(one);
  std::vector<T> v{one};  // highest degree first
  for (std::size_t r = 0; r < n; ++r) {
    // column of the Toeplitz matrix: 1, -a_rr, -R C, -R S C, ..., -R S^{r-1} C
    std::vector<T> col;
    col.reserve(r + 2);
    col.push_back(one);
    col.push_back(zero - m(r, r));
    std::vector<T> sc(r, zero);  // S^k C
    for (std::size_t i = 0; i < r; ++i) sc[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T acc = zero;
      for (std::size_t i = 0; i < r; ++i) acc = acc + m(r, i) * sc[i];
      col.push_back(zero - acc);
      if (k + 1 < r) {
        std::vector<T> next(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!is_zero(sc[j])) next[i] = next[i] + m(i, j) * sc[j];
        sc = std::move(next);
      }
    }
    std::vector<T> w(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j)
        if (!is_zero(col[i - j]) && !is_zero(v[j])) w[i] = w[i] + col[i - j] * v[j];
    v = std::move(w);
  }
  return std::vector<T>(v.rbegin(), v.rend());
}

template <class T>
std::vector<T> charpoly_exact(const Matrix<T>& m) {
  if (m.rows() == 0) throw MathError("characteristic polynomial of an empty matrix needs an explicit one");
  return charpoly_exact(m, one_like(m(0, 0)));
}

class MinorCapExceeded : public MathError {
 public:
  using MathError::MathError;
};

// Default 10^6; FITTKIT_MINOR_CAP overrides it.
unsigned long long minor_cap();
unsigned long long binomial(std::size_t n, std::size_t k);

// Advances a sorted k-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n);

// Determinants of all k x k submatrices, rows-set major, both in lexicographic order.
template <class T>
std::vector<T> minors_enum(const Matrix<T>& m, std::size_t k, const T& one, unsigned long long cap = 0) {
  if (k > m.rows() || k > m.cols()) throw MathError("minor size out of range");
  if (k == 0) return {one};
  if (cap == 0) cap = minor_cap();
  unsigned long long count = binomial(m.rows(), k) * binomial(m.cols(), k);
  if (count > cap)
    throw MinorCapExceeded("minor enumeration needs " + std::to_string(count) + " determinants, cap is " +
                           std::to_string(cap));
  std::vector<T> out;
  out.reserve(count);
  std::vector<std::size_t> rs(k), cs(k);
  for (std::size_t i = 0; i < k; ++i) rs[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cs[i] = i;
    do {
      out.push_back(det_exact(submatrix(m, rs, cs), one));
    } while (next_combination(cs, m.cols()));
  } while (next_combination(rs, m.rows()));
  return out;
}

}  // namespace fittkit
