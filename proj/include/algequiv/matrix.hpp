#pragma once

#include <functional>
#include <string>
#include <vector>

#include "algequiv/ratfunc.hpp"

namespace algequiv {

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
};
template <>
struct FieldTraits<RatFunc> {
  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(1L); }
};

// Dense row-major matrix over an exact field.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, FieldTraits<T>::zero()) {}
  Mat(int rows, int cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    require(static_cast<int>(a_.size()) == rows_ * cols_, Errc::dimension_mismatch,
            "entry count does not match rows*cols");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = FieldTraits<T>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!(a_[i] == o.a_[i])) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool all_zero() const {
    for (auto& e : a_)
      if (!is_zero(e)) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator+(const Mat& o) const { return zip(o, [](const T& a, const T& b) { return a + b; }); }
  Mat operator-(const Mat& o) const { return zip(o, [](const T& a, const T& b) { return a - b; }); }
  Mat operator-() const {
    Mat out = *this;
    for (auto& e : out.a_) e = -e;
    return out;
  }
  Mat operator*(const Mat& o) const {
    require(cols_ == o.rows_, Errc::dimension_mismatch, "matrix product shape mismatch");
    Mat out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& aik = (*this)(i, k);
        if (is_zero(aik)) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) = out(i, j) + aik * o(k, j);
      }
    return out;
  }
  Mat operator*(const T& s) const {
    Mat out = *this;
    for (auto& e : out.a_) e = e * s;
    return out;
  }

  Mat block(int i0, int j0, int r, int c) const {
    Mat out(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
    return out;
  }
  void set_block(int i0, int j0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  std::vector<T> col(int j) const {
    std::vector<T> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

 private:
  template <class F>
  Mat zip(const Mat& o, F f) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, Errc::dimension_mismatch,
            "matrix shape mismatch");
    Mat out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f(a_[i], o.a_[i]);
    return out;
  }

  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using RatMatrix = Mat<RatFunc>;
using QMatrix = Mat<Rational>;

template <class T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
  require(m.cols() == static_cast<int>(v.size()), Errc::dimension_mismatch, "mat_vec shape");
  std::vector<T> out(m.rows(), FieldTraits<T>::zero());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] = out[i] + m(i, j) * v[j];
  return out;
}

// In-place reduced row echelon form; returns the pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    T inv = FieldTraits<T>::one() / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
int rank(Mat<T> m) {
  return static_cast<int>(rref(m).size());
}

template <class T>
T determinant(Mat<T> m) {
  require(m.rows() == m.cols(), Errc::dimension_mismatch, "determinant of a non-square matrix");
  T det = FieldTraits<T>::one();
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return FieldTraits<T>::zero();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    T inv = FieldTraits<T>::one() / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

// Solves A X = B by Gauss-Jordan elimination over the field.
template <class T>
Mat<T> solve(Mat<T> a, Mat<T> b) {
  require(a.rows() == a.cols() && a.rows() == b.rows(), Errc::dimension_mismatch, "solve shape");
  int n = a.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(a(i, c))) {
        piv = i;
        break;
      }
    require(piv >= 0, Errc::singular, "singular matrix in solve");
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(piv, j), b(c, j));
    }
    T inv = FieldTraits<T>::one() / a(c, c);
    for (int j = c; j < n; ++j) a(c, j) = a(c, j) * inv;
    for (int j = 0; j < b.cols(); ++j) b(c, j) = b(c, j) * inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || is_zero(a(i, c))) continue;
      T f = a(i, c);
      for (int j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) = b(i, j) - f * b(c, j);
    }
  }
  return b;
}

template <class T>
Mat<T> inverse(const Mat<T>& a) {
  require(a.rows() == a.cols(), Errc::dimension_mismatch, "inverse of a non-square matrix");
  return solve(a, Mat<T>::identity(a.rows()));
}

template <class T>
bool is_invertible(const Mat<T>& a) {
  return a.rows() == a.cols() && !is_zero(determinant(a));
}

// Solves A X = B exactly for full-column-rank A and consistent B.
template <class T>
Mat<T> solve_full_column_rank(const Mat<T>& a, const Mat<T>& b) {
  require(a.rows() == b.rows(), Errc::dimension_mismatch, "solve shape");
  Mat<T> aug(a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  std::vector<int> pivots = rref(aug);
  require(static_cast<int>(pivots.size()) == a.cols(), Errc::singular,
          "coefficient matrix is column rank deficient");
  for (std::size_t i = 0; i < pivots.size(); ++i)
    require(pivots[i] == static_cast<int>(i), Errc::singular, "inconsistent linear system");
  for (int i = a.cols(); i < aug.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      require(is_zero(aug(i, a.cols() + j)), Errc::singular, "inconsistent linear system");
  return aug.block(0, a.cols(), a.cols(), b.cols());
}

// Entrywise limit as z -> infinity (the D block of a realization):
// leading-coefficient ratio for equal degrees, zero for strictly proper
// entries. Entries may be symbolic; improper entries are rejected.
inline RatMatrix limit_at_infinity(const RatMatrix& h) {
  RatMatrix out(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      const RatFunc& f = h(i, j);
      if (f.is_zero()) continue;
      require(f.is_proper(), Errc::improper_entry,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") has numerator degree exceeding denominator degree");
      if (f.num().degree() < f.den().degree()) continue;
      out(i, j) = RatFunc(ZPoly(f.num().lead()), ZPoly(f.den().lead()));
    }
  return out;
}

inline RatMatrix q_to_rat(const QMatrix& q) {
  RatMatrix out(q.rows(), q.cols());
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) out(i, j) = RatFunc(q(i, j));
  return out;
}

// Requires every entry to be a plain rational constant.
inline QMatrix rat_to_q(const RatMatrix& m, Errc code = Errc::free_parameter) {
  QMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      require(m(i, j).is_constant(), code,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") is not a plain rational");
      out(i, j) = m(i, j).as_rational();
    }
  return out;
}

}  // namespace algequiv
