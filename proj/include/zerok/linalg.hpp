#ifndef ZEROK_LINALG_HPP
#define ZEROK_LINALG_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "zerok/gaussian_rational.hpp"
#include "zerok/unipoly.hpp"

namespace zerok {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.data_) v = s * v;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == T(0))) return false;
    return true;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix pow(unsigned e) const {
    Matrix result = identity(rows_), base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QiMatrix = Matrix<GaussianRational>;
using QiVector = std::vector<GaussianRational>;

/// Element of Z[i], used by the fraction-free elimination.
struct GaussianInteger {
  Integer re = 0, im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re - b.re, a.im - b.im};
  }
  /// Exact quotient; throws if b does not divide a.
  friend GaussianInteger divide_exact(const GaussianInteger& a, const GaussianInteger& b) {
    if (b.im == 0) {
      if (!mpz_divisible_p(a.re.get_mpz_t(), b.re.get_mpz_t()) || !mpz_divisible_p(a.im.get_mpz_t(), b.re.get_mpz_t()))
        throw std::logic_error("inexact Gaussian integer division");
      GaussianInteger q;
      mpz_divexact(q.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
      mpz_divexact(q.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
      return q;
    }
    Integer n = b.re * b.re + b.im * b.im;
    Integer r = a.re * b.re + a.im * b.im;
    Integer m = a.im * b.re - a.re * b.im;
    if (!mpz_divisible_p(r.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(m.get_mpz_t(), n.get_mpz_t()))
      throw std::logic_error("inexact Gaussian integer division");
    GaussianInteger q;
    mpz_divexact(q.re.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    return q;
  }
  GaussianRational to_rational() const { return {Rational(re), Rational(im)}; }
};

/// Row echelon form from one-step fraction-free (Bareiss) elimination.
struct FractionFreeEchelon {
  Matrix<GaussianInteger> form;
  std::vector<std::size_t> pivot_cols;  // pivot column of row r, r < rank
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Rows are first scaled to Z[i] by their common denominator (row scaling
/// does not change the row space); elimination then stays in Z[i].
inline FractionFreeEchelon fraction_free_echelon(const QiMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<GaussianInteger> w(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      Integer d = a(i, j).denominator_lcm();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      Rational re = a(i, j).re() * l, im = a(i, j).im() * l;
      w(i, j) = {re.get_num(), im.get_num()};
    }
  }
  FractionFreeEchelon out;
  GaussianInteger prev{1, 0};
  std::size_t k = 0;
  for (std::size_t c = 0; c < n && k < m; ++c) {
    std::size_t piv = k;
    while (piv < m && w(piv, c).is_zero()) ++piv;
    if (piv == m) continue;
    w.swap_rows(k, piv);
    const GaussianInteger pk = w(k, c);
    for (std::size_t i = k + 1; i < m; ++i) {
      const GaussianInteger ic = w(i, c);
      for (std::size_t j = c + 1; j < n; ++j) {
        GaussianInteger t = pk * w(i, j) - ic * w(k, j);
        w(i, j) = divide_exact(t, prev);
      }
      w(i, c) = GaussianInteger{};
    }
    prev = pk;
    out.pivot_cols.push_back(c);
    ++k;
  }
  out.form = std::move(w);
  return out;
}

inline std::size_t rank(const QiMatrix& a) { return fraction_free_echelon(a).rank(); }

/// Basis of {x : A x = 0}; one vector per free column, with a 1 in that column.
inline std::vector<QiVector> nullspace(const QiMatrix& a) {
  const std::size_t n = a.cols();
  FractionFreeEchelon ech = fraction_free_echelon(a);
  const std::size_t r = ech.rank();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  // convert the echelon rows once
  QiMatrix e(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = ech.pivot_cols[i]; j < n; ++j) e(i, j) = ech.form(i, j).to_rational();
  std::vector<QiVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QiVector x(n);
    x[f] = 1;
    for (std::size_t ii = r; ii-- > 0;) {
      std::size_t pc = ech.pivot_cols[ii];
      if (pc > f) continue;
      GaussianRational s;
      for (std::size_t j = pc + 1; j < n; ++j)
        if (!x[j].is_zero() && !e(ii, j).is_zero()) s += e(ii, j) * x[j];
      x[pc] = -s / e(ii, pc);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Whether A x = b has a solution, decided by exact ranks.
inline bool is_consistent(const QiMatrix& a, const QiVector& b) {
  QiMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  return rank(aug) == rank(a);
}

inline QiVector apply(const QiMatrix& a, const QiVector& x) {
  QiVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

/// det(xI - A), monic, via Faddeev-LeVerrier (exact in characteristic 0).
inline UniPoly characteristic_polynomial(const QiMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  std::vector<GaussianRational> c(n + 1);
  c[n] = 1;
  QiMatrix m(n, n);
  const QiMatrix id = QiMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / GaussianRational(static_cast<long>(k));
  }
  return UniPoly(std::move(c));
}

/// p(A) by Horner's scheme.
inline QiMatrix evaluate_at_matrix(const UniPoly& p, const QiMatrix& a) {
  const std::size_t n = a.rows();
  QiMatrix acc(n, n);
  const QiMatrix id = QiMatrix::identity(n);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = a * acc + *it * id;
  return acc;
}

/// Determinant over an integral domain by Bareiss elimination; div_exact must
/// return the exact quotient.
template <class T, class DivExact>
T bareiss_determinant(Matrix<T> m, DivExact div_exact) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == T(0)) ++piv;
    if (piv == n) return T(0);
    if (piv != k) {
      m.swap_rows(k, piv);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = div_exact(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  if (negate) d = T(0) - d;
  return d;
}

/// Resultant of two polynomials in y whose coefficients are polynomials in x
/// (coefficient lists ascending in y). Sylvester determinant in Q(i)[x].
inline UniPoly resultant(const std::vector<UniPoly>& f, const std::vector<UniPoly>& g) {
  const std::size_t df = f.size() - 1, dg = g.size() - 1;
  const std::size_t n = df + dg;
  if (n == 0) return UniPoly::constant(1);
  Matrix<UniPoly> s(n, n);
  for (std::size_t i = 0; i < dg; ++i)
    for (std::size_t j = 0; j <= df; ++j) s(i, i + j) = f[df - j];
  for (std::size_t i = 0; i < df; ++i)
    for (std::size_t j = 0; j <= dg; ++j) s(dg + i, i + j) = g[dg - j];
  return bareiss_determinant(s, [](const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division in Bareiss determinant");
    return q;
  });
}

}  // namespace zerok

#endif
