#pragma once

// Exact integer matrices and the lattice operations built on the Smith
// normal form: kernels, images, saturations, integer linear solves.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace homcalc {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Dense integer matrix.  An r x c matrix represents the homomorphism
/// Z^c -> Z^r acting on column vectors.  Shapes with zero rows or columns are
/// legal and represent zero maps.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(std::size_t rows, std::size_t cols, std::span<const Integer> diag) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m(i, i) = diag[i];
    return m;
  }

  static IntMatrix column_vector(std::span<const Integer> v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<Integer> column(std::size_t j) const {
    std::vector<Integer> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Sub-block of size nr x nc starting at (r0, c0).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("IntMatrix::block");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  IntMatrix columns(std::span<const std::size_t> idx) const {
    IntMatrix b(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) b(i, k) = (*this)(i, idx[k]);
    return b;
  }

  IntMatrix row_subset(std::span<const std::size_t> idx) const {
    IntMatrix b(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) b(k, j) = (*this)(idx[k], j);
    return b;
  }

  // Elementary operations.  Used by the Smith normal form and by tests that
  // build random unimodular matrices.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (i) os << ", ";
      os << '[';
      for (std::size_t j = 0; j < m.cols_; ++j) {
        if (j) os << ", ";
        os << m(i, j);
      }
      os << ']';
    }
    return os << "] (" << m.rows_ << 'x' << m.cols_ << ')';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// [a | b]
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

/// [a ; b]
inline IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

/// Block diagonal [[a, 0], [0, b]].
inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

/// U * M * V = D with U, V unimodular and D diagonal.  `diagonal` holds the
/// nonzero invariant factors followed by zeros, length min(rows, cols).
/// `U_inv` is carried along because images and saturations are read off its
/// columns.
struct SnfResult {
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix D;
  IntMatrix V;
  std::vector<Integer> diagonal;

  std::size_t rank() const {
    return static_cast<std::size_t>(
        std::count_if(diagonal.begin(), diagonal.end(), [](const Integer& d) { return d != 0; }));
  }

  /// The nonzero diagonal entries d_1 | d_2 | ... | d_rank.
  std::vector<Integer> invariant_factors() const { return {diagonal.begin(), diagonal.begin() + rank()}; }
};

namespace detail {

// Row and column operations applied simultaneously to D and the transforms.
struct SnfWork {
  IntMatrix D, U, Uinv, V;

  void row_add(std::size_t dst, std::size_t src, const Integer& k) {
    D.add_row(dst, src, k);
    U.add_row(dst, src, k);
    Uinv.add_col(src, dst, -k);
  }
  void row_swap(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void row_negate(std::size_t r) {
    D.negate_row(r);
    U.negate_row(r);
    Uinv.negate_col(r);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& k) {
    D.add_col(dst, src, k);
    V.add_col(dst, src, k);
  }
  void col_swap(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }
};

}  // namespace detail

/// Smith normal form by elementary row/column reduction, always pivoting on
/// the entry of least absolute value in the remaining block.
inline SnfResult snf(const IntMatrix& M) {
  const std::size_t r = M.rows(), c = M.cols();
  detail::SnfWork w{M, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c)};
  const std::size_t n = std::min(r, c);

  std::size_t t = 0;
  for (; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = r, pj = c;
      Integer best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          const Integer& x = w.D(i, j);
          if (x == 0) continue;
          Integer ax = abs(x);
          if (pi == r || ax < best) {
            best = std::move(ax);
            pi = i;
            pj = j;
          }
        }
      if (pi == r) break;
      w.row_swap(t, pi);
      w.col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (w.D(i, t) == 0) continue;
        Integer q = w.D(i, t) / w.D(t, t);
        w.row_add(i, t, -q);
        if (w.D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (w.D(t, j) == 0) continue;
        Integer q = w.D(t, j) / w.D(t, t);
        w.col_add(j, t, -q);
        if (w.D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot row and column are clear; enforce divisibility of the rest.
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (w.D(i, j) % w.D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == r) break;
      w.row_add(t, bad, 1);
    }
    if (t >= r || t >= c || w.D(t, t) == 0) break;
    if (w.D(t, t) < 0) w.row_negate(t);
  }

  SnfResult out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = w.D(i, i);
  out.D = std::move(w.D);
  out.U = std::move(w.U);
  out.U_inv = std::move(w.Uinv);
  out.V = std::move(w.V);
  return out;
}

inline std::size_t rank(const IntMatrix& M) { return snf(M).rank(); }

/// Exact determinant (fraction-free Bareiss elimination).
inline Integer determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix a = M;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& M) {
  return M.rows() == M.cols() && abs(determinant(M)) == 1;
}

/// Columns form a basis of {v : M v = 0}.  The kernel of an integer matrix is
/// saturated and this basis spans it exactly.
inline IntMatrix kernel_basis(const IntMatrix& M) {
  SnfResult s = snf(M);
  const std::size_t k = s.rank();
  std::vector<std::size_t> idx;
  for (std::size_t j = k; j < M.cols(); ++j) idx.push_back(j);
  return s.V.columns(idx);
}

/// Columns form a basis of the lattice spanned by the columns of M.
inline IntMatrix image_basis(const IntMatrix& M) {
  SnfResult s = snf(M);
  const std::size_t k = s.rank();
  IntMatrix B(M.rows(), k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < M.rows(); ++i) B(i, j) = s.U_inv(i, j) * s.diagonal[j];
  return B;
}

/// Basis of {v : n v in span(L) for some n >= 1}, i.e. span_Q(L) cap Z^rows.
inline IntMatrix saturation(const IntMatrix& L) {
  SnfResult s = snf(L);
  const std::size_t k = s.rank();
  IntMatrix B(L.rows(), k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < L.rows(); ++i) B(i, j) = s.U_inv(i, j);
  return B;
}

/// Integer solution X of A X = B, if one exists.
inline std::optional<IntMatrix> solve(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw std::invalid_argument("solve: row mismatch");
  SnfResult s = snf(A);
  const std::size_t k = s.rank();
  IntMatrix UB = s.U * B;
  IntMatrix Y(A.cols(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i < k) {
        if (UB(i, j) % s.diagonal[i] != 0) return std::nullopt;
        Y(i, j) = UB(i, j) / s.diagonal[i];
      } else if (UB(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.V * Y;
}

/// Every column of B lies in the lattice spanned by the columns of A.
inline bool lattice_contains(const IntMatrix& A, const IntMatrix& B) { return solve(A, B).has_value(); }

/// The column spans of A and B coincide.
inline bool same_lattice(const IntMatrix& A, const IntMatrix& B) {
  return lattice_contains(A, B) && lattice_contains(B, A);
}

}  // namespace homcalc
