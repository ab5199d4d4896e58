#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "scalar.hpp"
#include "signature.hpp"

namespace ywkit {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Square sparse matrix over a ring R (Scalar, SuperPoly, BiPoly<...>, ...).
// Only nonzero entries are stored.
template <class R>
class RingMatrix {
 public:
  using Index = std::pair<int, int>;

  RingMatrix() = default;
  explicit RingMatrix(int dim) : dim_(dim) {}

  static RingMatrix identity(int dim, const R& one = R(Scalar(1))) {
    RingMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, one);
    return m;
  }

  int dim() const { return dim_; }
  const std::map<Index, R>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  R at(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? R{} : it->second;
  }

  void set(int r, int c, const R& value) {
    check_index(r, c);
    if (coeff_is_zero(value)) {
      entries_.erase({r, c});
    } else {
      entries_[{r, c}] = value;
    }
  }

  void add(int r, int c, const R& value) {
    check_index(r, c);
    if (coeff_is_zero(value)) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, value);
    if (!inserted) {
      it->second = it->second + value;
      if (coeff_is_zero(it->second)) entries_.erase(it);
    }
  }

  RingMatrix& operator+=(const RingMatrix& o) {
    same_dim(o);
    for (const auto& [ix, v] : o.entries_) add(ix.first, ix.second, v);
    return *this;
  }
  RingMatrix& operator-=(const RingMatrix& o) {
    same_dim(o);
    for (const auto& [ix, v] : o.entries_) add(ix.first, ix.second, R(v * Scalar(-1)));
    return *this;
  }
  friend RingMatrix operator+(RingMatrix a, const RingMatrix& b) { return a += b; }
  friend RingMatrix operator-(RingMatrix a, const RingMatrix& b) { return a -= b; }
  friend RingMatrix operator*(const RingMatrix& a, const Scalar& s) {
    RingMatrix out(a.dim_);
    for (const auto& [ix, v] : a.entries_) out.set(ix.first, ix.second, R(v * s));
    return out;
  }
  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  // Applies f entrywise.
  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const R&>()))>;
    RingMatrix<T> out(dim_);
    for (const auto& [ix, v] : entries_) out.set(ix.first, ix.second, f(v));
    return out;
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || c < 0 || r >= dim_ || c >= dim_) throw DimensionError("RingMatrix index out of range");
  }
  void same_dim(const RingMatrix& o) const {
    if (o.dim_ != dim_) throw DimensionError("RingMatrix dimension mismatch");
  }

  int dim_ = 0;
  std::map<Index, R> entries_;
};

template <class A, class B>
auto operator*(const RingMatrix<A>& a, const RingMatrix<B>& b) {
  using T = typename product_type<A, B>::type;
  if (a.dim() != b.dim()) throw DimensionError("RingMatrix product dimension mismatch");
  // Row-indexed view of b for sparse products.
  std::vector<std::vector<std::pair<int, const B*>>> rows(b.dim());
  for (const auto& [ix, v] : b.entries()) rows[ix.first].emplace_back(ix.second, &v);
  RingMatrix<T> out(a.dim());
  for (const auto& [ix, va] : a.entries())
    for (const auto& [col, vb] : rows[ix.second]) out.add(ix.first, col, T(va * *vb));
  return out;
}

template <class R>
RingMatrix<R> commutator(const RingMatrix<R>& a, const RingMatrix<R>& b) {
  return a * b - b * a;
}

// Parity of a compound index of (C^d)^{otimes k} in base-d digits.
inline int compound_parity(const Signature& sig, int index, int dim) {
  const int d = sig.total();
  int p = 0;
  for (int span = dim; span > 1; span /= d) {
    p += sig.parity(index % d);
    index /= d;
  }
  return p & 1;
}

inline int tensor_power(const Signature& sig, int dim) {
  const int d = sig.total();
  int k = 0;
  int span = 1;
  while (span < dim) {
    span *= d;
    ++k;
  }
  if (span != dim) throw DimensionError("dimension is not a power of the signature total");
  return k;
}

// Graded Kronecker product: (A (x) B)_{(ik),(jl)} = (-1)^{([i]+[j])[k]} A_ij B_kl,
// with [.] the (compound) index parity. All-even signatures reduce to the
// ordinary Kronecker product.
template <class R>
RingMatrix<R> graded_tensor(const RingMatrix<R>& a, const RingMatrix<R>& b, const Signature& sig) {
  tensor_power(sig, a.dim());
  tensor_power(sig, b.dim());
  const int db = b.dim();
  RingMatrix<R> out(a.dim() * db);
  for (const auto& [ia, va] : a.entries()) {
    const int pa = compound_parity(sig, ia.first, a.dim()) + compound_parity(sig, ia.second, a.dim());
    for (const auto& [ib, vb] : b.entries()) {
      const int s = sign_pow(pa * compound_parity(sig, ib.first, db));
      R value = R(va * vb);
      if (s < 0) value = R(value * Scalar(-1));
      out.set(ia.first * db + ib.first, ia.second * db + ib.second, value);
    }
  }
  return out;
}

inline RingMatrix<Scalar> matrix_unit(int dim, int i, int j) {
  RingMatrix<Scalar> m(dim);
  m.set(i, j, Scalar(1));
  return m;
}

// Dense rational matrix; used for operators on finite-dimensional modules.
// A default-constructed (0x0) matrix acts as an additive zero of any shape.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static QMatrix identity(int d, const Scalar& diag = Scalar(1)) {
    QMatrix m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = diag;
    return m;
  }
  static QMatrix unit(int d, int i, int j) {
    QMatrix m(d, d);
    m(i, j) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty_shape() const { return rows_ == 0 && cols_ == 0; }

  Scalar& operator()(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const Scalar& operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return ywkit::is_zero(x); });
  }

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.empty_shape()) return b;
    if (b.empty_shape()) return a;
    a.same_shape(b);
    QMatrix out(a);
    for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] += b.a_[k];
    return out;
  }
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b) { return a + b * Scalar(-1); }
  friend QMatrix operator*(const QMatrix& a, const Scalar& s) {
    QMatrix out(a);
    for (auto& x : out.a_) x *= s;
    return out;
  }
  friend QMatrix operator*(const Scalar& s, const QMatrix& a) { return a * s; }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.empty_shape() || b.empty_shape()) return {};
    if (a.cols_ != b.rows_) throw DimensionError("QMatrix product shape mismatch");
    QMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (ywkit::is_zero(x)) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const Scalar& y = b(k, j);
          if (!ywkit::is_zero(y)) out(i, j) += x * y;
        }
      }
    return out;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    if (a.empty_shape() || b.empty_shape()) return a.is_zero() && b.is_zero();
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
      if (i) os << "; ";
      for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << ywkit::to_string((*this)(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  void same_shape(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("QMatrix shape mismatch");
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

inline bool is_zero(const QMatrix& m) { return m.is_zero(); }

inline QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (ywkit::is_zero(a(i, j))) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

// Graded tensor product of operators on super vector spaces with basis
// parities pa, pb: (A (x) B)(x (x) y) = (-1)^{|B||x|} Ax (x) By.
inline QMatrix graded_kron(const QMatrix& a, const std::vector<int>& pa, const QMatrix& b,
                           const std::vector<int>& pb) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (ywkit::is_zero(a(i, j))) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          if (ywkit::is_zero(b(k, l))) continue;
          const int s = sign_pow(((pb[k] + pb[l]) & 1) * pa[j]);
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l) * Scalar(s);
        }
    }
  return out;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(std::vector<std::vector<Scalar>>& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pick = r;
    while (pick < rows.size() && ywkit::is_zero(rows[pick][c])) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[r], rows[pick]);
    const Scalar inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || ywkit::is_zero(rows[k][c])) continue;
      const Scalar f = rows[k][c];
      for (int j = c; j < static_cast<int>(rows[k].size()); ++j) rows[k][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline int rank(std::vector<std::vector<Scalar>> rows, int ncols) {
  return static_cast<int>(rref(rows, ncols).size());
}

// Basis of the right null space {x : A x = 0}.
inline std::vector<std::vector<Scalar>> nullspace(std::vector<std::vector<Scalar>> rows, int ncols) {
  auto pivots = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> x(ncols);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Solves A x = b (augmented rows [A | b]). Returns a particular solution with
// free variables set to zero, or nullopt if inconsistent. `nullity` receives
// the dimension of the solution space.
inline std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> augmented, int nvars,
                                                       int* nullity = nullptr) {
  auto pivots = rref(augmented, nvars + 1);
  if (!pivots.empty() && pivots.back() == nvars) return std::nullopt;
  std::vector<Scalar> x(nvars);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = augmented[r][nvars];
  if (nullity) *nullity = nvars - static_cast<int>(pivots.size());
  return x;
}

}  // namespace ywkit
