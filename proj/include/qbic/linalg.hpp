#pragma once

// Dense matrices and subspaces over a Field, including the Frobenius-twisted
// operations used by the forms calculus.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qbic/error.hpp"
#include "qbic/gf.hpp"

namespace qbic {

using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix data size");
  }

  static Matrix identity(const FieldPtr& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field->one();
    return m;
  }
  /// Matrix whose rows are the given vectors (all of length `cols`).
  static Matrix from_rows(const FieldPtr& field, std::span<const Vec> rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  /// Matrix from small integers (prime-field entries).
  static Matrix from_ints(const FieldPtr& field, const std::vector<std::vector<int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged integer matrix");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field->from_int(rows[i][j]);
    }
    return m;
  }

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col_vec(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const {
    for (auto x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product");
  const Field& F = *a.field();
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
    }
  return c;
}

inline Vec operator*(const Matrix& a, const Vec& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  const Field& F = *a.field();
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc{};
    for (std::size_t k = 0; k < a.cols(); ++k) acc = F.add(acc, F.mul(a(i, k), v[k]));
    out[i] = acc;
  }
  return out;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field()->add(a(i, j), b(i, j));
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field()->sub(a(i, j), b(i, j));
  return c;
}

inline Vec add(const Field& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.add(a[i], b[i]);
  return c;
}

inline Vec scale(const Field& F, Elem c, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(c, a[i]);
  return out;
}

inline Elem dot(const Field& F, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product");
  Elem acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc = F.add(acc, F.mul(a[i], b[i]));
  return acc;
}

inline bool is_zero(const Vec& v) {
  for (auto x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// Entrywise x -> x^(q^k), q = p^e; k may be negative.
inline Vec frobenius_twist(const Field& F, const Vec& v, std::uint32_t e, std::int64_t k) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.qfrob(v[i], e, k);
  return out;
}

inline Matrix frobenius_twist(const Matrix& m, std::uint32_t e, std::int64_t k) {
  Matrix out = m;
  const Field& F = *m.field();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = F.qfrob(m(i, j), e, k);
  return out;
}

struct RrefResult {
  Matrix reduced;                   // same shape as the input
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline RrefResult rref(Matrix m) {
  const Field& F = *m.field();
  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Elem inv = F.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Elem f = F.neg(m(i, c));
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = F.add(m(i, j), F.mul(f, m(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = std::move(m);
  return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline Elem determinant(Matrix m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const Field& F = *m.field();
  const std::size_t n = m.rows();
  Elem det = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const Elem inv = F.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Elem f = F.neg(F.mul(m(i, c), inv));
      for (std::size_t j = c; j < n; ++j) m(i, j) = F.add(m(i, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field()->one();
  }
  auto r = rref(std::move(aug));
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r.reduced(i, n + j);
  return out;
}

/// A linear subspace of F^n, stored as the RREF of a spanning set (no zero
/// rows).  Two subspaces are equal iff their bases are equal.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(FieldPtr field, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix(std::move(field), 0, ambient);
    return s;
  }
  static Subspace full(const FieldPtr& field, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix::identity(field, ambient);
    s.pivots_.resize(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
    return s;
  }
  /// Row space of `m`.
  static Subspace span(const Matrix& m) {
    auto r = rref(m);
    Subspace s;
    s.basis_ = Matrix(m.field(), r.rank, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) s.basis_(i, j) = r.reduced(i, j);
    s.pivots_ = std::move(r.pivots);
    return s;
  }
  static Subspace span(const FieldPtr& field, std::span<const Vec> vectors, std::size_t ambient) {
    return span(Matrix::from_rows(field, vectors, ambient));
  }

  const FieldPtr& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vec> basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
    return out;
  }

  /// Membership by reduction against the RREF basis.
  bool contains(const Vec& v) const {
    if (v.size() != ambient()) throw DimensionMismatch("vector length vs ambient");
    const Field& F = *field();
    Vec w = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      const Elem c = w[pivots_[i]];
      if (c.is_zero()) continue;
      const Elem f = F.neg(c);
      for (std::size_t j = 0; j < ambient(); ++j) w[j] = F.add(w[j], F.mul(f, basis_(i, j)));
    }
    return is_zero(w);
  }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row_vec(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Right null space {x : M x = 0}.
inline Subspace kernel(const Matrix& m) {
  const FieldPtr& field = m.field();
  const Field& F = *field;
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  Matrix basis(field, m.cols() - r.rank, m.cols());
  std::size_t row = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    basis(row, f) = F.one();
    for (std::size_t i = 0; i < r.rank; ++i) basis(row, r.pivots[i]) = F.neg(r.reduced(i, f));
    ++row;
  }
  return Subspace::span(basis);
}

/// Column space of M.
inline Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

/// Some x with M x = b, or nullopt.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  const Field& F = *m.field();
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto r = rref(std::move(aug));
  if (r.rank > 0 && r.pivots[r.rank - 1] == m.cols()) return std::nullopt;
  Vec x(m.cols(), F.zero());
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

inline void require_same_ambient(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) throw DimensionMismatch("subspaces live in different ambient spaces");
}

inline Subspace subspace_sum(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t);
  Matrix stacked(s.field(), s.dim() + t.dim(), s.ambient());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.ambient(); ++j) stacked(i, j) = s.basis()(i, j);
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < s.ambient(); ++j) stacked(s.dim() + i, j) = t.basis()(i, j);
  return Subspace::span(stacked);
}

/// S ∩ T from the kernel of [S^T | -T^T]: a S = b T.
inline Subspace subspace_intersect(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t);
  const FieldPtr& field = s.field();
  const Field& F = *field;
  const std::size_t n = s.ambient();
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(field, n);
  Matrix m(field, n, s.dim() + t.dim());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < s.dim(); ++i) m(j, i) = s.basis()(i, j);
    for (std::size_t i = 0; i < t.dim(); ++i) m(j, s.dim() + i) = F.neg(t.basis()(i, j));
  }
  const Subspace coeffs = kernel(m);
  Matrix out(field, coeffs.dim(), n);
  for (std::size_t k = 0; k < coeffs.dim(); ++k)
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const Elem a = coeffs.basis()(k, i);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out(k, j) = F.add(out(k, j), F.mul(a, s.basis()(i, j)));
    }
  return Subspace::span(out);
}

/// {v^(q^k) : v in S}; Frobenius preserves RREF shape.
inline Subspace frobenius_image(const Subspace& s, std::uint32_t e, std::int64_t k = 1) {
  return Subspace::span(frobenius_twist(s.basis(), e, k));
}

/// {v : v^(q) in S}, the entrywise q-th root of the RREF basis.
inline Subspace frobenius_preimage(const Subspace& s, std::uint32_t e) { return frobenius_image(s, e, -1); }

/// Solution set of A x = C x^(q^k) inside the subfield GF(p^d) of the ambient
/// field (d = 0 means the whole ambient field).
///
/// x -> x^(q^k) is GF(p)-linear, so the system is blown up to a linear
/// system over the prime field using the polynomial basis 1, g, ..., g^(s-1)
/// of the ambient field.  The solution set is a vector space over
/// GF(p^gcd(e k, s)); `basis` is a basis over that subfield.
struct SemilinearSolution {
  std::vector<Vec> basis;
  std::uint32_t scalar_degree = 1;  // basis is over GF(p^scalar_degree)
  std::uint32_t prime_dim = 0;      // dimension over GF(p)
  std::uint32_t p = 0;

  /// Number of solutions; throws RangeExceeded when it does not fit in 64 bits.
  std::uint64_t count() const {
    std::uint64_t c = 1;
    for (std::uint32_t i = 0; i < prime_dim; ++i) {
      if (c > (~std::uint64_t(0)) / p) throw RangeExceeded("solution count overflows 64 bits");
      c *= p;
    }
    return c;
  }
};

inline SemilinearSolution semilinear_kernel(const Matrix& a, const Matrix& c, std::uint32_t e, std::int64_t k,
                                            std::uint32_t subfield_degree = 0) {
  if (!a.is_square() || !c.is_square() || a.rows() != c.rows()) throw DimensionMismatch("semilinear system shapes");
  const FieldPtr& field = a.field();
  const Field& F = *field;
  const std::size_t n = a.rows();
  const std::size_t s = F.s();
  const std::uint32_t p = F.p();
  const bool restrict_sub = subfield_degree != 0 && subfield_degree != s;
  if (subfield_degree != 0 && s % subfield_degree != 0) throw Error("subfield degree must divide the extension degree");

  auto prime_field = make_field(p, 1);
  const Field& P = *prime_field;

  // Unknown (j, t): coefficient of g^t in x_j.  Rows: (i, t') for A x - C x^(q^k),
  // then optionally (j, t') for x_j^(p^d) - x_j.
  const std::size_t unknowns = n * s;
  const std::size_t eq_rows = n * s + (restrict_sub ? n * s : 0);
  Matrix sys(prime_field, eq_rows, unknowns);
  std::vector<Elem> basis_pow(s);
  for (std::size_t t = 0; t < s; ++t) basis_pow[t] = F.pow(F.generator(), std::int64_t(t));

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < s; ++t) {
      const Elem bt = basis_pow[t];
      const Elem bt_tw = F.qfrob(bt, e, k);
      for (std::size_t i = 0; i < n; ++i) {
        const Elem val = F.sub(F.mul(a(i, j), bt), F.mul(c(i, j), bt_tw));
        const auto cs = F.coeffs(val);
        for (std::size_t tp = 0; tp < s; ++tp) sys(i * s + tp, j * s + t) = P.from_int(cs[tp]);
      }
      if (restrict_sub) {
        const auto cs = F.coeffs(F.sub(F.frob_p(bt, subfield_degree), bt));
        for (std::size_t tp = 0; tp < s; ++tp) sys(n * s + j * s + tp, j * s + t) = P.from_int(cs[tp]);
      }
    }

  const Subspace ker = kernel(sys);
  std::vector<Vec> prime_basis;
  for (std::size_t r = 0; r < ker.dim(); ++r) {
    Vec x(n, F.zero());
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < s; ++t) {
        const Elem co = ker.basis()(r, j * s + t);
        if (!co.is_zero()) x[j] = F.add(x[j], F.mul(F.from_int(std::int64_t(P.code(co))), basis_pow[t]));
      }
    prime_basis.push_back(std::move(x));
  }

  SemilinearSolution sol;
  sol.p = p;
  sol.prime_dim = std::uint32_t(ker.dim());
  std::uint64_t ek = std::uint64_t(std::int64_t(e) * (k < 0 ? -k : k));
  std::uint32_t deg = std::uint32_t(std::gcd(ek == 0 ? s : ek, std::uint64_t(s)));
  if (restrict_sub) deg = std::uint32_t(std::gcd(std::uint64_t(deg), std::uint64_t(subfield_degree)));
  sol.scalar_degree = deg;

  // Greedy basis over GF(p^deg), tracking the GF(p)-span of {lambda * b}.
  const Elem h = F.subfield_generator(deg);
  auto expand_row = [&](const Vec& v) {
    Vec row(unknowns);
    for (std::size_t j = 0; j < n; ++j) {
      const auto cs = F.coeffs(v[j]);
      for (std::size_t t = 0; t < s; ++t) row[j * s + t] = P.from_int(cs[t]);
    }
    return row;
  };
  std::vector<Vec> span_rows;
  for (const Vec& v : prime_basis) {
    span_rows.push_back(expand_row(v));
    const std::size_t grown = rank(Matrix::from_rows(prime_field, span_rows, unknowns));
    span_rows.pop_back();
    if (grown == span_rows.size()) continue;
    sol.basis.push_back(v);
    Elem lam = F.one();
    for (std::uint32_t i = 0; i < deg; ++i, lam = F.mul(lam, h)) span_rows.push_back(expand_row(scale(F, lam, v)));
  }
  return sol;
}

}  // namespace qbic
