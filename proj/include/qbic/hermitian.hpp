#pragma once

// Hermitian vectors (solutions of B v = B^(q)T v^(q^2)), the canonical
// self-map phi of a nonsingular form, and orthonormal bases.

#include <numeric>
#include <optional>
#include <vector>

#include "qbic/error.hpp"
#include "qbic/forms.hpp"
#include "qbic/gf.hpp"
#include "qbic/linalg.hpp"

namespace qbic {

inline bool is_hermitian_vector(const QBicForm& f, const Vec& v) {
  if (v.size() != f.dim()) throw DimensionMismatch("vector length vs form dimension");
  const Field& F = *f.field();
  return f.gram() * v == f.twisted_gram(1).transpose() * frobenius_twist(F, v, f.e(), 2);
}

/// The line <v> contains a nonzero Hermitian vector over the algebraic
/// closure: B v and B^(q)T v^(q^2) are both zero or proportional (a scalar c
/// rescales them by c and c^(q^2), and c^(q^2-1) takes every nonzero value).
inline bool is_hermitian_point(const QBicForm& f, const Vec& v) {
  if (v.size() != f.dim()) throw DimensionMismatch("vector length vs form dimension");
  if (is_zero(v)) throw Error("the zero vector is not a projective point");
  const Field& F = *f.field();
  const Vec a = f.gram() * v;
  const Vec b = f.twisted_gram(1).transpose() * frobenius_twist(F, v, f.e(), 2);
  if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
  std::size_t i = 0;
  while (a[i].is_zero()) ++i;
  const Elem ratio = F.div(b[i], a[i]);
  return scale(F, ratio, a) == b;
}

/// Hermitian vectors with coordinates in GF(q^{2m}).
struct HermitianBasis {
  QBicForm form;            // f, re-expressed over the working field
  std::uint32_t m = 1;      // coordinates lie in GF(q^{2m})
  std::vector<Vec> basis;   // basis over GF(q^2)
  std::uint32_t prime_dim = 0;

  const FieldPtr& field() const { return form.field(); }
  std::size_t dim() const { return basis.size(); }
  /// Number of Hermitian vectors found.
  std::uint64_t count() const {
    SemilinearSolution s;
    s.p = field()->p();
    s.prime_dim = prime_dim;
    return s.count();
  }
  /// True when the solution set has its full size q^{2 dim V}.
  bool is_full() const { return basis.size() == form.dim(); }
};

/// The smallest field containing both the field of f and GF(q^{2m}).
inline FieldPtr hermitian_field(const QBicForm& f, std::uint32_t m) {
  if (m == 0) throw Error("extension degree must be positive");
  const std::uint64_t s = f.field()->s();
  const std::uint64_t l = std::lcm(s, std::uint64_t(2) * f.e() * m);
  if (l > 64) throw RangeExceeded("extension degree too large");
  return make_field(f.field()->p(), std::uint32_t(l));
}

inline HermitianBasis hermitian_space(const QBicForm& f, std::uint32_t m) {
  const FieldPtr work = hermitian_field(f, m);
  HermitianBasis out;
  out.form = embed(f, work);
  out.m = m;
  const std::uint32_t sub = 2 * f.e() * m;
  const auto sol = semilinear_kernel(out.form.gram(), out.form.twisted_gram(1).transpose(), f.e(), 2,
                                     sub == work->s() ? 0 : sub);
  out.basis = sol.basis;
  out.prime_dim = sol.prime_dim;
  return out;
}

/// B^{-1} B^(q)T; phi(v) = M v^(q^2).
inline Matrix phi_matrix(const QBicForm& f) {
  auto inv = inverse(f.gram());
  if (!inv) throw SingularForm("phi requires a nonsingular form");
  return *inv * f.twisted_gram(1).transpose();
}

inline Vec phi(const QBicForm& f, const Vec& v) {
  if (v.size() != f.dim()) throw DimensionMismatch("vector length vs form dimension");
  return phi_matrix(f) * frobenius_twist(*f.field(), v, f.e(), 2);
}

/// dim span{v, phi(v), phi^2(v), ...}.
inline std::size_t hermitian_closure_dim(const QBicForm& f, const Vec& v) {
  const Matrix m = phi_matrix(f);
  std::vector<Vec> vs;
  Subspace span = Subspace::zero(f.field(), f.dim());
  Vec cur = v;
  for (std::size_t i = 0; i <= f.dim(); ++i) {
    vs.push_back(cur);
    Subspace next = Subspace::span(f.field(), vs, f.dim());
    if (next.dim() == span.dim()) break;
    span = std::move(next);
    cur = m * frobenius_twist(*f.field(), cur, f.e(), 2);
  }
  return span.dim();
}

/// Smallest m <= max_ext for which all Hermitian vectors are GF(q^{2m})-rational.
inline std::optional<HermitianBasis> split_hermitian_space(const QBicForm& f, std::uint32_t max_ext) {
  for (std::uint32_t m = 1; m <= max_ext; ++m) {
    auto h = hermitian_space(f, m);
    if (h.is_full()) return h;
  }
  return std::nullopt;
}

/// A random nonsingular form with Hermitian Gram matrix (H^T = H^(q)) and
/// entries in GF(q^2).
inline QBicForm random_hermitian_form(const FieldPtr& field, std::uint32_t e, std::size_t dim, std::mt19937_64& rng) {
  const Field& F = *field;
  const auto q2 = F.subfield_elements(2 * e);
  const auto q1 = F.subfield_elements(e);
  std::uniform_int_distribution<std::size_t> pick2(0, q2.size() - 1), pick1(0, q1.size() - 1);
  for (;;) {
    Matrix h(field, dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      h(i, i) = q1[pick1(rng)];
      for (std::size_t j = i + 1; j < dim; ++j) {
        h(i, j) = q2[pick2(rng)];
        h(j, i) = F.qfrob(h(i, j), e, 1);
      }
    }
    QBicForm f(std::move(h), e);
    if (f.is_nonsingular()) return f;
  }
}

struct Orthonormalization {
  Matrix basis;          // columns: the orthonormal basis, over `form`'s field
  QBicForm form;         // f over the working field
  std::uint32_t m = 1;   // the Hermitian vectors are GF(q^{2m})-rational
};

/// An orthonormal basis of a nonsingular form, built from Hermitian vectors.
/// Throws NotSplit when the Hermitian vectors are not all rational over
/// GF(q^{2m}) for any m <= max_ext (0 selects dim + 1).
inline Orthonormalization orthonormalize(const QBicForm& f, std::uint32_t max_ext = 0) {
  if (!f.is_nonsingular()) throw SingularForm("orthonormalize requires a nonsingular form");
  if (max_ext == 0) max_ext = std::uint32_t(f.dim() + 1);
  auto herm = split_hermitian_space(f, max_ext);
  if (!herm) throw NotSplit("Hermitian vectors not rational over GF(q^{2m}) for m <= " + std::to_string(max_ext));

  const QBicForm& g = herm->form;
  const Field& F = *g.field();
  const std::size_t n = g.dim();
  const std::uint32_t e = g.e();
  const FieldPtr& field = g.field();

  // Gram matrix on the Hermitian basis; its entries lie in GF(q^2).
  Matrix hb(field, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) hb(i, j) = herm->basis[j][i];
  const Matrix h = frobenius_twist(hb, e, 1).transpose() * g.gram() * hb;

  const auto scalars = F.subfield_elements(2 * e);
  auto pair = [&](const Vec& x, const Vec& y) {  // x^(q)T H y
    return dot(F, frobenius_twist(F, x, e, 1), h * y);
  };

  // Gram-Schmidt in GF(q^2)-coordinates relative to the Hermitian basis.
  std::vector<Vec> chosen;
  Subspace rest = Subspace::full(field, n);
  while (rest.dim() > 0) {
    const std::size_t k = rest.dim();
    std::optional<Vec> found;
    // Lexicographic scan over coefficient tuples, last coordinate fastest.
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] + 1 == scalars.size()) idx[--pos] = 0;
      if (pos == 0) break;
      ++idx[pos - 1];
      Vec v(n, F.zero());
      for (std::size_t t = 0; t < k; ++t)
        if (!scalars[idx[t]].is_zero()) v = add(F, v, scale(F, scalars[idx[t]], rest.basis().row_vec(t)));
      if (!pair(v, v).is_zero()) {
        found = std::move(v);
        break;
      }
    }
    if (!found) throw Error("nonsingular Hermitian form has no anisotropic vector");
    const Elem a = pair(*found, *found);
    std::optional<Elem> root;
    for (Elem c : F.nth_roots(a, g.q() + 1))
      if (F.in_subfield(c, 2 * e) && (!root || c.log < root->log)) root = c;
    if (!root) throw Error("self-pairing has no (q+1)-st root in GF(q^2)");
    Vec v = scale(F, F.inv(*root), *found);
    // Complement inside rest: {u in rest : v^(q)T H u = 0}.
    Matrix cond(field, 1, n);
    const Vec vq = frobenius_twist(F, v, e, 1);
    const Vec row = h.transpose() * vq;
    for (std::size_t i = 0; i < n; ++i) cond(0, i) = row[i];
    rest = subspace_intersect(rest, kernel(cond));
    chosen.push_back(std::move(v));
  }

  Matrix coords(field, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) coords(i, j) = chosen[j][i];
  Orthonormalization out{hb * coords, g, herm->m};
  if (!(gram_in_basis(g, out.basis) == Matrix::identity(field, n)))
    throw Error("orthonormalization failed verification");
  return out;
}

}  // namespace qbic
