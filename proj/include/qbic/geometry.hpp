#pragma once

// Points of projective space over finite fields and of q-bic hypersurfaces
// X = {[v] : beta(v^(q), v) = 0}.

#include <cstdint>
#include <functional>
#include <vector>

#include "qbic/error.hpp"
#include "qbic/forms.hpp"
#include "qbic/gf.hpp"
#include "qbic/hermitian.hpp"
#include "qbic/linalg.hpp"

namespace qbic {

/// A point of P^n, normalized so that its leftmost nonzero coordinate is 1.
struct ProjPoint {
  Vec coords;

  static ProjPoint normalize(const Field& F, Vec v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) {
        const Elem inv = F.inv(v[i]);
        for (std::size_t j = i; j < v.size(); ++j) v[j] = F.mul(v[j], inv);
        return ProjPoint{std::move(v)};
      }
    throw Error("the zero vector is not a projective point");
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint& a, const ProjPoint& b) { return a.coords <=> b.coords; }
};

inline constexpr std::uint64_t kMaxEnumeration = 10'000'000;

/// (k^{n+1} - 1) / (k - 1), or RangeExceeded beyond `cap`.
inline std::uint64_t projective_count(std::uint64_t k, std::size_t n, std::uint64_t cap = kMaxEnumeration) {
  std::uint64_t total = 0, pw = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    total += pw;
    if (total > cap) throw RangeExceeded("projective space too large to enumerate");
    pw *= k;
  }
  return total;
}

/// Visit every point of P^n(GF(p^d)) inside `field` (d = 0: the whole field),
/// ordered by the position of the leading 1 and then lexicographically in the
/// remaining coordinates (scalars in subfield_elements order).
template <class Fn>
void enumerate_points(const FieldPtr& field, std::size_t n, std::uint32_t d, Fn&& fn) {
  const Field& F = *field;
  if (d == 0) d = F.s();
  const auto scalars = F.subfield_elements(d);
  projective_count(scalars.size(), n);
  const std::size_t len = n + 1;
  Vec v(len);
  std::vector<std::size_t> idx(len);
  for (std::size_t lead = 0; lead < len; ++lead) {
    std::fill(v.begin(), v.end(), F.zero());
    std::fill(idx.begin(), idx.end(), 0);
    v[lead] = F.one();
    for (;;) {
      fn(ProjPoint{v});
      std::size_t pos = len;
      while (pos > lead + 1 && idx[pos - 1] + 1 == scalars.size()) {
        idx[pos - 1] = 0;
        v[pos - 1] = scalars[0];
        --pos;
      }
      if (pos == lead + 1) break;
      ++idx[pos - 1];
      v[pos - 1] = scalars[idx[pos - 1]];
    }
  }
}

inline std::vector<ProjPoint> all_points(const FieldPtr& field, std::size_t n, std::uint32_t d = 0) {
  std::vector<ProjPoint> out;
  enumerate_points(field, n, d, [&](const ProjPoint& p) { out.push_back(p); });
  return out;
}

inline bool on_hypersurface(const QBicForm& f, const ProjPoint& pt) { return evaluate(f, pt.coords, pt.coords).is_zero(); }

/// Points of X with coordinates in GF(q^{2m}), over the working field of
/// hermitian_field(f, m); `visit` receives the embedded form and each point.
template <class Fn>
void enumerate_hypersurface(const QBicForm& f, std::uint32_t m, Fn&& visit) {
  const FieldPtr work = hermitian_field(f, m);
  const QBicForm g = embed(f, work);
  enumerate_points(work, f.dim() - 1, 2 * f.e() * m, [&](const ProjPoint& p) {
    if (on_hypersurface(g, p)) visit(g, p);
  });
}

/// #X(GF(q^{2m})) by exhaustive scan.
inline std::uint64_t count_points(const QBicForm& f, std::uint32_t m) {
  std::uint64_t count = 0;
  enumerate_hypersurface(f, m, [&](const QBicForm&, const ProjPoint&) { ++count; });
  return count;
}

inline void require_on_x(const QBicForm& f, const ProjPoint& pt) {
  if (pt.coords.size() != f.dim()) throw DimensionMismatch("point length vs form dimension");
  if (!on_hypersurface(f, pt)) throw Error("point does not lie on the hypersurface");
}

/// v^(q)T B as a row: the linear form w -> beta(v^(q), w).
inline Vec tangent_row(const QBicForm& f, const Vec& v) {
  return f.gram().transpose() * frobenius_twist(*f.field(), v, f.e(), 1);
}

/// Singular iff B^T v^(q) = 0.
inline bool is_singular_point(const QBicForm& f, const ProjPoint& pt) {
  require_on_x(f, pt);
  return is_zero(tangent_row(f, pt.coords));
}

/// The tangent hyperplane {w : beta(v^(q), w) = 0} at a smooth point.
inline Subspace tangent_space(const QBicForm& f, const ProjPoint& pt) {
  require_on_x(f, pt);
  const Vec row = tangent_row(f, pt.coords);
  if (is_zero(row)) throw Error("tangent space requested at a singular point");
  return kernel(Matrix(f.field(), 1, f.dim(), row));
}

/// dim(Fr*(L)^⊥ ∩ Fr^{-1}(L^⊥)) >= dim V - 1 for L = <v>.
inline bool is_cone_point(const QBicForm& f, const ProjPoint& pt) {
  require_on_x(f, pt);
  const Subspace l = Subspace::span(f.field(), std::vector<Vec>{pt.coords}, f.dim());
  const Subspace a = orthogonal(f, frobenius_image(l, f.e()), Side::Left);
  const Subspace b = frobenius_preimage(orthogonal(f, l, Side::Right), f.e());
  return subspace_intersect(a, b).dim() + 1 >= f.dim();
}

/// Membership in X^r: beta(phi^i(v)^(q), v) = 0 for 0 <= i <= r.
inline bool filtration_membership(const QBicForm& f, const ProjPoint& pt, std::size_t r) {
  if (pt.coords.size() != f.dim()) throw DimensionMismatch("point length vs form dimension");
  const Matrix m = phi_matrix(f);
  Vec w = pt.coords;
  for (std::size_t i = 0; i <= r; ++i) {
    if (!evaluate(f, w, pt.coords).is_zero()) return false;
    if (i < r) w = m * frobenius_twist(*f.field(), w, f.e(), 2);
  }
  return true;
}

/// The vertex of X: P rad(beta).
inline Subspace vertex(const QBicForm& f) { return radical(f); }

}  // namespace qbic
