#pragma once

// Linear subspaces of projective space over finite fields and the totally
// isotropic ones of a q-bic form: lines and planes on q-bic hypersurfaces,
// incidences, and tangent dimensions of the Fano scheme.

#include <cmath>
#include <map>
#include <vector>

#include "json.hpp"

#include "qbic/error.hpp"
#include "qbic/forms.hpp"
#include "qbic/geometry.hpp"
#include "qbic/linalg.hpp"

namespace qbic {

/// An r-plane of P^n, stored as the (r+1) x (n+1) RREF basis.
struct ProjSubspace {
  Matrix basis;

  static ProjSubspace span(const Matrix& rows) {
    auto r = rref(rows);
    Matrix b(rows.field(), r.rank, rows.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j) b(i, j) = r.reduced(i, j);
    return ProjSubspace{std::move(b)};
  }
  std::size_t r() const { return basis.rows() - 1; }
  std::size_t n() const { return basis.cols() - 1; }
  Subspace subspace() const { return Subspace::span(basis); }
  bool contains(const ProjPoint& pt) const { return subspace().contains(pt.coords); }

  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b) { return a.basis == b.basis; }
};

/// Gaussian binomial [n+1 choose r+1]_k, or RangeExceeded beyond `cap`.
inline std::uint64_t gaussian_binomial(std::uint64_t k, std::size_t n_plus_1, std::size_t r_plus_1,
                                       std::uint64_t cap = kMaxEnumeration) {
  if (r_plus_1 > n_plus_1) return 0;
  // Sum over pivot patterns of k^(number of free entries), computed by the
  // recursion [a, b] = [a-1, b-1] + k^b [a-1, b].
  std::vector<std::vector<long double>> t(n_plus_1 + 1, std::vector<long double>(r_plus_1 + 1, 0));
  for (std::size_t a = 0; a <= n_plus_1; ++a) t[a][0] = 1;
  for (std::size_t a = 1; a <= n_plus_1; ++a)
    for (std::size_t b = 1; b <= std::min(a, r_plus_1); ++b)
      t[a][b] = t[a - 1][b - 1] + std::pow((long double)k, (long double)b) * t[a - 1][b];
  if (t[n_plus_1][r_plus_1] > (long double)cap) throw RangeExceeded("Grassmannian too large to enumerate");
  return std::uint64_t(t[n_plus_1][r_plus_1] + 0.5L);
}

namespace detail {

// Row-by-row enumeration of RREF matrices.  `accept(rows, k)` is called after
// row k is filled and may prune; `emit(rows)` receives complete matrices.
template <class Accept, class Emit>
void enumerate_rref(const FieldPtr& field, std::size_t n, std::size_t r, std::uint32_t d, Accept&& accept,
                    Emit&& emit) {
  const Field& F = *field;
  if (d == 0) d = F.s();
  const auto scalars = F.subfield_elements(d);
  gaussian_binomial(scalars.size(), n + 1, r + 1);
  const std::size_t cols = n + 1, rows = r + 1;
  Matrix m(field, rows, cols);
  std::vector<std::size_t> piv(rows);
  std::vector<bool> is_pivot(cols, false);

  auto fill_row = [&](auto&& self, std::size_t k) -> void {
    if (k == rows) {
      emit(m);
      return;
    }
    std::vector<std::size_t> free;
    for (std::size_t j = piv[k] + 1; j < cols; ++j)
      if (!is_pivot[j]) free.push_back(j);
    for (std::size_t j = 0; j < cols; ++j) m(k, j) = F.zero();
    m(k, piv[k]) = F.one();
    std::vector<std::size_t> idx(free.size(), 0);
    for (;;) {
      if (accept(m, k)) self(self, k + 1);
      std::size_t pos = free.size();
      while (pos > 0 && idx[pos - 1] + 1 == scalars.size()) {
        idx[pos - 1] = 0;
        m(k, free[pos - 1]) = scalars[0];
        --pos;
      }
      if (pos == 0) break;
      ++idx[pos - 1];
      m(k, free[pos - 1]) = scalars[idx[pos - 1]];
    }
  };

  // pivot patterns c_0 < ... < c_r in lexicographic order
  auto choose = [&](auto&& self, std::size_t k, std::size_t start) -> void {
    if (k == rows) {
      fill_row(fill_row, 0);
      return;
    }
    for (std::size_t c = start; c + (rows - k) <= cols; ++c) {
      piv[k] = c;
      is_pivot[c] = true;
      self(self, k + 1, c + 1);
      is_pivot[c] = false;
    }
  };
  choose(choose, 0, 0);
}

}  // namespace detail

/// Visit every r-plane of P^n(GF(p^d)) (d = 0: the whole field) exactly once.
template <class Fn>
void enumerate_subspaces(const FieldPtr& field, std::size_t n, std::size_t r, std::uint32_t d, Fn&& fn) {
  detail::enumerate_rref(field, n, r, d, [](const Matrix&, std::size_t) { return true; },
                         [&](const Matrix& m) { fn(ProjSubspace{m}); });
}

/// Fr*(U)^T B U = 0 on the basis rows, i.e. restrict(f, S) is zero.
inline bool is_isotropic_subspace(const QBicForm& f, const ProjSubspace& s) {
  if (s.basis.cols() != f.dim()) throw DimensionMismatch("subspace ambient vs form dimension");
  const std::size_t k = s.basis.rows();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!evaluate(f, s.basis.row_vec(i), s.basis.row_vec(j)).is_zero()) return false;
  return true;
}

/// Visit the totally isotropic r-planes with coordinates in GF(q^{2m}); the
/// callback gets the form over the working field and the subspace.
template <class Fn>
void enumerate_isotropic(const QBicForm& f, std::size_t r, std::uint32_t m, Fn&& fn) {
  const FieldPtr work = hermitian_field(f, m);
  const QBicForm g = embed(f, work);
  const Field& F = *work;
  const std::size_t n = f.dim() - 1;
  const Matrix bt = g.gram().transpose();
  std::vector<Vec> twisted(r + 1);  // B^T u_k^(q), so beta(u_k^(q), w) = row . w
  auto accept = [&](const Matrix& rows, std::size_t k) {
    const Vec u = rows.row_vec(k);
    twisted[k] = bt * frobenius_twist(F, u, g.e(), 1);
    for (std::size_t i = 0; i <= k; ++i) {
      if (!dot(F, twisted[k], rows.row(i)).is_zero()) return false;
      if (i < k && !dot(F, twisted[i], u).is_zero()) return false;
    }
    return true;
  };
  detail::enumerate_rref(work, n, r, 2 * f.e() * m, accept, [&](const Matrix& rows) { fn(g, ProjSubspace{rows}); });
}

/// Number of GF(q^{2m})-rational totally isotropic r-planes.
inline std::uint64_t count_isotropic(const QBicForm& f, std::size_t r, std::uint32_t m) {
  std::uint64_t count = 0;
  enumerate_isotropic(f, r, m, [&](const QBicForm&, const ProjSubspace&) { ++count; });
  return count;
}

inline std::vector<ProjSubspace> isotropic_subspaces(const QBicForm& f, std::size_t r, std::uint32_t m) {
  std::vector<ProjSubspace> out;
  enumerate_isotropic(f, r, m, [&](const QBicForm&, const ProjSubspace& s) { out.push_back(s); });
  return out;
}

/// All GF(q^{2m})-lines of X through pt.  `f` and pt must be over the same
/// field, which must contain GF(q^{2m}).
inline std::vector<ProjSubspace> lines_through_point(const QBicForm& f, const ProjPoint& pt, std::uint32_t m) {
  require_on_x(f, pt);
  const Field& F = *f.field();
  const std::uint32_t d = 2 * f.e() * m;
  if (F.s() % d != 0) throw Error("form field does not contain GF(q^{2m})");
  const Vec& v = pt.coords;
  std::size_t lead = 0;
  while (v[lead].is_zero()) ++lead;
  // Each line through v meets the hyperplane x_lead = 0 in exactly one point.
  const std::size_t n = f.dim() - 1;
  std::vector<ProjSubspace> out;
  const Vec tv = tangent_row(f, v);  // beta(v^(q), .)
  enumerate_points(f.field(), n - 1, d, [&](const ProjPoint& p) {
    Vec w(n + 1, F.zero());
    for (std::size_t i = 0, j = 0; i <= n; ++i)
      if (i != lead) w[i] = p.coords[j++];
    if (!dot(F, tv, w).is_zero() || !evaluate(f, w, v).is_zero() || !evaluate(f, w, w).is_zero()) return;
    out.push_back(ProjSubspace::span(Matrix::from_rows(f.field(), std::vector<Vec>{v, w}, n + 1)));
  });
  return out;
}

/// Zariski tangent dimension of the Fano scheme at an isotropic r-plane U:
/// solutions N in Hom(U, V/U) of beta(u_i^(q), N u_j) = 0 for all i, j.
/// With a_ik = beta(u_i^(q), c_k) for a complement basis c_k the system is
/// block diagonal with r+1 copies of (a_ik), so the dimension is
/// (r+1)(n-r-rank a).
inline std::size_t fano_tangent_dim(const QBicForm& f, const ProjSubspace& s) {
  if (!is_isotropic_subspace(f, s)) throw Error("subspace is not isotropic");
  const std::size_t n = f.dim() - 1, r = s.r();
  const auto piv = rref(s.basis).pivots;
  std::vector<bool> is_piv(n + 1, false);
  for (auto c : piv) is_piv[c] = true;
  Matrix a(f.field(), r + 1, n - r);
  for (std::size_t i = 0; i <= r; ++i) {
    const Vec row = tangent_row(f, s.basis.row_vec(i));
    for (std::size_t c = 0, k = 0; c <= n; ++c)
      if (!is_piv[c]) a(i, k++) = row[c];
  }
  return (r + 1) * (n - r - rank(a));
}

/// Incidence report for the GF(q^{2m})-lines of X.  Counts are set-theoretic.
inline nlohmann::json line_count_report(const QBicForm& f, std::uint32_t m) {
  std::map<ProjPoint, std::uint64_t> incidence;
  std::uint64_t singular = 0;
  std::uint64_t total = 0;
  std::uint64_t through_singular = 0;
  std::uint64_t with_cone_point = 0;
  QBicForm g;
  enumerate_hypersurface(f, m, [&](const QBicForm& gf, const ProjPoint& p) {
    g = gf;
    incidence[p] = 0;
    singular += is_singular_point(gf, p);
  });
  const std::uint32_t d = 2 * f.e() * m;
  enumerate_isotropic(f, 1, m, [&](const QBicForm& gf, const ProjSubspace& line) {
    ++total;
    bool hits_singular = false, has_cone = false;
    enumerate_points(gf.field(), 1, d, [&](const ProjPoint& c) {
      Vec v(gf.dim(), gf.field()->zero());
      for (std::size_t i = 0; i < 2; ++i) v = add(*gf.field(), v, scale(*gf.field(), c.coords[i], line.basis.row_vec(i)));
      const ProjPoint p = ProjPoint::normalize(*gf.field(), v);
      ++incidence[p];
      hits_singular = hits_singular || is_singular_point(gf, p);
      has_cone = has_cone || is_cone_point(gf, p);
    });
    through_singular += hits_singular;
    with_cone_point += has_cone;
  });
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& [p, c] : incidence) ++hist[c];
  nlohmann::json per_point = nlohmann::json::object();
  for (const auto& [c, k] : hist) per_point[std::to_string(c)] = k;
  nlohmann::json out;
  out["type"] = classify(f).to_string();
  out["m"] = m;
  out["points"] = incidence.size();
  out["singular_points"] = singular;
  out["total"] = total;
  out["per_point"] = per_point;
  out["lines_through_singular_points"] = through_singular;
  out["lines_with_cone_point"] = with_cone_point;
  out["set_theoretic"] = true;
  return out;
}

}  // namespace qbic
