#pragma once

// Closed-form invariants checked in exact integer arithmetic: two-row
// Schubert calculus on G(2,N), Plücker degrees of Fano schemes of lines,
// Chern numbers and cohomology of the Fano surface of a smooth q-bic
// threefold, Betti numbers, zeta-function point counts, and the Hermitian
// point and subspace counts.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "qbic/error.hpp"
#include "qbic/gf.hpp"

namespace qbic {

using BigInt = boost::multiprecision::cpp_int;

namespace formulas_detail {

inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
  if (b == 0) throw Error(std::string("division by zero in ") + what);
  BigInt q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0) throw Error(std::string("inexact division in ") + what);
  return q;
}

inline BigInt power(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // stays integral at every step
  return r;
}

}  // namespace formulas_detail

// ---------------------------------------------------------------------------
// Schubert calculus on G(2,N)

/// An integer combination of Schubert classes sigma_{a,b}, N-2 >= a >= b >= 0.
class SchubertClass {
 public:
  using Partition = std::pair<unsigned, unsigned>;

  explicit SchubertClass(unsigned N) : n_(N) {
    if (N < 2) throw Error("G(2,N) needs N >= 2");
  }
  static SchubertClass sigma(unsigned N, unsigned a, unsigned b = 0) {
    SchubertClass c(N);
    c.add(a, b, 1);
    return c;
  }

  unsigned N() const { return n_; }
  bool admissible(unsigned a, unsigned b) const { return a <= n_ - 2 && b <= a; }

  void add(unsigned a, unsigned b, const BigInt& coeff) {
    if (!admissible(a, b)) throw Error("partition outside the G(2,N) rectangle");
    if (coeff == 0) return;
    auto& slot = terms_[{a, b}];
    slot += coeff;
    if (slot == 0) terms_.erase({a, b});
  }
  BigInt coefficient(unsigned a, unsigned b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  const std::map<Partition, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SchubertClass& operator+=(const SchubertClass& o) {
    check_same(o);
    for (const auto& [ab, c] : o.terms_) add(ab.first, ab.second, c);
    return *this;
  }
  SchubertClass& operator-=(const SchubertClass& o) {
    check_same(o);
    for (const auto& [ab, c] : o.terms_) add(ab.first, ab.second, -c);
    return *this;
  }
  friend SchubertClass operator+(SchubertClass a, const SchubertClass& b) { return a += b; }
  friend SchubertClass operator-(SchubertClass a, const SchubertClass& b) { return a -= b; }
  friend SchubertClass operator*(const BigInt& k, SchubertClass c) {
    if (k == 0) return SchubertClass(c.n_);
    for (auto& [ab, v] : c.terms_) v *= k;
    return c;
  }
  friend bool operator==(const SchubertClass&, const SchubertClass&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      if (it->second != 1) s += it->second.str() + "*";
      s += "s(" + std::to_string(it->first.first) + "," + std::to_string(it->first.second) + ")";
    }
    return s;
  }

 private:
  void check_same(const SchubertClass& o) const {
    if (o.n_ != n_) throw DimensionMismatch("Schubert classes on different Grassmannians");
  }
  unsigned n_;
  std::map<Partition, BigInt> terms_;
};

/// c * sigma_k by Pieri's rule: sigma_k sigma_{a,b} is the sum of sigma_{a',b'}
/// with a' >= a >= b' >= b and a' + b' = a + b + k, inside the rectangle.
inline SchubertClass special_product(const SchubertClass& c, unsigned k) {
  SchubertClass out(c.N());
  const unsigned top = c.N() - 2;
  for (const auto& [ab, coeff] : c.terms()) {
    const auto [a, b] = ab;
    for (unsigned b2 = b; b2 <= a; ++b2) {
      const unsigned a2 = a + b + k - b2;
      if (a2 < a || a2 > top) continue;
      out.add(a2, b2, coeff);
    }
  }
  return out;
}

/// c * sigma_1^k.
inline SchubertClass pieri(SchubertClass c, unsigned k) {
  for (unsigned i = 0; i < k; ++i) c = special_product(c, 1);
  return c;
}

/// General product through Giambelli: sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}.
inline SchubertClass multiply(const SchubertClass& c, const SchubertClass& d) {
  if (c.N() != d.N()) throw DimensionMismatch("Schubert classes on different Grassmannians");
  SchubertClass out(c.N());
  for (const auto& [ab, coeff] : d.terms()) {
    const auto [a, b] = ab;
    SchubertClass term = special_product(special_product(c, b), a);
    if (b > 0) term -= special_product(special_product(c, b - 1), a + 1);
    out += coeff * term;
  }
  return out;
}

/// Degree of a top-dimensional class: its coefficient on sigma_{N-2,N-2}.
inline BigInt grassmannian_degree(const SchubertClass& c) {
  const unsigned top = c.N() - 2;
  for (const auto& [ab, coeff] : c.terms())
    if (ab.first + ab.second != 2 * top) throw Error("class is not of top degree " + std::to_string(2 * top));
  return c.coefficient(top, top);
}

/// deg O_{G(2,N)}(1) = C(2N-4, N-1) / (N-2).
inline BigInt grassmannian_degree_closed(unsigned N) {
  if (N < 3) throw Error("closed form needs N >= 3");
  return formulas_detail::exact_div(formulas_detail::binomial(2 * N - 4, N - 1), N - 2, "Grassmannian degree");
}

/// Plücker degree of the Fano scheme of lines of a smooth q-bic (n-1)-fold,
/// as deg(sigma_1^{2n-6} [(q+1)(q^3+1) sigma_{2,2} + q(q+1)^2 sigma_{3,1}]) on G(2,n+1).
inline BigInt fano_plucker_degree_schubert(const BigInt& q, unsigned n) {
  if (n < 4) throw Error("Plücker degree formula needs n >= 4");
  SchubertClass c(n + 1);
  c.add(2, 2, (q + 1) * (q * q * q + 1));
  c.add(3, 1, q * (q + 1) * (q + 1));
  return grassmannian_degree(pieri(c, 2 * n - 6));
}

/// (2n-6)! / ((n-1)!(n-3)!) (q+1)^2 ((n-1)q^2 + (2n-8)q + (n-1)).
inline BigInt fano_plucker_degree_closed(const BigInt& q, unsigned n) {
  using namespace formulas_detail;
  if (n < 4) throw Error("Plücker degree formula needs n >= 4");
  const BigInt poly = (q + 1) * (q + 1) * (BigInt(n - 1) * q * q + BigInt(2 * int(n) - 8) * q + BigInt(n - 1));
  return exact_div(factorial(2 * n - 6) * poly, factorial(n - 1) * factorial(n - 3), "Plücker degree");
}

// ---------------------------------------------------------------------------
// The Fano surface S of a smooth q-bic threefold

struct ChernNumbers {
  BigInt c1_squared, c2, chi;
};

inline ChernNumbers chern_and_chi(const BigInt& q) {
  if (q < 2) throw Error("q must be at least 2");
  ChernNumbers out;
  const BigInt q2 = q * q, q3 = q2 * q, q4 = q3 * q, sq = (q + 1) * (q + 1);
  out.c1_squared = sq * (q2 + 1) * (2 * q - 3) * (2 * q - 3);
  out.c2 = sq * (q4 - 3 * q3 + 4 * q2 - 4 * q + 3);
  out.chi = formulas_detail::exact_div(sq * (5 * q4 - 15 * q3 + 17 * q2 - 16 * q + 12), 12, "chi(O_S)");
  return out;
}

inline bool noether_holds(const ChernNumbers& c) { return 12 * c.chi == c.c1_squared + c.c2; }

struct CohomologyDims {
  BigInt h0, h1, h2;
  friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

/// Dimensions of H^i(S, O_S) when q = p is prime.
inline CohomologyDims cohomology_dims(std::uint64_t p) {
  using formulas_detail::exact_div;
  if (!detail::is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  const BigInt P = p;
  CohomologyDims out;
  out.h0 = 1;
  out.h1 = exact_div(P * (P - 1) * (P * P + 1), 2, "h^1");
  out.h2 = exact_div(P * (P - 1) * (5 * P * P * P * P - 2 * P * P - 5 * P - 2), 12, "h^2");
  return out;
}

/// b_0, ..., b_4 of S.
inline std::array<BigInt, 5> betti_S(const BigInt& q) {
  const BigInt b1 = q * (q - 1) * (q * q + 1);
  const BigInt b2 = (q * q * q * q - q * q * q + 1) * (q * q + 1);
  return {BigInt(1), b1, b2, b1, BigInt(1)};
}

/// b_{n-1,prim} of a smooth q-bic (n-1)-fold: q(q^n - (-1)^n)/(q+1).
inline BigInt primitive_betti(const BigInt& q, unsigned n) {
  const BigInt sgn = n % 2 ? -1 : 1;
  return formulas_detail::exact_div(q * (formulas_detail::power(q, n) - sgn), q + 1, "primitive Betti number");
}

/// Zeta data of either the Fano surface S or a smooth hypersurface X, over GF(q^2).
struct ZetaSpec {
  BigInt q;
  std::optional<unsigned> n;  // hypersurface in P^n; empty for S
  std::vector<BigInt> betti;  // (b_0..b_4) for S, (b_{n-1,prim}) for X
  int sign = 1;               // middle eigenvalues (sign * q^{n-1}) for X

  static ZetaSpec fano_surface(const BigInt& q) {
    const auto b = betti_S(q);
    return ZetaSpec{q, std::nullopt, std::vector<BigInt>(b.begin(), b.end()), 1};
  }
  static ZetaSpec hypersurface(const BigInt& q, unsigned n, int sign) {
    if (sign != 1 && sign != -1) throw Error("eigenvalue sign must be +1 or -1");
    if (n < 1) throw Error("hypersurface needs n >= 1");
    return ZetaSpec{q, n, {primitive_betti(q, n)}, sign};
  }
};

/// Points over GF(q^{2k}) read off from the zeta function.
inline BigInt zeta_point_count(const ZetaSpec& z, unsigned k) {
  using formulas_detail::power;
  if (k == 0) throw Error("k must be positive");
  const BigInt& q = z.q;
  if (!z.n) {
    // 1 + b2 q^{2k} + q^{4k} - b1 (-q)^k - b3 (-q^3)^k
    const auto& b = z.betti;
    return 1 + b[2] * power(q, 2 * k) + power(q, 4 * k) - b[1] * power(-q, k) - b[3] * power(-q * q * q, k);
  }
  const unsigned n = *z.n;
  BigInt total = 0;
  for (unsigned i = 0; i < n; ++i) total += power(q, 2 * i * k);
  const BigInt middle = power(BigInt(z.sign) * power(q, n - 1), k) * z.betti[0];
  return (n - 1) % 2 ? BigInt(total - middle) : BigInt(total + middle);
}

inline BigInt zeta_X_count(const BigInt& q, unsigned n, int sign, unsigned k) {
  return zeta_point_count(ZetaSpec::hypersurface(q, n, sign), k);
}

/// The sign whose k = 1 expansion equals `count`, if exactly one does.
inline std::optional<int> zeta_sign_matching(const BigInt& q, unsigned n, const BigInt& count) {
  const bool plus = zeta_X_count(q, n, 1, 1) == count;
  const bool minus = zeta_X_count(q, n, -1, 1) == count;
  if (plus == minus) return std::nullopt;
  return plus ? 1 : -1;
}

struct BinomialSides {
  BigInt lhs, rhs;  // C(2p+1,4) - 4C(p+1,4) and (p^2+1)C(p,2) + C(p,3)
  bool holds() const { return lhs == rhs; }
};

inline BinomialSides binomial_identity_sides(std::uint64_t p) {
  using formulas_detail::binomial;
  if (p < 2) throw Error("p must be at least 2");
  const long P = long(p);
  return {binomial(2 * P + 1, 4) - 4 * binomial(P + 1, 4), (BigInt(p) * p + 1) * binomial(P, 2) + binomial(P, 3)};
}

inline bool binomial_identity_H0CF(std::uint64_t p) { return binomial_identity_sides(p).holds(); }

struct HermitianCounts {
  BigInt points, max_isotropic;
};

/// Hermitian points of a smooth q-bic (n-1)-fold and its maximal isotropic
/// Hermitian subspaces.
inline HermitianCounts hermitian_count_formulas(const BigInt& q, unsigned n) {
  using formulas_detail::power;
  if (n < 1) throw Error("n must be positive");
  const BigInt s1 = (n + 1) % 2 ? -1 : 1, s0 = n % 2 ? -1 : 1;
  HermitianCounts out;
  out.points = formulas_detail::exact_div((power(q, n + 1) - s1) * (power(q, n) - s0), q * q - 1, "Hermitian points");
  out.max_isotropic = 1;
  const unsigned m = (n - 1) / 2;
  const unsigned shift = (n - 1) % 2 ? 3 : 1;
  for (unsigned i = 0; i <= m; ++i) out.max_isotropic *= power(q, 2 * i + shift) + 1;
  return out;
}

// ---------------------------------------------------------------------------

/// JSON table of closed-form values and internal consistency verdicts.
inline nlohmann::json formulas_report(unsigned max_q = 10, unsigned max_n = 12) {
  nlohmann::json out;
  out["schema"] = 1;
  auto str = [](const BigInt& x) { return x.str(); };

  nlohmann::json plucker = nlohmann::json::array();
  bool routes_agree = true;
  for (unsigned n = 4; n <= max_n; ++n)
    for (unsigned q = 2; q <= max_q; ++q) {
      const BigInt a = fano_plucker_degree_schubert(q, n), b = fano_plucker_degree_closed(q, n);
      routes_agree = routes_agree && a == b;
      plucker.push_back({{"q", q}, {"n", n}, {"schubert", str(a)}, {"closed", str(b)}, {"agree", a == b}});
    }
  out["plucker_degree"] = {{"values", plucker}, {"routes_agree", routes_agree}};

  nlohmann::json chern = nlohmann::json::array();
  bool noether = true;
  for (unsigned q = 2; q <= std::max(max_q, 50u); ++q) {
    const auto c = chern_and_chi(q);
    noether = noether && noether_holds(c);
    chern.push_back({{"q", q}, {"c1_squared", str(c.c1_squared)}, {"c2", str(c.c2)}, {"chi", str(c.chi)}});
  }
  out["chern"] = {{"values", chern}, {"noether_holds", noether}};

  nlohmann::json coh = nlohmann::json::array();
  bool euler = true;
  for (unsigned p = 2; p <= 31; ++p) {
    if (!detail::is_prime(p)) continue;
    const auto h = cohomology_dims(p);
    const bool ok = h.h0 - h.h1 + h.h2 == chern_and_chi(p).chi && 2 * h.h1 == betti_S(p)[1];
    euler = euler && ok;
    coh.push_back({{"p", p}, {"h0", str(h.h0)}, {"h1", str(h.h1)}, {"h2", str(h.h2)}, {"consistent", ok}});
  }
  out["cohomology"] = {{"values", coh}, {"euler_consistent", euler}};

  nlohmann::json zeta = nlohmann::json::array();
  bool zeta_ok = true;
  for (unsigned q = 2; q <= max_q; ++q) {
    const BigInt z = zeta_point_count(ZetaSpec::fano_surface(q), 1);
    const BigInt expect = (BigInt(q) * q * q + 1) * (BigInt(q) * q * q * q * q + 1);
    zeta_ok = zeta_ok && z == expect;
    nlohmann::json b = nlohmann::json::array();
    for (const auto& x : betti_S(q)) b.push_back(str(x));
    zeta.push_back({{"q", q}, {"betti", b}, {"count_k1", str(z)}, {"product", str(expect)}});
  }
  out["fano_surface_zeta"] = {{"values", zeta}, {"matches_product", zeta_ok}};

  bool binom = true;
  for (unsigned p = 2; p <= 100; ++p) binom = binom && binomial_identity_H0CF(p);
  out["binomial_identity"] = {{"range", {2, 100}}, {"holds", binom}};

  nlohmann::json herm = nlohmann::json::array();
  for (unsigned q = 2; q <= std::min(max_q, 5u); ++q)
    for (unsigned n = 1; n <= std::min(max_n, 6u); ++n) {
      const auto h = hermitian_count_formulas(q, n);
      herm.push_back({{"q", q}, {"n", n}, {"points", str(h.points)}, {"max_isotropic", str(h.max_isotropic)}});
    }
  out["hermitian_counts"] = herm;
  return out;
}

}  // namespace qbic
