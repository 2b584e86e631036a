#pragma once

// Small helpers shared by the test programs.  Nothing here calls into the
// algorithms under test beyond field arithmetic.

#include <random>
#include <vector>

#include "qbic/gf.hpp"
#include "qbic/linalg.hpp"

namespace qbic::testing {

inline Elem rand_elem(const Field& F, std::mt19937_64& rng) {
  return F.from_code(std::uniform_int_distribution<std::uint64_t>(0, F.size() - 1)(rng));
}

inline Vec rand_vec(const Field& F, std::size_t n, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& x : v) x = rand_elem(F, rng);
  return v;
}

inline Vec unit(const FieldPtr& F, std::size_t n, std::size_t i) {
  Vec v(n, F->zero());
  v[i] = F->one();
  return v;
}

inline Matrix diag(const FieldPtr& F, const std::vector<Elem>& d) {
  Matrix m(F, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

/// Every vector of GF(p^d)^n, as elements of F.
inline std::vector<Vec> all_vectors(const Field& F, std::size_t n, std::uint32_t d) {
  const auto scalars = F.subfield_elements(d);
  std::vector<Vec> out{Vec(n, F.zero())};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    next.reserve(out.size() * scalars.size());
    for (const Vec& v : out)
      for (Elem c : scalars) {
        Vec w = v;
        w[i] = c;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// Naive q-bic pairing v^(q)^T B w using only field operations.
inline Elem naive_pair(const Field& F, const Matrix& B, std::uint32_t e, const Vec& v, const Vec& w) {
  Elem acc = F.zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Elem vq = v[i];
    for (std::uint32_t j = 0; j < e; ++j) vq = F.pow(vq, F.p());
    for (std::size_t j = 0; j < w.size(); ++j) acc = F.add(acc, F.mul(F.mul(vq, B(i, j)), w[j]));
  }
  return acc;
}

}  // namespace qbic::testing
