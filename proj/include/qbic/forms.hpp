#pragma once

// q-bic forms: a Gram matrix B with B_ij = beta(e_i^(q), e_j) over a field
// containing GF(q^2).  Provides evaluation, change of basis, orthogonals and
// the two canonical filtrations, and classification of the geometric type by
// matching filtration dimensions against the standard forms.

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qbic/error.hpp"
#include "qbic/gf.hpp"
#include "qbic/linalg.hpp"

namespace qbic {

class QBicForm {
 public:
  QBicForm() = default;
  QBicForm(Matrix gram, std::uint32_t e) : gram_(std::move(gram)), e_(e) {
    if (!gram_.is_square()) throw DimensionMismatch("Gram matrix must be square");
    if (e_ == 0 || field()->s() % (2 * e_) != 0)
      throw Error("ambient field must contain GF(q^2): need 2e | s");
  }

  const FieldPtr& field() const { return gram_.field(); }
  const Matrix& gram() const { return gram_; }
  std::uint32_t e() const { return e_; }
  std::size_t dim() const { return gram_.rows(); }
  std::uint64_t q() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e_; ++i) q *= field()->p();
    return q;
  }
  /// B^(q^k), the Gram matrix of the k-th Frobenius twist of the form.
  Matrix twisted_gram(std::int64_t k) const { return k == 0 ? gram_ : frobenius_twist(gram_, e_, k); }
  bool is_nonsingular() const { return !determinant(gram_).is_zero(); }

  friend bool operator==(const QBicForm& a, const QBicForm& b) { return a.e_ == b.e_ && a.gram_ == b.gram_; }

 private:
  Matrix gram_;
  std::uint32_t e_ = 1;
};

/// Re-express a form over an extension field.
inline QBicForm embed(const QBicForm& f, const FieldPtr& target) {
  if (target == f.field()) return f;
  Embedding emb(f.field(), target);
  Matrix g(target, f.dim(), f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < f.dim(); ++j) g(i, j) = emb(f.gram()(i, j));
  return QBicForm(std::move(g), f.e());
}

/// Geometric type: a_k blocks N_k (N_1 is the 1x1 zero block) and b blocks 1.
struct TypeSignature {
  std::map<std::uint32_t, std::uint32_t> nilpotent;  // k -> a_k, only a_k > 0 stored
  std::uint32_t ones = 0;

  std::size_t dim() const {
    std::size_t d = ones;
    for (auto [k, a] : nilpotent) d += std::size_t(k) * a;
    return d;
  }

  /// "N2+1+1+1", "N3+1", or "X^c" when all blocks are equal: "1^5", "N1^4".
  std::string to_string() const {
    std::vector<std::string> blocks;
    for (auto it = nilpotent.rbegin(); it != nilpotent.rend(); ++it)
      for (std::uint32_t i = 0; i < it->second; ++i) blocks.push_back("N" + std::to_string(it->first));
    for (std::uint32_t i = 0; i < ones; ++i) blocks.push_back("1");
    if (blocks.empty()) return "";
    bool uniform = true;
    for (const auto& b : blocks) uniform = uniform && b == blocks.front();
    if (uniform && blocks.size() > 1) return blocks.front() + "^" + std::to_string(blocks.size());
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "+" : "") + blocks[i];
    return out;
  }

  /// Accepts tokens "Nk", "1", "0" (= N1), each with an optional "^c", joined by '+'.
  static TypeSignature parse(const std::string& text) {
    TypeSignature sig;
    if (text.empty() || text.back() == '+') throw ParseError("bad signature '" + text + "'");
    std::stringstream ss(text);
    std::string tok;
    bool any = false;
    while (std::getline(ss, tok, '+')) {
      if (tok.empty()) throw ParseError("empty block in signature '" + text + "'");
      std::uint32_t count = 1;
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        count = parse_uint(tok.substr(caret + 1), text);
        tok = tok.substr(0, caret);
      }
      if (tok == "1") {
        sig.ones += count;
      } else if (tok == "0") {
        sig.nilpotent[1] += count;
      } else if (tok.size() >= 2 && (tok[0] == 'N' || tok[0] == 'n')) {
        const std::uint32_t k = parse_uint(tok.substr(1), text);
        if (k == 0) throw ParseError("N0 is not a block");
        sig.nilpotent[k] += count;
      } else {
        throw ParseError("bad block '" + tok + "' in signature '" + text + "'");
      }
      any = true;
    }
    if (!any) throw ParseError("empty signature");
    std::erase_if(sig.nilpotent, [](const auto& kv) { return kv.second == 0; });
    return sig;
  }

  friend bool operator==(const TypeSignature&, const TypeSignature&) = default;
  friend auto operator<=>(const TypeSignature&, const TypeSignature&) = default;

 private:
  static std::uint32_t parse_uint(const std::string& s, const std::string& ctx) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad number in signature '" + ctx + "'");
    return std::uint32_t(std::stoul(s));
  }
};

/// Every signature of total dimension `dim`.
inline std::vector<TypeSignature> all_signatures(std::size_t dim) {
  std::vector<TypeSignature> out;
  // partitions of r into parts of size <= maxk
  std::vector<std::uint32_t> parts;
  auto rec = [&](auto&& self, std::uint32_t r, std::uint32_t maxk, std::uint32_t ones) -> void {
    if (r == 0) {
      TypeSignature sig;
      sig.ones = ones;
      for (auto k : parts) ++sig.nilpotent[k];
      out.push_back(std::move(sig));
      return;
    }
    for (std::uint32_t k = std::min(r, maxk); k >= 1; --k) {
      parts.push_back(k);
      self(self, r - k, k, ones);
      parts.pop_back();
    }
  };
  for (std::uint32_t b = 0; b <= dim; ++b) rec(rec, std::uint32_t(dim - b), std::uint32_t(dim - b), b);
  return out;
}

/// Dimension data of both canonical filtrations, each padded to dim + 1 terms.
struct FiltrationProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> m_dims;       // M_0 ⊆ M_1 ⊆ ...
  std::vector<std::size_t> m_perp_dims;  // Fr*(M_i)^⊥
  std::vector<std::size_t> w_dims;       // W_0, W_1, ...
  std::vector<std::size_t> w_perp_dims;  // W_i^{Fr*(⊥)}

  friend bool operator==(const FiltrationProfile&, const FiltrationProfile&) = default;
  friend auto operator<=>(const FiltrationProfile&, const FiltrationProfile&) = default;
};

// ---------------------------------------------------------------------------
// Evaluation and change of basis

/// beta(v^(q), w) = (v^(q))^T B w.
inline Elem evaluate(const QBicForm& f, const Vec& v, const Vec& w) {
  if (v.size() != f.dim() || w.size() != f.dim()) throw DimensionMismatch("vector length vs form dimension");
  const Field& F = *f.field();
  const Matrix& B = f.gram();
  Elem acc{};
  for (std::size_t i = 0; i < f.dim(); ++i) {
    if (v[i].is_zero()) continue;
    Elem row{};
    for (std::size_t j = 0; j < f.dim(); ++j) row = F.add(row, F.mul(B(i, j), w[j]));
    acc = F.add(acc, F.mul(F.qfrob(v[i], f.e(), 1), row));
  }
  return acc;
}

/// Fr*(A)^T B A: the Gram matrix in the basis given by the columns of A.
inline Matrix gram_in_basis(const QBicForm& f, const Matrix& a) {
  if (!a.is_square() || a.rows() != f.dim()) throw DimensionMismatch("change of basis must be square of form dimension");
  if (determinant(a).is_zero()) throw Error("change of basis is singular");
  return frobenius_twist(a, f.e(), 1).transpose() * f.gram() * a;
}

inline QBicForm change_basis(const QBicForm& f, const Matrix& a) { return QBicForm(gram_in_basis(f, a), f.e()); }

/// Gram matrix of beta restricted to S, in the RREF basis of S.
inline QBicForm restrict(const QBicForm& f, const Subspace& s) {
  if (s.ambient() != f.dim()) throw DimensionMismatch("subspace ambient vs form dimension");
  const Matrix a = s.basis().transpose();
  return QBicForm(frobenius_twist(a, f.e(), 1).transpose() * f.gram() * a, f.e());
}

// ---------------------------------------------------------------------------
// Orthogonals

enum class Side {
  Left,   // S ⊆ Fr*(V):  {w : x^T B w = 0 for x in S} ⊆ V
  Right,  // S ⊆ V:       {x : x^T B s = 0 for s in S} ⊆ Fr*(V)
};

/// Orthogonal of S with respect to the Frobenius twist of level `level`
/// (Gram matrix B^(q^level)).
inline Subspace orthogonal(const QBicForm& f, const Subspace& s, Side side, std::int64_t level = 0) {
  if (s.ambient() != f.dim()) throw DimensionMismatch("subspace ambient vs form dimension");
  if (s.dim() == 0) return Subspace::full(f.field(), f.dim());
  const Matrix b = f.twisted_gram(level);
  return kernel(side == Side::Left ? s.basis() * b : s.basis() * b.transpose());
}

struct Kernels {
  Subspace left;            // Fr*(V)^⊥ = ker B
  Subspace right;           // V^⊥ = ker B^T, in Fr*(V)
  Subspace right_preimage;  // Fr^{-1}(V^⊥)
};

inline Kernels kernels(const QBicForm& f) {
  Kernels k;
  k.left = kernel(f.gram());
  k.right = kernel(f.gram().transpose());
  k.right_preimage = frobenius_preimage(k.right, f.e());
  return k;
}

inline Subspace radical(const QBicForm& f) {
  const Kernels k = kernels(f);
  return subspace_intersect(k.left, k.right_preimage);
}

inline std::size_t corank(const QBicForm& f) { return f.dim() - rank(f.gram()); }

// ---------------------------------------------------------------------------
// Filtrations

/// M_0 = rad, M_i = Fr*(Fr*(M_{i-1})^⊥)^⊥, until the chain repeats.
inline std::vector<Subspace> perp_filtration(const QBicForm& f) {
  std::vector<Subspace> chain{radical(f)};
  for (std::size_t i = 0; i <= f.dim(); ++i) {
    const Subspace outer = orthogonal(f, frobenius_image(chain.back(), f.e()), Side::Left);
    Subspace next = orthogonal(f, frobenius_image(outer, f.e()), Side::Left);
    if (next == chain.back()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

/// M_0 ⊆ M_1 ⊆ ... ⊆ M_last ⊆ ... ⊆ Fr*(M_1)^⊥ ⊆ Fr*(M_0)^⊥, with repeats removed.
inline std::vector<Subspace> extended_perp_filtration(const QBicForm& f) {
  std::vector<Subspace> out = perp_filtration(f);
  const std::size_t m = out.size();
  for (std::size_t i = m; i-- > 0;) {
    Subspace s = orthogonal(f, frobenius_image(out[i], f.e()), Side::Left);
    if (!(s == out.back())) out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

struct WStep {
  Subspace w;       // W_i ⊆ Fr^{2i-1,*}(V)
  Subspace w_perp;  // W_i^{Fr*(⊥)} ⊆ Fr^{2i,*}(V)
};

// W_0 = rad, W_1 = V^⊥, W_i = W_{i-1}^{Fr*(⊥),Fr*(⊥)}; `count` terms.
inline std::vector<WStep> w_chain(const QBicForm& f, std::size_t count) {
  std::vector<WStep> out;
  const FieldPtr& field = f.field();
  const std::size_t n = f.dim();
  // W_0^{Fr*(⊥)} is the whole of V by convention.
  out.push_back({radical(f), Subspace::full(field, n)});
  Subspace w = kernel(f.gram().transpose());
  for (std::size_t i = 1; i < count; ++i) {
    // pairing Fr^{2i}(V) x Fr^{2i-1}(V) via B^(q^(2i-1))
    const Matrix b_odd = f.twisted_gram(std::int64_t(2 * i - 1));
    Subspace w_perp = w.dim() == 0 ? Subspace::full(field, n) : kernel(w.basis() * b_odd.transpose());
    out.push_back({w, w_perp});
    // pairing Fr^{2i+1}(V) x Fr^{2i}(V) via B^(q^(2i))
    const Matrix b_even = f.twisted_gram(std::int64_t(2 * i));
    w = w_perp.dim() == 0 ? Subspace::full(field, n) : kernel(w_perp.basis() * b_even.transpose());
  }
  return out;
}

}  // namespace detail

/// (dim W_i, dim W_i^{Fr*(⊥)}) until the dimension sequence repeats.
inline std::vector<std::pair<std::size_t, std::size_t>> frstar_perp_filtration(const QBicForm& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& step : detail::w_chain(f, f.dim() + 2)) {
    std::pair<std::size_t, std::size_t> d{step.w.dim(), step.w_perp.dim()};
    if (out.size() >= 2 && out.back() == d) break;
    out.push_back(d);
  }
  return out;
}

inline FiltrationProfile invariant_profile(const QBicForm& f) {
  FiltrationProfile prof;
  const std::size_t len = f.dim() + 1;
  prof.rank = rank(f.gram());
  const auto chain = perp_filtration(f);
  for (std::size_t i = 0; i < len; ++i) {
    const Subspace& m = chain[std::min(i, chain.size() - 1)];
    prof.m_dims.push_back(m.dim());
    prof.m_perp_dims.push_back(orthogonal(f, frobenius_image(m, f.e()), Side::Left).dim());
  }
  for (const auto& step : detail::w_chain(f, len)) {
    prof.w_dims.push_back(step.w.dim());
    prof.w_perp_dims.push_back(step.w_perp.dim());
  }
  return prof;
}

// ---------------------------------------------------------------------------
// Standard forms and classification

inline QBicForm standard_gram(const TypeSignature& sig, const FieldPtr& field, std::uint32_t e) {
  const std::size_t n = sig.dim();
  if (n == 0) throw Error("signature has dimension zero");
  Matrix g(field, n, n);
  std::size_t off = 0;
  for (auto it = sig.nilpotent.rbegin(); it != sig.nilpotent.rend(); ++it)
    for (std::uint32_t c = 0; c < it->second; ++c) {
      for (std::size_t i = 0; i + 1 < it->first; ++i) g(off + i, off + i + 1) = field->one();
      off += it->first;
    }
  for (std::uint32_t c = 0; c < sig.ones; ++c, ++off) g(off, off) = field->one();
  return QBicForm(std::move(g), e);
}

/// Table profile -> signatures for one (q, dim); built once and shared.
class ProfileTable {
 public:
  static const ProfileTable& get(std::uint32_t p, std::uint32_t e, std::size_t dim) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::size_t>, std::unique_ptr<ProfileTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{p, e, dim}];
    if (!slot) slot.reset(new ProfileTable(p, e, dim));
    return *slot;
  }

  const std::map<FiltrationProfile, std::vector<TypeSignature>>& entries() const { return entries_; }
  bool injective() const {
    for (const auto& [prof, sigs] : entries_)
      if (sigs.size() != 1) return false;
    return true;
  }
  std::size_t signature_count() const { return count_; }

 private:
  ProfileTable(std::uint32_t p, std::uint32_t e, std::size_t dim) {
    auto field = make_field(p, 2 * e);
    for (const auto& sig : all_signatures(dim)) {
      entries_[invariant_profile(standard_gram(sig, field, e))].push_back(sig);
      ++count_;
    }
  }

  std::map<FiltrationProfile, std::vector<TypeSignature>> entries_;
  std::size_t count_ = 0;
};

/// The geometric type of f.  Throws NoMatch / AmbiguousMatch when the profile
/// table fails to identify a unique standard form.
inline TypeSignature classify(const QBicForm& f) {
  const auto& table = ProfileTable::get(f.field()->p(), f.e(), f.dim());
  const FiltrationProfile prof = invariant_profile(f);
  auto it = table.entries().find(prof);
  if (it == table.entries().end()) throw NoMatch("no standard form has this filtration profile");
  if (it->second.size() != 1) {
    std::string names;
    for (const auto& s : it->second) names += " " + s.to_string();
    throw AmbiguousMatch("filtration profile shared by:" + names);
  }
  return it->second.front();
}

// ---------------------------------------------------------------------------
// Orthogonal complements

struct ComplementResult {
  bool exists = false;
  std::optional<Subspace> complement;  // set when the complement is unique
};

/// S has an orthogonal complement iff dim V - dim S = dim W - dim(W ∩ S),
/// W = Fr*(S)^⊥ ∩ Fr^{-1}(S^⊥); unique iff W ∩ S = 0.
inline Subspace complement_candidates(const QBicForm& f, const Subspace& s) {
  const Subspace a = orthogonal(f, frobenius_image(s, f.e()), Side::Left);
  const Subspace b = frobenius_preimage(orthogonal(f, s, Side::Right), f.e());
  return subspace_intersect(a, b);
}

inline ComplementResult has_orthogonal_complement(const QBicForm& f, const Subspace& s) {
  const Subspace w = complement_candidates(f, s);
  const Subspace ws = subspace_intersect(w, s);
  ComplementResult res;
  res.exists = f.dim() - s.dim() == w.dim() - ws.dim();
  if (res.exists && ws.dim() == 0) res.complement = w;
  return res;
}

// ---------------------------------------------------------------------------
// Random forms and automorphisms

inline Matrix random_matrix(const FieldPtr& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, field->size() - 1);
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field->from_code(dist(rng));
  return m;
}

inline Matrix random_invertible(const FieldPtr& field, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(field, n, n, rng);
    if (!determinant(m).is_zero()) return m;
  }
}

/// Gram P D Q with P, Q uniformly random invertible and D = diag(1^rank, 0).
inline QBicForm random_form(const FieldPtr& field, std::uint32_t e, std::size_t dim, std::size_t rank,
                            std::mt19937_64& rng) {
  if (rank > dim) throw Error("rank exceeds dimension");
  Matrix d(field, dim, dim);
  for (std::size_t i = 0; i < rank; ++i) d(i, i) = field->one();
  const Matrix p = random_invertible(field, dim, rng);
  const Matrix q = random_invertible(field, dim, rng);
  return QBicForm(p * d * q, e);
}

/// Number of g in GL(GF(p^d)) with Fr*(g)^T B g = B, by exhaustive search
/// over columns (entries of B must lie in GF(p^d)).
inline std::uint64_t automorphism_count_bruteforce(const QBicForm& f, std::uint32_t d) {
  const Field& F = *f.field();
  const auto scalars = F.subfield_elements(d);
  const std::size_t n = f.dim();
  double log2_size = double(n * n) * std::log2(double(scalars.size()));
  if (log2_size > 24.0 + 1e-9) throw RangeExceeded("automorphism search space exceeds 2^24");
  const Matrix& B = f.gram();
  const std::uint32_t e = f.e();

  // All candidate columns, with their q-twists.
  std::vector<Vec> cols{Vec(n, F.zero())};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const Vec& c : cols)
      for (Elem x : scalars) {
        Vec v = c;
        v[i] = x;
        next.push_back(std::move(v));
      }
    cols = std::move(next);
  }
  std::vector<Vec> twisted;
  twisted.reserve(cols.size());
  for (const Vec& c : cols) twisted.push_back(frobenius_twist(F, c, e, 1));

  auto pair = [&](std::size_t a, std::size_t b) {  // beta(col_a^(q), col_b)
    const Vec& x = twisted[a];
    const Vec& y = cols[b];
    Elem acc{};
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      Elem r{};
      for (std::size_t j = 0; j < n; ++j) r = F.add(r, F.mul(B(i, j), y[j]));
      acc = F.add(acc, F.mul(x[i], r));
    }
    return acc;
  };

  std::vector<std::size_t> chosen;
  std::uint64_t count = 0;
  auto rec = [&](auto&& self) -> void {
    const std::size_t j = chosen.size();
    if (j == n) {
      Matrix g(f.field(), n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) g(r, c) = cols[chosen[c]][r];
      if (!determinant(g).is_zero()) ++count;
      return;
    }
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
      if (pair(idx, idx) != B(j, j)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i)
        ok = pair(chosen[i], idx) == B(i, j) && pair(idx, chosen[i]) == B(j, i);
      if (!ok) continue;
      chosen.push_back(idx);
      self(self);
      chosen.pop_back();
    }
  };
  rec(rec);
  return count;
}

}  // namespace qbic
