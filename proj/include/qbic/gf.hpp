#pragma once

// Finite fields GF(p^s) in Zech-logarithm representation.
//
// Every nonzero element is stored as its discrete logarithm with respect to a
// fixed primitive element g (the class of the variable modulo the defining
// polynomial); zero has a reserved encoding.  Multiplication, inversion and
// Frobenius are exponent arithmetic modulo p^s - 1, addition goes through a
// Zech table.  All tables are built once per field and shared read-only.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qbic/error.hpp"

namespace qbic {

/// A field element: discrete log, or kZeroLog for zero.
struct Elem {
  static constexpr std::uint32_t kZeroLog = 0xFFFFFFFFu;
  std::uint32_t log = kZeroLog;

  constexpr bool is_zero() const { return log == kZeroLog; }
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over GF(p), coefficient i is the x^i coefficient.
using Poly = std::vector<std::uint32_t>;

// a * b mod f, where f is monic of degree s and a, b have degree < s.
inline Poly polymulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  const std::size_t s = f.size() - 1;
  std::vector<std::uint64_t> prod(2 * s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  }
  for (std::size_t k = 2 * s - 1; k >= s; --k) {
    const std::uint64_t top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < s; ++i)
      prod[k - s + i] = (prod[k - s + i] + (p - top) * f[i]) % p;
  }
  Poly out(s);
  for (std::size_t i = 0; i < s; ++i) out[i] = std::uint32_t(prod[i]);
  return out;
}

inline Poly polypowmod(Poly base, std::uint64_t k, const Poly& f, std::uint32_t p) {
  const std::size_t s = f.size() - 1;
  Poly result(s, 0);
  result[0] = 1;
  while (k > 0) {
    if (k & 1) result = polymulmod(result, base, f, p);
    base = polymulmod(base, base, f, p);
    k >>= 1;
  }
  return result;
}

// x is a generator of (GF(p)[x]/f)^* of order p^s - 1.
inline bool is_primitive(const Poly& f, std::uint32_t p, std::uint64_t order) {
  const std::size_t s = f.size() - 1;
  if (f[0] == 0) return false;
  // The norm (-1)^s f_0 of a primitive element generates GF(p)^*.
  if (p > 2) {
    const std::uint64_t norm = s % 2 ? p - f[0] : f[0];
    std::uint64_t x = 1;
    for (std::uint32_t k = 1; k + 1 < p; ++k) {
      x = x * norm % p;
      if (x == 1) return false;
    }
  }
  Poly x(s, 0);
  if (s == 1) {
    x[0] = (p - f[0]) % p;  // x = -f0 in GF(p)[x]/(x + f0)
  } else {
    x[1] = 1;
  }
  Poly one(s, 0);
  one[0] = 1;
  if (polypowmod(x, order, f, p) != one) return false;
  for (std::uint64_t r : prime_factors(order))
    if (polypowmod(x, order / r, f, p) == one) return false;
  return true;
}

}  // namespace detail

class Field {
  struct Private {};

 public:
  /// Maximum number of field elements.
  static constexpr std::uint64_t kMaxSize = std::uint64_t(1) << 20;

  // Public for make_shared; use make_field().
  Field(Private, std::uint32_t p, std::uint32_t s, detail::Poly modulus) : p_(p), s_(s), modulus_(std::move(modulus)) {
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint64_t size() const { return size_; }
  /// Order of the multiplicative group.
  std::uint64_t order() const { return size_ - 1; }
  /// Monic modulus, constant term first, length s + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return Elem{}; }
  Elem one() const { return Elem{0}; }
  Elem generator() const { return Elem{order() == 1 ? 0u : 1u}; }

  Elem add(Elem a, Elem b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::uint32_t z = zech_[sub_log(b.log, a.log)];
    if (z == Elem::kZeroLog) return Elem{};
    return Elem{add_log(a.log, z)};
  }
  Elem neg(Elem a) const {
    if (a.is_zero() || p_ == 2) return a;
    return Elem{add_log(a.log, std::uint32_t(order() / 2))};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.is_zero() || b.is_zero()) return Elem{};
    return Elem{add_log(a.log, b.log)};
  }
  Elem inv(Elem a) const {
    if (a.is_zero()) throw Error("inverse of zero");
    return Elem{a.log == 0 ? 0u : std::uint32_t(order() - a.log)};
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// a^k for any integer k (k < 0 requires a != 0).
  Elem pow(Elem a, std::int64_t k) const {
    if (a.is_zero()) {
      if (k == 0) return one();
      if (k < 0) throw Error("negative power of zero");
      return Elem{};
    }
    return Elem{mul_log(a.log, mod_order(k))};
  }

  /// a^(p^j) for any integer j; Frobenius has order s.
  Elem frob_p(Elem a, std::int64_t j) const {
    if (a.is_zero()) return a;
    const std::int64_t s = s_;
    const std::size_t jj = std::size_t(((j % s) + s) % s);
    return Elem{mul_log(a.log, p_pow_mod_order_[jj])};
  }

  /// a^(q^k) with q = p^e; k may be negative.
  Elem qfrob(Elem a, std::uint32_t e, std::int64_t k) const { return frob_p(a, std::int64_t(e) * k); }

  /// Some y with y^n = x, the one with smallest discrete log; nullopt if none.
  std::optional<Elem> nth_root(Elem x, std::uint64_t n) const {
    if (n == 0) throw Error("zeroth root");
    if (x.is_zero()) return Elem{};
    const std::uint64_t ord = order();
    const std::uint64_t g = std::gcd(n % ord == 0 ? ord : n % ord, ord);
    if (x.log % g != 0) return std::nullopt;
    // n*y == x (mod ord)  <=>  (n/g) y == x/g (mod ord/g)
    const std::uint64_t m = ord / g;
    if (m == 1) return Elem{0};
    const std::uint64_t ng = (n / g) % m;
    const std::uint64_t y = (x.log / g) % m * inverse_mod(ng, m) % m;
    return Elem{std::uint32_t(y)};
  }

  /// All y with y^n = x, ascending discrete log.
  std::vector<Elem> nth_roots(Elem x, std::uint64_t n) const {
    std::vector<Elem> out;
    auto first = nth_root(x, n);
    if (!first) return out;
    if (x.is_zero()) return {Elem{}};
    const std::uint64_t ord = order();
    const std::uint64_t g = std::gcd(n % ord == 0 ? ord : n % ord, ord);
    const std::uint64_t step = ord / g;
    for (std::uint64_t y = first->log; y < ord; y += step) out.push_back(Elem{std::uint32_t(y)});
    return out;
  }

  /// x lies in the subfield GF(p^d); requires d | s.
  bool in_subfield(Elem x, std::uint32_t d) const {
    if (d == 0 || s_ % d != 0) throw Error("subfield degree must divide the extension degree");
    return frob_p(x, d) == x;
  }

  /// Elements of GF(p^d) inside this field: zero first, then by discrete log.
  std::vector<Elem> subfield_elements(std::uint32_t d) const {
    if (d == 0 || s_ % d != 0) throw Error("subfield degree must divide the extension degree");
    std::uint64_t sub_order = 1;
    for (std::uint32_t i = 0; i < d; ++i) sub_order *= p_;
    sub_order -= 1;
    const std::uint64_t step = order() / sub_order;
    std::vector<Elem> out{Elem{}};
    for (std::uint64_t k = 0; k < order(); k += step) out.push_back(Elem{std::uint32_t(k)});
    return out;
  }

  /// Primitive element of the subfield GF(p^d).
  Elem subfield_generator(std::uint32_t d) const {
    const auto elems = subfield_elements(d);
    return elems.size() == 2 ? one() : elems[2];
  }

  /// The image of an integer in the prime field.
  Elem from_int(std::int64_t v) const {
    const std::int64_t p = p_;
    return from_code(std::uint64_t(((v % p) + p) % p));
  }

  /// Polynomial-basis code: sum of c_i p^i, c_0 the constant term.
  std::uint64_t code(Elem x) const { return x.is_zero() ? 0 : antilog_[x.log]; }
  Elem from_code(std::uint64_t c) const {
    if (c >= size_) throw Error("field element code out of range");
    return c == 0 ? Elem{} : Elem{log_[c]};
  }

  std::vector<std::uint32_t> coeffs(Elem x) const {
    std::vector<std::uint32_t> out(s_);
    std::uint64_t c = code(x);
    for (std::uint32_t i = 0; i < s_; ++i) {
      out[i] = std::uint32_t(c % p_);
      c /= p_;
    }
    return out;
  }
  Elem from_coeffs(const std::vector<std::uint32_t>& cs) const {
    if (cs.size() != s_) throw Error("coefficient vector has wrong length");
    std::uint64_t c = 0;
    for (std::uint32_t i = s_; i-- > 0;) {
      if (cs[i] >= p_) throw Error("coefficient out of range");
      c = c * p_ + cs[i];
    }
    return from_code(c);
  }

  /// Human-readable form: "0", "1", "g^k".
  std::string to_string(Elem x) const {
    if (x.is_zero()) return "0";
    if (x.log == 0) return "1";
    return "g^" + std::to_string(x.log);
  }

 private:
  static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1, r = std::int64_t(m), nr = std::int64_t(a % m);
    while (nr != 0) {
      const std::int64_t qq = r / nr;
      std::tie(t, nt) = std::make_tuple(nt, t - qq * nt);
      std::tie(r, nr) = std::make_tuple(nr, r - qq * nr);
    }
    if (t < 0) t += std::int64_t(m);
    return std::uint64_t(t);
  }

  std::uint32_t add_log(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t r = std::uint64_t(a) + b;
    return std::uint32_t(r >= order() ? r - order() : r);
  }
  std::uint32_t sub_log(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : std::uint32_t(a + order() - b);
  }
  std::uint32_t mul_log(std::uint32_t a, std::uint64_t k) const { return std::uint32_t(std::uint64_t(a) * k % order()); }
  std::uint64_t mod_order(std::int64_t k) const {
    const std::int64_t ord = std::int64_t(order());
    return std::uint64_t(((k % ord) + ord) % ord);
  }

  std::uint64_t code_add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < s_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  void build_tables() {
    size_ = 1;
    for (std::uint32_t i = 0; i < s_; ++i) size_ *= p_;
    const std::uint64_t ord = order();
    antilog_.assign(ord, 0);
    log_.assign(size_, Elem::kZeroLog);
    // Walk the powers of x in polynomial-basis codes.
    const std::uint64_t top_scale = size_ / p_;
    std::uint64_t cur = 1;
    for (std::uint64_t k = 0; k < ord; ++k) {
      antilog_[k] = std::uint32_t(cur);
      log_[cur] = std::uint32_t(k);
      if (s_ == 1) {
        cur = cur * ((p_ - modulus_[0]) % p_) % p_;
        continue;
      }
      const std::uint64_t top = cur / top_scale;
      std::uint64_t next = (cur % top_scale) * p_;
      if (top != 0) {
        // subtract top * (f_0 + f_1 x + ... + f_{s-1} x^{s-1})
        std::uint64_t red = 0, scale = 1;
        for (std::uint32_t i = 0; i < s_; ++i) {
          red += ((p_ - (top * modulus_[i]) % p_) % p_) * scale;
          scale *= p_;
        }
        next = code_add(next, red);
      }
      cur = next;
    }
    zech_.assign(ord, Elem::kZeroLog);
    for (std::uint64_t k = 0; k < ord; ++k) {
      const std::uint64_t c = code_add(1, antilog_[k]);
      zech_[k] = c == 0 ? Elem::kZeroLog : log_[c];
    }
    p_pow_mod_order_.assign(s_, 1 % ord);
    for (std::uint32_t j = 1; j < s_; ++j) p_pow_mod_order_[j] = p_pow_mod_order_[j - 1] * p_ % ord;
    if (ord == 1) std::fill(p_pow_mod_order_.begin(), p_pow_mod_order_.end(), 0);
  }

  std::uint32_t p_;
  std::uint32_t s_;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t size_ = 0;
  std::vector<std::uint32_t> antilog_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint64_t> p_pow_mod_order_;

  friend FieldPtr make_field(std::uint32_t, std::uint32_t, std::optional<std::vector<std::uint32_t>>);
};

/// GF(p^s) with the lexicographically smallest monic primitive modulus
/// (coefficient tuples compared constant term first), or with the supplied
/// modulus if given.  Contexts are interned: equal arguments give the same
/// pointer.
inline FieldPtr make_field(std::uint32_t p, std::uint32_t s,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  if (!detail::is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  if (s == 0) throw Error("extension degree must be positive");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    size *= p;
    if (size > Field::kMaxSize) throw RangeExceeded("field GF(" + std::to_string(p) + "^" + std::to_string(s) + ") exceeds 2^20 elements");
  }
  const std::uint64_t order = size - 1;

  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>, FieldPtr> registry;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> defaults;
  if (!modulus) {
    std::lock_guard lock(mu);
    if (auto it = defaults.find({p, s}); it != defaults.end()) return it->second;
  }
  const bool is_default = !modulus;

  if (modulus) {
    if (modulus->size() != s + 1 || modulus->back() != 1) throw Error("modulus must be monic of degree s");
    for (auto c : *modulus)
      if (c >= p) throw Error("modulus coefficient out of range");
    if (!detail::is_primitive(*modulus, p, order)) throw Error("modulus is not primitive");
  } else {
    // Lexicographic search: c_0 is the most significant coordinate.
    detail::Poly f(s + 1, 0);
    f[s] = 1;
    std::uint64_t candidates = size;
    bool found = false;
    for (std::uint64_t idx = 0; idx < candidates && !found; ++idx) {
      std::uint64_t t = idx;
      for (std::uint32_t i = s; i-- > 0;) {
        f[i] = std::uint32_t(t % p);
        t /= p;
      }
      if (detail::is_primitive(f, p, order)) found = true;
    }
    if (!found) throw Error("no primitive polynomial found");
    modulus = f;
  }

  std::lock_guard lock(mu);
  auto key = std::make_tuple(p, s, *modulus);
  FieldPtr ctx;
  if (auto it = registry.find(key); it != registry.end()) {
    ctx = it->second;
  } else {
    ctx = std::make_shared<const Field>(Field::Private{}, p, s, *modulus);
    registry.emplace(std::move(key), ctx);
  }
  if (is_default) defaults.emplace(std::pair{p, s}, ctx);
  return ctx;
}

/// Field homomorphism GF(p^a) -> GF(p^b) for a | b, sending the generator of
/// the source to the root of its modulus with the smallest discrete log.
class Embedding {
 public:
  Embedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
    if (from_->p() != to_->p() || to_->s() % from_->s() != 0)
      throw Error("no embedding between these fields");
    const auto& f = from_->modulus();
    for (std::uint64_t k = 0; k < to_->order(); ++k) {
      const Elem y{std::uint32_t(k)};
      Elem acc = to_->zero();
      for (std::size_t i = f.size(); i-- > 0;) acc = to_->add(to_->mul(acc, y), to_->from_int(f[i]));
      if (acc.is_zero()) {
        root_ = y;
        return;
      }
    }
    throw Error("modulus has no root in the target field");
  }

  Elem operator()(Elem x) const {
    if (x.is_zero()) return x;
    return to_->pow(root_, x.log);
  }

  const FieldPtr& source() const { return from_; }
  const FieldPtr& target() const { return to_; }

 private:
  FieldPtr from_;
  FieldPtr to_;
  Elem root_;
};

}  // namespace qbic
