#pragma once

// JSON serialization of fields, scalars and q-bic forms.
//
//   {"field": {"p": 2, "s": 2, "modulus": [1, 1, 1]},
//    "e": 1, "dim": 2,
//    "gram": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}
//
// Scalars are length-s coefficient vectors over GF(p), constant term first;
// the modulus is listed the same way including its leading 1.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "qbic/error.hpp"
#include "qbic/forms.hpp"
#include "qbic/gf.hpp"

namespace qbic {

/// q = p^e for a prime p, or ParseError.
inline std::pair<std::uint32_t, std::uint32_t> parse_prime_power(std::uint64_t q) {
  if (q < 2) throw ParseError("q must be a prime power >= 2");
  for (std::uint32_t p = 2; std::uint64_t(p) * p <= q || p == q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw ParseError(std::to_string(q) + " is not a prime power");
    return {p, e};
  }
  return {std::uint32_t(q), 1};  // q itself is prime
}

inline nlohmann::json field_to_json(const Field& F) {
  return {{"p", F.p()}, {"s", F.s()}, {"modulus", F.modulus()}};
}

inline FieldPtr field_from_json(const nlohmann::json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto s = j.at("s").get<std::uint32_t>();
    if (j.contains("modulus") && !j.at("modulus").is_null())
      return make_field(p, s, j.at("modulus").get<std::vector<std::uint32_t>>());
    return make_field(p, s);
  } catch (const RangeExceeded&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field descriptor: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string("bad field descriptor: ") + e.what());
  }
}

inline nlohmann::json elem_to_json(const Field& F, Elem x) { return F.coeffs(x); }

inline Elem elem_from_json(const Field& F, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != F.s()) throw ParseError("scalar must be a coefficient vector of length " + std::to_string(F.s()));
  std::vector<std::uint32_t> cs;
  for (const auto& c : j) {
    if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<std::int64_t>() >= 0))
      throw ParseError("coefficients must be nonnegative integers");
    const auto v = c.get<std::uint64_t>();
    if (v >= F.p()) throw ParseError("coefficient " + std::to_string(v) + " out of range for GF(" + std::to_string(F.p()) + ")");
    cs.push_back(std::uint32_t(v));
  }
  return F.from_coeffs(cs);
}

inline nlohmann::json form_to_json(const QBicForm& f) {
  const Field& F = *f.field();
  nlohmann::json gram = nlohmann::json::array();
  for (std::size_t i = 0; i < f.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < f.dim(); ++j) row.push_back(elem_to_json(F, f.gram()(i, j)));
    gram.push_back(std::move(row));
  }
  return {{"field", field_to_json(F)}, {"e", f.e()}, {"dim", f.dim()}, {"gram", gram}};
}

inline QBicForm form_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("form must be a JSON object");
  for (const char* key : {"field", "e", "dim", "gram"})
    if (!j.contains(key)) throw ParseError(std::string("form is missing '") + key + "'");
  const FieldPtr field = field_from_json(j.at("field"));
  std::uint32_t e = 0;
  std::size_t dim = 0;
  try {
    e = j.at("e").get<std::uint32_t>();
    dim = j.at("dim").get<std::size_t>();
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("bad 'e' or 'dim': ") + ex.what());
  }
  const auto& g = j.at("gram");
  if (!g.is_array() || g.size() != dim) throw ParseError("gram must have 'dim' rows");
  Matrix m(field, dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!g[r].is_array() || g[r].size() != dim) throw ParseError("gram row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = elem_from_json(*field, g[r][c]);
  }
  try {
    return QBicForm(std::move(m), e);
  } catch (const Error& ex) {
    throw ParseError(std::string("invalid form: ") + ex.what());
  }
}

inline QBicForm load_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return form_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline void save_form(const QBicForm& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << form_to_json(f).dump(2) << '\n';
}

}  // namespace qbic
