#pragma once

// Named forms used by the command-line tool and the verification suite:
//
//   fermat                        identity Gram, dim n+1
//   hermitian-curve               x0^q x1 + x0 x1^q - x2^(q+1)
//   hermitian-surface             x0^q x1 + x0 x1^q + x2^q x3 + x2 x3^q
//   ddl-curve                     x0^q x1 - x0 x1^q - x2^(q+1)
//   standard:<sig>                standard form of a signature, e.g. standard:N2+1^3
//   family:point-degeneration:t=  [[0,1],[t,0]]
//   family:n4-degeneration:t=     [[0,1,t,0],[0,0,1,t],[0,0,0,1],[0,0,0,0]]
//
// Scalars t are written as an integer (image of Z), "g^k" (a power of the
// field generator) or "[c0,c1,...]" (coefficients, constant term first).

#include <string>

#include "json.hpp"

#include "qbic/error.hpp"
#include "qbic/forms.hpp"
#include "qbic/gf.hpp"
#include "qbic/io.hpp"

namespace qbic {

struct BuiltinParams {
  std::uint64_t q = 2;
  std::size_t n = 3;           // projective dimension for `fermat`
  std::uint32_t field_deg = 0;  // degree over GF(p) of the ambient field; 0: 2e
};

inline Elem parse_scalar(const Field& F, const std::string& text) {
  auto number = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ParseError("bad scalar '" + text + "'");
    }
    if (used != s.size()) throw ParseError("bad scalar '" + text + "'");
    return v;
  };
  if (text.rfind("g^", 0) == 0) return F.pow(F.generator(), number(text.substr(2)));
  if (!text.empty() && text.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
      throw ParseError("bad scalar '" + text + "'");
    }
    return elem_from_json(F, j);
  }
  return F.from_int(number(text));
}

inline QBicForm builtin_form(const std::string& name, const BuiltinParams& params) {
  const auto [p, e] = parse_prime_power(params.q);
  const std::uint32_t s = params.field_deg ? params.field_deg : 2 * e;
  if (s % (2 * e) != 0) throw ParseError("field degree must be a multiple of 2e");
  const FieldPtr F = make_field(p, s);
  const Elem one = F->one(), minus_one = F->neg(F->one());

  auto from_entries = [&](std::size_t dim, std::initializer_list<std::tuple<std::size_t, std::size_t, Elem>> entries) {
    Matrix m(F, dim, dim);
    for (const auto& [i, j, x] : entries) m(i, j) = x;
    return QBicForm(std::move(m), e);
  };

  if (name == "fermat") {
    if (params.n < 1) throw ParseError("fermat needs n >= 1");
    return QBicForm(Matrix::identity(F, params.n + 1), e);
  }
  if (name == "hermitian-curve") return from_entries(3, {{0, 1, one}, {1, 0, one}, {2, 2, minus_one}});
  if (name == "ddl-curve") return from_entries(3, {{0, 1, one}, {1, 0, minus_one}, {2, 2, minus_one}});
  if (name == "hermitian-surface") return from_entries(4, {{0, 1, one}, {1, 0, one}, {2, 3, one}, {3, 2, one}});

  if (name.rfind("standard:", 0) == 0) return standard_gram(TypeSignature::parse(name.substr(9)), F, e);

  if (name.rfind("family:", 0) == 0) {
    const std::string rest = name.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("family needs a parameter: family:<name>:t=<scalar>");
    const std::string fam = rest.substr(0, colon), arg = rest.substr(colon + 1);
    if (arg.rfind("t=", 0) != 0) throw ParseError("family parameter must be t=<scalar>");
    const Elem t = parse_scalar(*F, arg.substr(2));
    if (fam == "point-degeneration") return from_entries(2, {{0, 1, one}, {1, 0, t}});
    if (fam == "n4-degeneration")
      return from_entries(4, {{0, 1, one}, {0, 2, t}, {1, 2, one}, {1, 3, t}, {2, 3, one}});
    throw ParseError("unknown family '" + fam + "'");
  }
  throw ParseError("unknown builtin '" + name + "'");
}

}  // namespace qbic
