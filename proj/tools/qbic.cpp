// qbic command-line tool.
//
// Exit codes: 0 ok, 1 parse error, 2 ambiguous classification, 3 range
// exceeded, 4 any other failure (including failed suite checks).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qbic/qbic.hpp"

namespace {

using namespace qbic;
using nlohmann::json;

enum Exit { kOk = 0, kParse = 1, kAmbiguous = 2, kRange = 3, kOther = 4 };

struct FormSource {
  std::string builtin;
  std::string gram;
  std::uint64_t q = 2;
  std::size_t n = 3;
  std::uint32_t s = 0;

  void attach(CLI::App* cmd) {
    auto* b = cmd->add_option("--builtin", builtin, "named form: fermat, hermitian-curve, hermitian-surface, ddl-curve, "
                                                    "standard:<sig>, family:<name>:t=<scalar>");
    auto* g = cmd->add_option("--gram", gram, "Gram matrix JSON file");
    b->excludes(g);
    cmd->add_option("--q", q, "q = p^e for builtins")->capture_default_str();
    cmd->add_option("--n", n, "projective dimension for fermat")->capture_default_str();
    cmd->add_option("--s", s, "degree of the ambient field over GF(p); default 2e");
  }

  QBicForm load() const {
    if (!gram.empty()) return load_form(gram);
    if (builtin.empty()) throw ParseError("one of --builtin or --gram is required");
    return builtin_form(builtin, {q, n, s});
  }
};

json form_summary(const QBicForm& f) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f.e(); ++i) q *= f.field()->p();
  return {{"q", q}, {"dim", f.dim()}, {"field", field_to_json(*f.field())}};
}

int cmd_classify(const FormSource& src, bool as_json) {
  const QBicForm f = src.load();
  const std::string sig = classify(f).to_string();
  if (as_json) {
    json out = form_summary(f);
    out["signature"] = sig;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << sig << '\n';
  }
  return kOk;
}

// Histogram: number of points of X lying on exactly k of the given subspaces.
json incidence_histogram(const QBicForm& f, const std::vector<ProjSubspace>& subs, std::uint32_t m) {
  std::map<ProjPoint, std::size_t> through;
  enumerate_hypersurface(f, m, [&](const QBicForm&, const ProjPoint& p) {
    std::size_t c = 0;
    for (const auto& s : subs) c += s.contains(p);
    through[p] = c;
  });
  std::map<std::size_t, std::size_t> hist;
  for (const auto& [p, c] : through) ++hist[c];
  json h = json::object();
  for (const auto& [k, c] : hist) h[std::to_string(k)] = c;
  return h;
}

int cmd_count(const std::string& kind, const FormSource& src, std::uint32_t ext, bool report, bool as_json) {
  const QBicForm f = src.load();
  if (ext < 1) throw ParseError("--ext must be >= 1");
  json out = form_summary(f);
  out["kind"] = kind;
  out["ext"] = ext;
  std::uint64_t total = 0;
  if (kind == "points") {
    if (report) {
      std::uint64_t singular = 0, cone = 0;
      enumerate_hypersurface(f, ext, [&](const QBicForm& g, const ProjPoint& p) {
        ++total;
        singular += is_singular_point(g, p);
        cone += is_cone_point(g, p);
      });
      out["singular_points"] = singular;
      out["cone_points"] = cone;
    } else {
      total = count_points(f, ext);
    }
  } else if (kind == "lines" || kind == "planes") {
    const std::size_t r = kind == "lines" ? 1 : 2;
    if (report && r == 1) {
      out["report"] = line_count_report(f, ext);
      total = out["report"]["total"].get<std::uint64_t>();
    } else if (report) {
      const auto subs = isotropic_subspaces(f, r, ext);
      total = subs.size();
      out["points_on_k_planes"] = incidence_histogram(f, subs, ext);
    } else {
      total = count_isotropic(f, r, ext);
    }
  } else {
    throw ParseError("count kind must be points, lines or planes");
  }
  out["count"] = total;
  if (as_json || report) std::cout << out.dump(2) << '\n';
  else std::cout << total << '\n';
  return kOk;
}

int cmd_verify_suite(const std::vector<std::uint64_t>& qs, std::size_t max_n, std::uint64_t seed, const std::string& out_path,
                     bool quiet) {
  SuiteConfig cfg;
  cfg.qs = qs;
  cfg.max_n = max_n;
  cfg.seed = seed;
  for (auto q : qs) parse_prime_power(q);
  const auto results = run_checks(build_checks(cfg), seed, 0, [&](const CheckResult& r) {
    if (!quiet) std::cerr << to_string(r.status) << "  " << r.name << "  (" << r.runtime_ms << " ms)\n";
  });
  const json report = suite_report(cfg, results);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << report.dump(2) << '\n';
  }
  for (const auto& r : results)
    std::cout << to_string(r.status) << "  " << r.name << "  expected: " << r.expected << "  computed: " << r.computed << '\n';
  const auto& s = report["summary"];
  std::cout << "summary: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["skipped-range"] << " skipped-range\n"
            << "determinism_hash: " << report["determinism_hash"].get<std::string>() << '\n';
  return all_passed(results) ? kOk : kOther;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with q-bic forms over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  FormSource classify_src;
  bool classify_json = false;
  auto* classify_cmd = app.add_subcommand("classify", "print the geometric type of a form");
  classify_src.attach(classify_cmd);
  classify_cmd->add_flag("--json", classify_json, "print JSON");

  FormSource count_src;
  std::string count_kind;
  std::uint32_t ext = 1;
  bool report = false, count_json = false;
  auto* count_cmd = app.add_subcommand("count", "count GF(q^{2m})-points, lines or planes of X");
  count_cmd->add_option("kind", count_kind, "points | lines | planes")->required()->check(CLI::IsMember({"points", "lines", "planes"}));
  count_src.attach(count_cmd);
  count_cmd->add_option("--ext", ext, "count over GF(q^{2m})")->capture_default_str();
  count_cmd->add_flag("--report", report, "add incidence data (JSON)");
  count_cmd->add_flag("--json", count_json, "print JSON");

  unsigned max_q = 10, formulas_max_n = 12;
  auto* formulas_cmd = app.add_subcommand("formulas", "closed-form values and consistency verdicts as JSON");
  formulas_cmd->add_option("--max-q", max_q)->capture_default_str();
  formulas_cmd->add_option("--max-n", formulas_max_n)->capture_default_str();

  std::vector<std::uint64_t> suite_qs{2};
  std::size_t max_n = 4;
  std::uint64_t seed = 1;
  std::string json_out;
  bool quiet = false;
  auto* suite_cmd = app.add_subcommand("verify-suite", "run the verification checks");
  suite_cmd->add_option("--q", suite_qs, "values of q (repeat or comma-separate)")->delimiter(',')->capture_default_str();
  suite_cmd->add_option("--max-n", max_n, "largest projective dimension")->capture_default_str();
  suite_cmd->add_option("--seed", seed)->capture_default_str();
  suite_cmd->add_option("--json", json_out, "write the JSON report here");
  suite_cmd->add_flag("--quiet", quiet, "no progress lines on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*classify_cmd) return cmd_classify(classify_src, classify_json);
    if (*count_cmd) return cmd_count(count_kind, count_src, ext, report, count_json);
    if (*formulas_cmd) {
      std::cout << formulas_report(max_q, formulas_max_n).dump(2) << '\n';
      return kOk;
    }
    if (*suite_cmd) return cmd_verify_suite(suite_qs, max_n, seed, json_out, quiet);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const AmbiguousMatch& e) {
    std::cerr << "ambiguous: " << e.what() << '\n';
    return kAmbiguous;
  } catch (const RangeExceeded& e) {
    std::cerr << "range exceeded: " << e.what() << '\n';
    return kRange;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
