// Acceptance run: every in-range check of each criterion at q in {2, 3},
// one PASS/FAIL line per criterion.  Exit status is nonzero if any fails.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qbic/suite.hpp"

int main() {
  using namespace qbic;
  SuiteConfig cfg;
  cfg.qs = {2, 3};
  cfg.max_n = 5;
  cfg.seed = 1;

  std::vector<CheckSpec> core;
  for (auto& c : build_checks(cfg))
    if (c.core) core.push_back(std::move(c));
  const auto results = run_checks(core, cfg.seed);

  std::map<int, std::vector<const CheckResult*>> by_criterion;
  for (const auto& r : results) by_criterion[r.criterion].push_back(&r);

  bool all_ok = true;
  for (int k = 1; k <= 14; ++k) {
    const auto it = by_criterion.find(k);
    bool ok = it != by_criterion.end();
    std::int64_t ms = 0;
    std::string failures;
    if (ok)
      for (const CheckResult* r : it->second) {
        ms += r->runtime_ms;
        if (r->status != CheckStatus::Pass) {
          ok = false;
          failures += " [" + r->name + ": expected " + r->expected + ", computed " + r->computed + "]";
        }
      }
    all_ok = all_ok && ok;
    const std::size_t n = it == by_criterion.end() ? 0 : it->second.size();
    std::cout << "Criterion " << k << ": " << (ok ? "PASS" : "FAIL") << " (" << n << " checks, " << ms << " ms)"
              << (n == 0 ? " no checks" : "") << failures << '\n';
  }
  return all_ok ? 0 : 1;
}
