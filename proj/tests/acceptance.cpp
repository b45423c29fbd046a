// One line per acceptance criterion. Exit status is nonzero if any line
// reports FAIL.

#include <cstdio>
#include <exception>
#include <string>

#include "rsol_cli/suites.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  const char* suite;
  double limit_seconds;
};

// Time limits are pinned; counts and equalities are exact inside the suites.
constexpr Criterion kCriteria[] = {
    {1, "axiom soundness", "soundness", 120},
    {2, "rule soundness", "rules", 120},
    {3, "full second-order collapse", "collapse", 300},
    {4, "weak second-order materialization", "weakso", 30},
    {5, "dsl orbit convergence", "dsl-orbits", 600},
    {6, "lemma identities", "lemma-reg", 120},
    {7, "Rasiowa-Sikorski", "rs", 60},
    {8, "kernel robustness", "kernel", 120},
};

constexpr std::uint64_t kSeed = 1;

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : kCriteria) {
    std::string verdict;
    std::string detail;
    double seconds = 0;
    bool ok = false;
    try {
      rsol::cli::SuiteOptions opt;
      opt.seed = kSeed;
      auto r = rsol::cli::run_suite(c.suite, opt);
      seconds = r.seconds;
      ok = r.ok() && r.seconds <= c.limit_seconds;
      detail = r.summary;
      if (!r.ok()) {
        for (const auto& rec : r.records) {
          if (!rec.pass) {
            detail += "; " + rec.check + ": " + rec.detail;
            break;
          }
        }
      }
      if (r.seconds > c.limit_seconds) detail += "; over the time limit";
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("criterion %d (%s): %s  %s  [%.2f s <= %.0f s]\n", c.number, c.title, ok ? "PASS" : "FAIL",
                detail.c_str(), seconds, c.limit_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
