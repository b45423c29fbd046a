#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rsol::cli {

struct Record {
  std::string check;
  bool pass = true;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Record> records;
  std::string summary;
  double seconds = 0;  // wall time; kept out of machine-readable output

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return !records.empty() && failed() == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
};

// soundness, rules, collapse, weakso, dsl-orbits, lemma-reg, rs, kernel.
const std::vector<std::string>& suite_names();

// Throws PreconditionError for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

// Default inspection budget, overridden by RSOL_BUDGET when set.
std::uint64_t budget_from_env(std::uint64_t fallback);

}  // namespace rsol::cli
