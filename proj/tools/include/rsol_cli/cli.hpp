#pragma once

#include <ostream>

namespace rsol::cli {

// Process exit statuses.
enum Status : int {
  status_ok = 0,
  status_check_failed = 1,
  status_parse_error = 2,
  status_precondition = 3,
  status_feasibility = 4,
};

// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsol::cli
