#pragma once

#include <string>

namespace rotoflex {

struct SelftestResult {
  int total = 0;
  int failed = 0;
  std::string text; // one line per check plus a summary line
  bool ok() const { return failed == 0; }
};

// Built-in golden checks: two worked reference cases pinned to frozen
// constants, the published comparison table, the six canonical
// single-element loads, single-frequency degeneration, and geometric vs
// classical agreement on randomized problems. Pure computation, no I/O.
SelftestResult run_selftest();

} // namespace rotoflex
