#pragma once

#include <ostream>

namespace mcsim {

// Runs the twelve acceptance checks, printing one PASS/FAIL line per
// criterion (with indented detail lines) to out. Returns the number of
// failing criteria; 0 means the whole gate is green.
int run_selftest(std::ostream& out);

}  // namespace mcsim
