#ifndef CLAB_VALIDATE_HPP
#define CLAB_VALIDATE_HPP

#include <map>
#include <ostream>
#include <string>

namespace clab {

struct ValidationSummary {
  int passed = 0;
  int failed = 0;
  std::map<std::string, std::pair<int, int>> per_module;  // module -> (pass, fail)
};

// Built-in self checks: Clifford relations, flat-torus closed forms, the
// analytic 3x3 eigensolver case, two-path Heisenberg agreement, averaging
// and bound-formula values. Prints one line per check.
ValidationSummary run_validation(std::ostream& out);

}  // namespace clab

#endif
