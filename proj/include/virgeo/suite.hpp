#ifndef VIRGEO_SUITE_HPP
#define VIRGEO_SUITE_HPP

// Self-checks run by `virgeo suite`: algebraic identities, curvature
// cross-checks, and conservation along Jacobi fields.

#include <string>
#include <vector>

#include "virgeo/io.hpp"

namespace virgeo {

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  io::Json to_json() const;
};

/// suite is one of identities, curvature, symplectic, all. Throws
/// std::invalid_argument for anything else.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed = 0);

std::vector<std::string> suite_names();

}  // namespace virgeo

#endif  // VIRGEO_SUITE_HPP
