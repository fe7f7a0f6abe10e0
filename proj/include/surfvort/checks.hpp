// Named invariant suites behind `surfvort check`.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace surfvort {

struct CheckResult {
  std::string suite, name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

// grid | operators | hamiltonian | killing-diffusion | all; throws std::invalid_argument otherwise.
std::vector<CheckResult> run_checks(const std::string& suite);
const std::vector<std::string>& check_suites();

void print_check_table(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace surfvort
