#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hcox::cli {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckLine> checks;
  double seconds = 0.0;
  bool pass() const;
};

struct SuiteOptions {
  std::string graph = "n=2;m01=4;m12=4;m02=4";
  std::vector<double> t_list;  // empty picks the suite's default parameters
  int depth = 12;
  int body_depth = 12;
  int samples = 0;
  std::uint64_t seed = 1;
};

SuiteResult suite_propmain(const SuiteOptions& o);
SuiteResult suite_metriccomp(const SuiteOptions& o);
SuiteResult suite_lemmas(const SuiteOptions& o);

// Acceptance criteria 1..12 with their pinned tolerances.
constexpr int kCriteria = 12;
SuiteResult run_criterion(int id);
std::string criterion_title(int id);

}  // namespace hcox::cli
