#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsobolev {

// Outcome of one property checked over many seeded random instances.
struct CheckResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest error or excess seen, in the check's own units
  double tolerance = 0.0;
  std::optional<std::uint64_t> failing_seed;

  bool passed() const noexcept { return violations == 0; }
  // Records one evaluation; `excess` > 0 counts as a violation.
  void record(double error, double excess, std::uint64_t seed);
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const noexcept;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t metric_triples = 500;       // per exponent
  std::size_t tree_instances = 50;
  std::size_t tree_max_nodes = 100;
  std::size_t tree_max_support = 20;
  std::size_t definiteness_sets = 20;
  std::size_t definiteness_measures = 30;
  std::size_t beta_triples = 200;
  std::size_t continuum_graphs = 20;
  std::size_t continuum_resolution = 100000;
  std::size_t sliced_roots = 4;
};

// splitmix64 step; derives independent per-instance seeds from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

SuiteReport verify_metric(const VerifyOptions& opt);
SuiteReport verify_bounds(const VerifyOptions& opt);
SuiteReport verify_tree(const VerifyOptions& opt);
SuiteReport verify_definiteness(const VerifyOptions& opt);
SuiteReport verify_oracle(const VerifyOptions& opt);
SuiteReport verify_sliced(const VerifyOptions& opt);

// selector: metric | bounds | tree | definiteness | oracle | sliced | all
std::vector<SuiteReport> run_suites(const std::string& selector, const VerifyOptions& opt);

}  // namespace gsobolev
