#pragma once

// The fixed acceptance corpus. `corpus run` and the acceptance binary both
// evaluate it through run_corpus.

#include <cstddef>
#include <string>
#include <vector>

#include "deskcat/presheaf.hpp"
#include "deskcat/soa.hpp"

namespace deskcat::corpus {

struct Options {
  BoundednessConfig config;
  std::size_t window = 6;  // ordinal bound for the Δ_1s census and symmetrization
};

struct Instance {
  std::string name;
  PresheafMap f;
  std::vector<PresheafMap> generators;
};

/// Factorization problems over sets (≤ 8 elements) and ordinal windows ≤ 5.
std::vector<Instance> factorization_instances();

struct CriterionResult {
  int id = 0;
  std::string title;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool passed = false;
  std::string detail;
};

struct Artifact {
  std::string name;  // file name inside the output directory
  std::string content;
};

struct Report {
  std::vector<CriterionResult> criteria;
  std::vector<Artifact> artifacts;  // summary.jsonl comes first
  std::vector<double> seconds;      // per criterion, kept out of the artifacts
};

/// Criteria 1 to 6. Determinism (criterion 7) needs two runs and is checked by
/// the caller.
Report run_corpus(const Options& options);

/// Plain-text table of the criteria.
std::string summary_table(const std::vector<CriterionResult>& criteria);

}  // namespace deskcat::corpus
