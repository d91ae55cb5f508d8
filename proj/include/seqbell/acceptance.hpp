#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace seqbell {

enum class Relation { equal, at_most, less_than, at_least };

struct AcceptanceCheck {
  std::string label;
  double measured = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  Relation relation = Relation::equal;
  bool pass = false;
};

struct AcceptanceCriterion {
  int id = 0;
  std::string name;
  std::vector<AcceptanceCheck> checks;
  bool pass() const;
};

struct AcceptanceOptions {
  /// Replaces every stated tolerance when set.
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Runs the eleven acceptance criteria in order.
std::vector<AcceptanceCriterion> run_acceptance(const AcceptanceOptions& opts = {});

const char* to_string(Relation r);

}  // namespace seqbell
