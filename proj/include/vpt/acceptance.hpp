#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace vpt {

struct CoefficientFault {
  int index = 2;
  mpq_class value;
};

struct AcceptanceConfig {
  /// Relative agreement required between closed-form and quadrature moments.
  double quad_match_tol = 1e-10;
  /// Fixed-point tolerance for the cut-off iteration.
  double cutoff_tol = 1e-10;
  /// Replace one series coefficient before anything else is built.
  std::optional<CoefficientFault> fault;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double measured = 0.0;
  double threshold = 0.0;
  /// Set when the failure is attributable to a tolerance tighter than the
  /// arithmetic can deliver rather than to the method.
  bool tolerance_bound = false;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config = {});

/// "PASS  3  W1 accuracy  ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace vpt
