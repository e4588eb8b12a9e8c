#pragma once

/// \file
/// Self-checks: the numbered acceptance criteria and the per-module invariants.
/// Each check reports what it measured next to the target it was held to.

#include <functional>
#include <string>
#include <vector>

namespace cknsym {

struct CheckResult {
  std::string id;  ///< "C1".."C9" for acceptance criteria, "I*" for invariants
  std::string name;
  bool passed = false;
  std::string measured;
  std::string target;
};

struct VerifyOptions {
  /// Relative bracket tolerance handed to the root solvers.
  double tol_root = 1e-12;
  /// Skip the variational-oracle grid and quadrature refinement checks.
  bool quick = false;
  /// Digamma implementation under test; replaceable for fault injection.
  std::function<double(double)> digamma;
  unsigned threads = 1;
};

CheckResult check_bound_gap_regime(const VerifyOptions& opts);         // C1
CheckResult check_fs_ordering(const VerifyOptions& opts);      // C2
CheckResult check_oracle_equivalence(const VerifyOptions& opts);  // C3
CheckResult check_n_consistency(const VerifyOptions& opts);       // C4
CheckResult check_limits(const VerifyOptions& opts);              // C5
CheckResult check_root_certificates(const VerifyOptions& opts);   // C6
CheckResult check_digamma(const VerifyOptions& opts);             // C7
CheckResult check_wlh_chain(const VerifyOptions& opts);           // C8
CheckResult check_determinism(const VerifyOptions& opts);         // C9

/// Criteria C1..C9 in order.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts);

/// Module invariants not already covered by a criterion.
std::vector<CheckResult> run_invariants(const VerifyOptions& opts);

/// One line per check: "PASS  C1  name  measured=...  target=...".
std::string format_check(const CheckResult& r);

}  // namespace cknsym
