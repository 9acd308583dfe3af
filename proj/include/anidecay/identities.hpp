#pragma once

#include <string>
#include <vector>

namespace anidecay {

/// One check of the identity/property suite.
struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct IdentitySuiteOptions {
  int n_h = 16;
  int n_v = 16;
  std::uint64_t seed = 7;
  /// Test fixture: perturbs the sampled cutoff sum so the partition-of-unity
  /// check must fail (negative control).
  bool corrupt_filter_bank = false;
};

struct IdentitySuiteReport {
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

/// Runs the full identity battery: transforms (round trip, Plancherel,
/// reality), Leray projector, dyadic partition/reconstruction, Bony
/// reconstruction, Bernstein bands, commutator-with-constant, nonlinear
/// skew-symmetry, kernel identity F1+F2, pressure consistency, and the
/// energy identity on a short run.
IdentitySuiteReport verify_identities(const IdentitySuiteOptions& opts = {});

std::string identity_report_text(const IdentitySuiteReport& rep);

} // namespace anidecay
