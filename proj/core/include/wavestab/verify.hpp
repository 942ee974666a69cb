#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wavestab {

struct VerifySuiteResult {
  std::string name;
  int cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Seeded identity sweep: the multiplier relation, the product identity
/// modulo its mean, the boundary pairing lemma, the conjugation and
/// derivative relations of the transform, the Jacobian against finite
/// differences, and the equivalence of the two second-variation forms.
/// Deterministic for a fixed seed and truncation.
std::vector<VerifySuiteResult> run_verification(std::uint64_t seed, int n_trunc);

/// Fixed-format text report, one line per suite plus a summary; contains no
/// timing or environment data, so identical runs are byte-identical.
std::string verification_report(const std::vector<VerifySuiteResult>& results,
                                std::uint64_t seed, int n_trunc);

bool all_passed(const std::vector<VerifySuiteResult>& results);

}  // namespace wavestab
