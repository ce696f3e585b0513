#pragma once

#include <string_view>
#include <vector>

#include "causal_sep/density_matrix.hpp"

namespace causal_sep {

inline constexpr double kPptTolerance = 1e-10;

enum class PptOutcome { SeparableConsistent, NptEntangled };

std::string_view to_string(PptOutcome v) noexcept;

struct PptVerdict {
  double min_eigenvalue = 0.0;
  PartySubset subset;
  PptOutcome verdict = PptOutcome::SeparableConsistent;
  /// PPT is sufficient as well as necessary only for 2x2 and 2x3 systems.
  bool exact = false;
};

/// Sign test on the smallest eigenvalue of the partial transpose over `subset`.
PptVerdict ppt_check(const DensityMatrix& rho, const PartySubset& subset,
                     double tol = kPptTolerance);

/// ppt_check over every canonical subset; the overall verdict is NPT if any is.
std::vector<PptVerdict> ppt_check_all(const DensityMatrix& rho, double tol = kPptTolerance);
PptOutcome overall(const std::vector<PptVerdict>& verdicts);

struct Determinants2x2 {
  double w1 = 0.0;
  double w2 = 0.0;
};

/// 2x2 minors of the party-1 partial transpose on the {00,11} and {01,10} blocks.
Determinants2x2 ph_determinants_2x2(const DensityMatrix& rho);

}  // namespace causal_sep
