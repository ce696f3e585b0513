#include "causal_sep/ppt.hpp"

#include <algorithm>

namespace causal_sep {

std::string_view to_string(PptOutcome v) noexcept {
  return v == PptOutcome::NptEntangled ? "npt_entangled" : "ppt_separable_consistent";
}

PptVerdict ppt_check(const DensityMatrix& rho, const PartySubset& subset, double tol) {
  const auto spectrum = hermitian_eigenvalues(partial_transpose(rho, subset));
  const double lo = spectrum.empty() ? 0.0 : spectrum.front();
  const bool small = rho.parties() == 2 && rho.dim() == 2;
  return PptVerdict{.min_eigenvalue = lo,
                    .subset = subset,
                    .verdict = lo < -tol ? PptOutcome::NptEntangled : PptOutcome::SeparableConsistent,
                    .exact = small};
}

std::vector<PptVerdict> ppt_check_all(const DensityMatrix& rho, double tol) {
  std::vector<PptVerdict> out;
  for (const auto& s : canonical_subsets(rho.parties())) out.push_back(ppt_check(rho, s, tol));
  return out;
}

PptOutcome overall(const std::vector<PptVerdict>& verdicts) {
  const bool any = std::any_of(verdicts.begin(), verdicts.end(), [](const PptVerdict& v) {
    return v.verdict == PptOutcome::NptEntangled;
  });
  return any ? PptOutcome::NptEntangled : PptOutcome::SeparableConsistent;
}

Determinants2x2 ph_determinants_2x2(const DensityMatrix& rho) {
  if (rho.dim() != 2 || rho.parties() != 2) {
    throw DomainError("determinant form needs D=2, N=2");
  }
  const auto t = partial_transpose(rho, PartySubset(2, {1}));
  // Index 0 = |00>, 1 = |01>, 2 = |10>, 3 = |11>.
  const auto w1 = t(0, 0) * t(3, 3) - t(0, 3) * t(3, 0);
  const auto w2 = t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1);
  return {w1.real(), w2.real()};
}

}  // namespace causal_sep
