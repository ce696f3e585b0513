#include "causal_sep/criterion.hpp"

#include <algorithm>

namespace causal_sep {

std::string_view to_string(CellVerdict v) noexcept {
  return v == CellVerdict::MEntangled ? "m_entangled" : "m_separable";
}

std::string_view to_string(OverallVerdict v) noexcept {
  return v == OverallVerdict::Entangled ? "entangled" : "separable_by_criterion";
}

double ignorance_probability(const DensityMatrix& rho, const Configuration& j, CouplingMode mode) {
  require_same_shape(rho, j);
  double partners = 0.0;
  for (const auto& l : orthogonal_partners(j, mode)) partners += element(rho, l, l).real();
  return element(rho, j, j).real() * partners;
}

double transition_probability(const DensityMatrix& rho, const Configuration& j,
                              const PartySubset& subset, CouplingMode mode) {
  require_same_shape(rho, j);
  const auto partners = mode == CouplingMode::Free ? cyclic_partners(j)
                                                   : completely_orthogonal_partners(j);
  double sum = 0.0;
  for (const auto& l : partners) sum += std::norm(pt_entry(rho, j, l, subset));
  return sum;
}

ConfigScore causal_w(const DensityMatrix& rho, const Configuration& j, const PartySubset& subset,
                     CouplingMode mode, double tol) {
  ConfigScore s{.config = j, .subset = subset};
  s.p_ignorance = ignorance_probability(rho, j, mode);
  s.p_transition = transition_probability(rho, j, subset, mode);
  s.w = s.p_ignorance - s.p_transition;
  if (s.w < -tol) {
    s.verdict = CellVerdict::MEntangled;
    s.p_anti_ignorance = -s.w;
  } else {
    s.verdict = CellVerdict::MSeparable;
    s.p_reversed = std::abs(s.w);
  }
  return s;
}

CriterionReport classify(const DensityMatrix& rho, CouplingMode mode, double tol) {
  CriterionReport report{.mode = mode};
  const auto subsets = canonical_subsets(rho.parties());
  for (const auto& j : partition_distinct(rho.dim(), rho.parties()).distinct) {
    for (const auto& s : subsets) report.scores.push_back(causal_w(rho, j, s, mode, tol));
  }
  const bool any = std::any_of(report.scores.begin(), report.scores.end(), [](const ConfigScore& s) {
    return s.verdict == CellVerdict::MEntangled;
  });
  report.overall = any ? OverallVerdict::Entangled : OverallVerdict::SeparableByCriterion;
  return report;
}

}  // namespace causal_sep
