#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "causal_sep/configuration.hpp"
#include "causal_sep/density_matrix.hpp"

namespace causal_sep {

inline constexpr double kVerdictTolerance = 1e-10;

enum class CellVerdict { MSeparable, MEntangled };
enum class OverallVerdict { SeparableByCriterion, Entangled };

std::string_view to_string(CellVerdict v) noexcept;
std::string_view to_string(OverallVerdict v) noexcept;

struct ConfigScore {
  Configuration config;
  PartySubset subset;
  double p_ignorance = 0.0;
  double p_transition = 0.0;
  double w = 0.0;
  CellVerdict verdict = CellVerdict::MSeparable;
  /// |W| read as the reversed-causality probability (separable branch).
  std::optional<double> p_reversed;
  /// |W| read as the anti-ignorance probability (entangled branch).
  std::optional<double> p_anti_ignorance;
};

struct CriterionReport {
  CouplingMode mode = CouplingMode::Free;
  std::vector<ConfigScore> scores;
  OverallVerdict overall = OverallVerdict::SeparableByCriterion;
};

/// rho_{j|j} times the summed diagonal weight of the partners of j.
///
/// Partners are the completely orthogonal configurations in free mode and the
/// D-1 cyclic shifts in coupled mode.
double ignorance_probability(const DensityMatrix& rho, const Configuration& j, CouplingMode mode);

/// Sum of |rho^{T_S}_{j|l}|^2 over transition partners l.
///
/// The transition partners swap with the ignorance partners: D-1 cyclic shifts
/// in free mode, all completely orthogonal configurations in coupled mode.
double transition_probability(const DensityMatrix& rho, const Configuration& j,
                              const PartySubset& subset, CouplingMode mode);

ConfigScore causal_w(const DensityMatrix& rho, const Configuration& j, const PartySubset& subset,
                     CouplingMode mode, double tol = kVerdictTolerance);

/// Every greedy distinct configuration against every canonical subset.
CriterionReport classify(const DensityMatrix& rho, CouplingMode mode,
                         double tol = kVerdictTolerance);

}  // namespace causal_sep
