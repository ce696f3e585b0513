#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causal_sep/configuration.hpp"
#include "causal_sep/criterion.hpp"
#include "causal_sep/ec_family.hpp"
#include "causal_sep/ppt.hpp"

namespace causal_sep {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// `steps` evenly spaced points from start to end inclusive; one point is `start`.
std::vector<double> p_grid(double start, double end, int steps);

struct SweepRow {
  Variant variant;
  int dim = 2;
  int parties = 2;
  double p = 0.0;
  double w_closed = 0.0;
  /// Smallest causal W over subsets at j = (0,..,0); absent above the matrix cap.
  std::optional<double> w_matrix;
  double p_th1 = 0.0;
  double p_th2 = 0.0;
  EcVerdict verdict = EcVerdict::Separable;
};

struct SweepOptions {
  int m_abs = 1;
  double phase = 0.0;
  std::vector<int> b_sites;
  std::uint64_t matrix_cap = 1024;
};

/// One row per grid point, in grid order.
///
/// Class B uses the all-distinguished configuration (m_j = N) and reports the
/// smaller of the m = +|m| and m = -|m| closed forms.
std::vector<SweepRow> sweep(const Variant& variant, int dim, int parties,
                            const std::vector<double>& grid, const SweepOptions& options = {});

struct CompareRow {
  double p = 0.0;
  double w_min = 0.0;
  double ppt_min_eigenvalue = 0.0;
  OverallVerdict causal = OverallVerdict::SeparableByCriterion;
  PptOutcome ppt = PptOutcome::SeparableConsistent;
  bool agree = true;
};

/// Causal classify against the PPT oracle on built EC matrices.
std::vector<CompareRow> compare(const Variant& variant, int dim, int parties,
                                const std::vector<double>& grid, const SweepOptions& options = {});

std::string census_json(const ConfigCensus& census, CouplingMode mode,
                        std::optional<std::uint64_t> greedy_distinct);
std::string report_json(const CriterionReport& report);
std::string ppt_json(const std::vector<PptVerdict>& verdicts);
std::string threshold_json(const Variant& v, int dim, int parties,
                           const std::vector<ThresholdResult>& results);
std::string threshold_csv(const Variant& v, int dim, int parties,
                          const std::vector<ThresholdResult>& results);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);
std::string compare_csv(const Variant& v, int dim, int parties, const std::vector<CompareRow>& rows);
std::string compare_json(const Variant& v, int dim, int parties, const std::vector<CompareRow>& rows);
std::string duality_json(int dim, int parties, const DualityResiduals& r);
std::string crossover_json(int dim, double n_cr);

}  // namespace causal_sep
