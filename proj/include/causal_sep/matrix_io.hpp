#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "causal_sep/density_matrix.hpp"

namespace causal_sep {

inline constexpr std::string_view kSchema = "causal-sep/1";

struct LoadOptions {
  /// Reject payloads that are not Hermitian, or not unit trace when flagged normalized.
  bool strict = true;
  double tolerance = kConstructionTolerance;
  std::uint64_t dimension_cap = kDefaultDimensionCap;
};

/// {"schema","D","N","normalized","entries":[[re,im],...]}, row-major.
std::string matrix_to_json(const DensityMatrix& rho);
DensityMatrix matrix_from_json(std::string_view text, const LoadOptions& options = {});

void save_matrix(const DensityMatrix& rho, const std::filesystem::path& path);
DensityMatrix load_matrix(const std::filesystem::path& path, const LoadOptions& options = {});

}  // namespace causal_sep
