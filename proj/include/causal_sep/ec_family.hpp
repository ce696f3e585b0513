#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causal_sep/configuration.hpp"
#include "causal_sep/density_matrix.hpp"

namespace causal_sep {

enum class EcClass { A, B };
enum class Mixing { Weak, Strong };

struct Variant {
  EcClass ec_class = EcClass::A;
  Mixing mixing = Mixing::Weak;
  CouplingMode coupling = CouplingMode::Free;

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// "a-weak-free", "b-strong-coupled", ...
std::string to_string(const Variant& v);
std::string_view to_string(EcClass c) noexcept;
std::string_view to_string(Mixing m) noexcept;
EcClass parse_class(std::string_view text);
Mixing parse_mixing(std::string_view text);

/// The eight variants in a fixed order: class, then mixing, then coupling.
std::vector<Variant> all_variants();

struct ECParams {
  Variant variant;
  int dim = 2;
  int parties = 2;
  /// Complex for class A (only |p| enters the probabilities); real in [0,1] for class B.
  std::complex<double> p = 0.0;
  /// Class B per-site exponent choice; empty means all ones.
  std::vector<int> b_sites;
};

void validate(const ECParams& params);

namespace detail {

template <typename Real>
using SiteMatrix = typename BasicDensityMatrix<Real>::Matrix;

/// Diagonal and coherent single-site blocks whose tensor powers make up the EC matrix.
template <typename Real>
std::pair<SiteMatrix<Real>, SiteMatrix<Real>> ec_site_blocks(const ECParams& params, int site) {
  using C = std::complex<Real>;
  const int d = params.dim;
  const Real x = Real(d - 1);
  const bool strong = params.variant.mixing == Mixing::Strong;
  SiteMatrix<Real> diag = SiteMatrix<Real>::Zero(d, d);
  SiteMatrix<Real> off = SiteMatrix<Real>::Zero(d, d);

  if (params.variant.ec_class == EcClass::A) {
    const Real a = static_cast<Real>(std::abs(params.p));
    const C p(static_cast<Real>(params.p.real()), static_cast<Real>(params.p.imag()));
    const C hop = strong ? p : p / x;
    diag(0, 0) = Real(1) - a;
    for (int k = 1; k < d; ++k) {
      diag(k, k) = a / x;
      off(k, 0) = hop;
      off(0, k) = std::conj(hop);
    }
  } else {
    const Real p = static_cast<Real>(params.p.real());
    const bool one = params.b_sites.empty() || params.b_sites[static_cast<std::size_t>(site)] != 0;
    const Real w = one ? Real(1) - p : p;
    const Real hop = strong ? w : w / x;
    diag(0, 0) = w;
    for (int k = 1; k < d; ++k) {
      diag(k, k) = w / x;
      off(k, 0) = hop;
      off(0, k) = hop;
    }
  }
  return {std::move(diag), std::move(off)};
}

}  // namespace detail

/// EC density matrix grown one site at a time from the recurrence.
///
/// Each level keeps a diagonal part and a coherent part; a new site multiplies
/// the diagonal part by the site populations and the coherent part by the site
/// hopping block, so rho_N = (x) site_diag + (x) site_off. Label 0 is the
/// distinguished state. Class A is unit trace; class B is flagged unnormalized.
template <typename Real = double>
BasicDensityMatrix<Real> build_ec_matrix(const ECParams& params,
                                         std::uint64_t cap = kDefaultDimensionCap) {
  validate(params);
  state_dimension(params.dim, params.parties, cap);
  using M = detail::SiteMatrix<Real>;
  M diag = M::Identity(1, 1);
  M off = M::Identity(1, 1);
  for (int n = 0; n < params.parties; ++n) {
    auto [sd, so] = detail::ec_site_blocks<Real>(params, n);
    M nd = Eigen::kroneckerProduct(diag, sd);
    M no = Eigen::kroneckerProduct(off, so);
    diag = std::move(nd);
    off = std::move(no);
  }
  return BasicDensityMatrix<Real>(params.dim, params.parties, diag + off,
                                  params.variant.ec_class == EcClass::A, cap);
}

struct PsdDiagnostic {
  bool evaluated = false;
  double min_eigenvalue = 0.0;
  bool psd = true;
};

/// Smallest eigenvalue of the matrix when D^N <= cap.
PsdDiagnostic psd_diagnostic(const DensityMatrix& rho, std::uint64_t cap = 729,
                             double tol = 1e-10);

/// Closed-form W for the variant.
///
/// Class A ignores m_j and m. Class B needs m in +-1..+-(N-1) and m_j in 1..N.
double closed_form_w(const ECParams& params, int m_j = 0, int m = 0);

enum class ThresholdKind { Single, Window };

struct ThresholdResult {
  ThresholdKind kind = ThresholdKind::Single;
  /// For Single both bounds equal p_th.
  double p_th1 = 0.0;
  double p_th2 = 0.0;
  std::optional<int> m_abs;
  std::string separable_region;

  double p_th() const noexcept { return p_th1; }
  /// A window whose lower root lies above its upper root admits no separable p.
  bool empty() const noexcept { return kind == ThresholdKind::Window && p_th1 > p_th2; }
};

ThresholdResult threshold(const Variant& variant, int dim, int parties,
                          std::optional<int> m_abs = std::nullopt);

/// Threshold with the base (D-1) replaced by an arbitrary positive real.
ThresholdResult threshold_at_base(const Variant& variant, double base, int parties,
                                  std::optional<int> m_abs = std::nullopt);

enum class EcVerdict { Separable, Entangled };
std::string_view to_string(EcVerdict v) noexcept;

/// A: separable iff |p| <= p_th. B: separable iff p_th1 <= p <= p_th2 for the
/// given |m|, or for every |m| in 1..N-1 when none is given.
EcVerdict classify_ec(const ECParams& params, std::optional<int> m_abs = std::nullopt);

struct DualityResiduals {
  double r_a = 0.0;
  double r_b = 0.0;
};

/// Free thresholds against their coupled partners under (D-1) -> 1/(D-1).
DualityResiduals duality_residuals(int dim, int parties);

/// ln(D-1); D >= 3.
double crossover_n(int dim);

/// (gamma m! / N!)^(1/N), evaluated in log space.
double renormalization_factor(double gamma, int m, int parties);

double renormalized_threshold(double gamma, int m, int parties, int dim, double alpha);

}  // namespace causal_sep
