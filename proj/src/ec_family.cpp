#include "causal_sep/ec_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "causal_sep/errors.hpp"

namespace causal_sep {

namespace {

void require_m_abs(int m_abs, int parties) {
  if (m_abs < 1 || m_abs > parties - 1) {
    throw DomainError("|m| must lie in 1.." + std::to_string(parties - 1) + ", got " +
                      std::to_string(m_abs));
  }
}

double logistic(double base, double exponent) { return 1.0 / (1.0 + std::pow(base, exponent)); }

// Exponent e such that the single A threshold is 1 / (1 + x^e).
double a_exponent(Mixing mixing, CouplingMode coupling, int n) {
  const double inv = 1.0 / n;
  if (coupling == CouplingMode::Free) return mixing == Mixing::Weak ? -(2.0 - inv) : inv;
  return mixing == Mixing::Weak ? -inv : 2.0 - inv;
}

// Coefficient c(x) in the class-B bracket 1 - c (1/p - 1)^(-2m), as a power of x.
double b_bracket_power(Mixing mixing, CouplingMode coupling, int n) {
  const double e = 2.0 * n - 1.0;
  if (coupling == CouplingMode::Free) return mixing == Mixing::Weak ? -e : 1.0;
  return mixing == Mixing::Weak ? -1.0 : e;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(EcClass c) noexcept { return c == EcClass::A ? "a" : "b"; }
std::string_view to_string(Mixing m) noexcept { return m == Mixing::Weak ? "weak" : "strong"; }

std::string to_string(const Variant& v) {
  std::string s(to_string(v.ec_class));
  s += '-';
  s += to_string(v.mixing);
  s += '-';
  s += to_string(v.coupling);
  return s;
}

EcClass parse_class(std::string_view text) {
  if (text == "a" || text == "A") return EcClass::A;
  if (text == "b" || text == "B") return EcClass::B;
  throw DomainError("unknown EC class '" + std::string(text) + "'");
}

Mixing parse_mixing(std::string_view text) {
  if (text == "weak") return Mixing::Weak;
  if (text == "strong") return Mixing::Strong;
  throw DomainError("unknown mixing '" + std::string(text) + "'");
}

std::vector<Variant> all_variants() {
  std::vector<Variant> out;
  for (auto c : {EcClass::A, EcClass::B})
    for (auto m : {Mixing::Weak, Mixing::Strong})
      for (auto k : {CouplingMode::Free, CouplingMode::Coupled}) out.push_back({c, m, k});
  return out;
}

void validate(const ECParams& params) {
  if (params.dim < 2) throw DomainError("EC matrices need D >= 2");
  if (params.parties < 2) throw DomainError("EC matrices need N >= 2");
  const double a = std::abs(params.p);
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("|p| must lie in [0,1], got " + fmt(a));
  if (params.variant.ec_class == EcClass::B) {
    if (params.p.imag() != 0.0 || params.p.real() < 0.0) {
      throw DomainError("class B needs real p in [0,1]");
    }
    if (!params.b_sites.empty()) {
      if (static_cast<int>(params.b_sites.size()) != params.parties) {
        throw DomainError("b_sites needs " + std::to_string(params.parties) + " entries");
      }
      for (int b : params.b_sites) {
        if (b != 0 && b != 1) throw DomainError("b_sites entries must be 0 or 1");
      }
    }
  }
}

PsdDiagnostic psd_diagnostic(const DensityMatrix& rho, std::uint64_t cap, double tol) {
  if (static_cast<std::uint64_t>(rho.size()) > cap) return {};
  const auto ev = hermitian_eigenvalues(rho);
  const double lo = ev.empty() ? 0.0 : ev.front();
  return {.evaluated = true, .min_eigenvalue = lo, .psd = lo >= -tol};
}

double closed_form_w(const ECParams& params, int m_j, int m) {
  validate(params);
  const int n = params.parties;
  const double x = params.dim - 1.0;
  const Variant& v = params.variant;

  if (v.ec_class == EcClass::A) {
    const double a = std::abs(params.p);
    const double pn = std::pow(a, n);
    const double qn = std::pow(1.0 - a, n);
    if (v.coupling == CouplingMode::Free) {
      return v.mixing == Mixing::Weak ? pn * (qn - pn / std::pow(x, 2 * n - 1))
                                      : pn * (qn - x * pn);
    }
    return v.mixing == Mixing::Weak
               ? std::pow(a, 2 * n) / std::pow(x, n) * (x * qn - pn)
               : pn * (qn / std::pow(x, n - 1) - std::pow(x, n) * pn);
  }

  if (m == 0 || std::abs(m) > n - 1) {
    throw DomainError("m must lie in +-1..+-" + std::to_string(n - 1) + ", got " + std::to_string(m));
  }
  if (m_j < 1 || m_j > n) {
    throw DomainError("m_j must lie in 1.." + std::to_string(n) + ", got " + std::to_string(m_j));
  }
  const double p = params.p.real();
  const double scale = v.coupling == CouplingMode::Coupled ? std::pow(x, n - 1) : 1.0;
  const double c = std::pow(x, b_bracket_power(v.mixing, v.coupling, n));
  // Expanded so that p = 0 or p = 1 gives 0 rather than 0 * inf where the product is finite.
  const double ignorance = std::pow(1.0 - p, 2 * m_j) * std::pow(p, 2 * (n - m_j));
  const double transition = std::pow(1.0 - p, 2 * (m_j - m)) * std::pow(p, 2 * (n - m_j + m));
  return (ignorance - c * transition) / scale;
}

ThresholdResult threshold_at_base(const Variant& variant, double base, int parties,
                                  std::optional<int> m_abs) {
  if (parties < 2) throw DomainError("thresholds need N >= 2");
  if (!(base > 0.0)) throw DomainError("threshold base (D-1) must be positive");
  ThresholdResult r;
  if (variant.ec_class == EcClass::A) {
    r.kind = ThresholdKind::Single;
    r.p_th1 = r.p_th2 = logistic(base, a_exponent(variant.mixing, variant.coupling, parties));
    r.separable_region = "0 <= |p| <= " + fmt(r.p_th1);
    return r;
  }
  if (!m_abs) throw DomainError("class B thresholds need |m|");
  require_m_abs(*m_abs, parties);
  // Bracket 1 - x^k (p/(1-p))^(2m) vanishes at p/(1-p) = x^(-k/2m); the m < 0
  // branch gives the lower bound and the m > 0 branch the upper one.
  const double k = b_bracket_power(variant.mixing, variant.coupling, parties);
  const double e = k / (2.0 * *m_abs);
  r.kind = ThresholdKind::Window;
  r.m_abs = m_abs;
  r.p_th1 = logistic(base, -e);
  r.p_th2 = logistic(base, e);
  r.separable_region = r.empty() ? std::string("empty")
                                 : fmt(r.p_th1) + " <= p <= " + fmt(r.p_th2);
  return r;
}

ThresholdResult threshold(const Variant& variant, int dim, int parties, std::optional<int> m_abs) {
  if (dim < 2) throw DomainError("thresholds need D >= 2");
  return threshold_at_base(variant, dim - 1.0, parties, m_abs);
}

std::string_view to_string(EcVerdict v) noexcept {
  return v == EcVerdict::Separable ? "separable" : "entangled";
}

EcVerdict classify_ec(const ECParams& params, std::optional<int> m_abs) {
  validate(params);
  const Variant& v = params.variant;
  if (v.ec_class == EcClass::A) {
    const auto t = threshold(v, params.dim, params.parties);
    return std::abs(params.p) <= t.p_th() ? EcVerdict::Separable : EcVerdict::Entangled;
  }
  const double p = params.p.real();
  auto inside = [&](int m) {
    const auto t = threshold(v, params.dim, params.parties, m);
    return t.p_th1 <= p && p <= t.p_th2;
  };
  if (m_abs) return inside(*m_abs) ? EcVerdict::Separable : EcVerdict::Entangled;
  for (int m = 1; m <= params.parties - 1; ++m) {
    if (!inside(m)) return EcVerdict::Entangled;
  }
  return EcVerdict::Separable;
}

DualityResiduals duality_residuals(int dim, int parties) {
  if (dim < 2 || parties < 2) throw DomainError("duality needs D >= 2 and N >= 2");
  const double x = dim - 1.0;
  DualityResiduals r;
  const Variant aw{EcClass::A, Mixing::Weak, CouplingMode::Free};
  const Variant as{EcClass::A, Mixing::Strong, CouplingMode::Free};
  const Variant awc{EcClass::A, Mixing::Weak, CouplingMode::Coupled};
  const Variant asc{EcClass::A, Mixing::Strong, CouplingMode::Coupled};
  r.r_a = std::max(
      std::abs(threshold_at_base(aw, x, parties).p_th() - threshold_at_base(asc, 1.0 / x, parties).p_th()),
      std::abs(threshold_at_base(as, x, parties).p_th() - threshold_at_base(awc, 1.0 / x, parties).p_th()));

  const std::pair<Variant, Variant> pairs[] = {
      {{EcClass::B, Mixing::Weak, CouplingMode::Free}, {EcClass::B, Mixing::Strong, CouplingMode::Coupled}},
      {{EcClass::B, Mixing::Strong, CouplingMode::Free}, {EcClass::B, Mixing::Weak, CouplingMode::Coupled}},
  };
  for (int m = 1; m <= parties - 1; ++m) {
    for (const auto& [free, coupled] : pairs) {
      const auto f = threshold(free, dim, parties, m);
      const auto c = threshold(coupled, dim, parties, m);
      r.r_b = std::max({r.r_b, std::abs(f.p_th1 - c.p_th2), std::abs(f.p_th2 - c.p_th1)});
    }
  }
  return r;
}

double crossover_n(int dim) {
  if (dim < 3) throw DomainError("crossover needs D >= 3 (ln(D-1) vanishes at D=2)");
  return std::log(dim - 1.0);
}

double renormalization_factor(double gamma, int m, int parties) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (parties < 1) throw DomainError("N must be >= 1");
  if (m < 1 || m > parties) {
    throw DomainError("m must lie in 1.." + std::to_string(parties) + ", got " + std::to_string(m));
  }
  const double log_ratio = std::log(gamma) + std::lgamma(m + 1.0) - std::lgamma(parties + 1.0);
  return std::exp(log_ratio / parties);
}

double renormalized_threshold(double gamma, int m, int parties, int dim, double alpha) {
  if (dim < 2) throw DomainError("D must be >= 2");
  const double f = renormalization_factor(gamma, m, parties);
  return 1.0 / (1.0 + f * std::pow(dim - 1.0, alpha));
}

}  // namespace causal_sep
