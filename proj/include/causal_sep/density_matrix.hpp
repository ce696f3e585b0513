#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "causal_sep/configuration.hpp"
#include "causal_sep/errors.hpp"

namespace causal_sep {

/// Largest D^N accepted for dense storage unless a caller passes its own cap.
inline constexpr std::uint64_t kDefaultDimensionCap = 4096;

inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kEigenAdmissionTolerance = 1e-10;

/// D^N, rejected when above `cap`.
inline Eigen::Index state_dimension(int dim, int parties,
                                    std::uint64_t cap = kDefaultDimensionCap) {
  if (dim < 1 || parties < 1) {
    throw DomainError("need D >= 1 and N >= 1, got D=" + std::to_string(dim) +
                      ", N=" + std::to_string(parties));
  }
  std::uint64_t n = 0;
  try {
    n = checked_power(dim, parties);
  } catch (const OverflowError&) {
    throw BudgetExceeded("D^N overflows for D=" + std::to_string(dim) + ", N=" +
                         std::to_string(parties));
  }
  if (n > cap) {
    throw BudgetExceeded("state dimension " + std::to_string(n) + " exceeds cap " +
                         std::to_string(cap));
  }
  return static_cast<Eigen::Index>(n);
}

/// Dense D^N x D^N complex matrix with party structure.
///
/// Rows and columns are configurations in lexicographic order with the last
/// party varying fastest. Values are immutable once built.
template <typename Real>
class BasicDensityMatrix {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  BasicDensityMatrix() : BasicDensityMatrix(1, 1, Matrix::Identity(1, 1), true) {}

  BasicDensityMatrix(int dim, int parties, Matrix entries, bool normalized,
                     std::uint64_t cap = kDefaultDimensionCap)
      : dim_(dim), parties_(parties), normalized_(normalized), m_(std::move(entries)) {
    const Eigen::Index n = state_dimension(dim, parties, cap);
    if (m_.rows() != n || m_.cols() != n) {
      throw ShapeError("matrix is " + std::to_string(m_.rows()) + "x" +
                       std::to_string(m_.cols()) + ", expected " + std::to_string(n) +
                       "x" + std::to_string(n) + " for D=" + std::to_string(dim) +
                       ", N=" + std::to_string(parties));
    }
  }

  int dim() const noexcept { return dim_; }
  int parties() const noexcept { return parties_; }
  bool normalized() const noexcept { return normalized_; }
  Eigen::Index size() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

  Scalar operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

  BasicDensityMatrix scaled(Real c) const {
    return BasicDensityMatrix(dim_, parties_, m_ * Scalar(c), normalized_ && c == Real(1));
  }

 private:
  int dim_;
  int parties_;
  bool normalized_;
  Matrix m_;
};

using DensityMatrix = BasicDensityMatrix<double>;

/// A non-empty proper subset of the parties, kept sorted.
class PartySubset {
 public:
  PartySubset(int parties, std::vector<int> members) : parties_(parties), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty()) throw DomainError("party subset must be non-empty");
    if (static_cast<int>(members_.size()) >= parties) {
      throw DomainError("party subset must be a proper subset of " + std::to_string(parties) +
                        " parties");
    }
    if (members_.front() < 0 || members_.back() >= parties) {
      throw DomainError("party index outside [0, " + std::to_string(parties - 1) + "]");
    }
  }

  int parties() const noexcept { return parties_; }
  std::span<const int> members() const noexcept { return members_; }
  bool contains(int party) const {
    return std::binary_search(members_.begin(), members_.end(), party);
  }

  PartySubset complement() const {
    std::vector<int> out;
    for (int n = 0; n < parties_; ++n) {
      if (!contains(n)) out.push_back(n);
    }
    return PartySubset(parties_, std::move(out));
  }

  friend bool operator==(const PartySubset&, const PartySubset&) = default;

 private:
  int parties_;
  std::vector<int> members_;
};

inline std::string to_string(const PartySubset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.members()[i]);
  }
  return out + "}";
}

/// Parties in exactly one of `a` and `b`; may be empty or the full set.
inline std::vector<int> symmetric_difference(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// One representative per {S, complement(S)} pair: the member containing party 0.
inline std::vector<PartySubset> canonical_subsets(int parties) {
  if (parties < 2) return {};
  if (parties > 30) throw BudgetExceeded("too many parties for subset enumeration");
  std::vector<PartySubset> out;
  const std::uint32_t full = (std::uint32_t{1} << parties) - 1;
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    std::vector<int> members;
    for (int n = 0; n < parties; ++n) {
      if (mask & (std::uint32_t{1} << n)) members.push_back(n);
    }
    out.emplace_back(parties, std::move(members));
  }
  return out;
}

template <typename Real>
void require_same_shape(const BasicDensityMatrix<Real>& rho, const Configuration& c) {
  if (c.dim() != rho.dim() || c.parties() != rho.parties()) {
    throw ShapeError("configuration " + to_string(c) + " does not match D=" +
                     std::to_string(rho.dim()) + ", N=" + std::to_string(rho.parties()));
  }
}

template <typename Real>
void require_same_shape(const BasicDensityMatrix<Real>& rho, const PartySubset& subset) {
  if (subset.parties() != rho.parties()) {
    throw ShapeError("subset is over " + std::to_string(subset.parties()) + " parties, matrix has " +
                     std::to_string(rho.parties()));
  }
}

template <typename Real>
std::complex<Real> element(const BasicDensityMatrix<Real>& rho, const Configuration& row,
                           const Configuration& col) {
  require_same_shape(rho, row);
  require_same_shape(rho, col);
  return rho(static_cast<Eigen::Index>(row.index()), static_cast<Eigen::Index>(col.index()));
}

template <typename Real>
BasicDensityMatrix<Real> tensor_product(const BasicDensityMatrix<Real>& a,
                                        const BasicDensityMatrix<Real>& b,
                                        std::uint64_t cap = kDefaultDimensionCap) {
  // A 1x1 operand carries no party and acts as a scalar.
  if (a.size() == 1) return BasicDensityMatrix<Real>(b.dim(), b.parties(), a(0, 0) * b.matrix(),
                                                     a.normalized() && b.normalized(), cap);
  if (b.size() == 1) return BasicDensityMatrix<Real>(a.dim(), a.parties(), b(0, 0) * a.matrix(),
                                                     a.normalized() && b.normalized(), cap);
  if (a.dim() != b.dim()) {
    throw ShapeError("tensor product needs equal D, got " + std::to_string(a.dim()) + " and " +
                     std::to_string(b.dim()));
  }
  const int parties = a.parties() + b.parties();
  state_dimension(a.dim(), parties, cap);
  typename BasicDensityMatrix<Real>::Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return BasicDensityMatrix<Real>(a.dim(), parties, std::move(k),
                                  a.normalized() && b.normalized(), cap);
}

namespace detail {

/// s[i] = sum over parties n in S of digit_n(i) * D^(N-1-n).
inline std::vector<Eigen::Index> subset_offsets(int dim, int parties, std::span<const int> members) {
  const Eigen::Index n = static_cast<Eigen::Index>(checked_power(dim, parties));
  std::vector<Eigen::Index> weight(static_cast<std::size_t>(parties));
  Eigen::Index w = 1;
  for (int p = parties - 1; p >= 0; --p) {
    weight[static_cast<std::size_t>(p)] = w;
    w *= dim;
  }
  std::vector<Eigen::Index> s(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index acc = 0;
    for (int p : members) acc += ((i / weight[static_cast<std::size_t>(p)]) % dim) * weight[static_cast<std::size_t>(p)];
    s[static_cast<std::size_t>(i)] = acc;
  }
  return s;
}

inline void check_members(int parties, std::span<const int> members) {
  for (int p : members) {
    if (p < 0 || p >= parties) {
      throw DomainError("party index " + std::to_string(p) + " outside [0, " +
                        std::to_string(parties - 1) + "]");
    }
  }
}

}  // namespace detail

/// Transposes the indices of the listed parties. An empty list is the identity
/// and the full list the ordinary transpose.
template <typename Real>
BasicDensityMatrix<Real> partial_transpose(const BasicDensityMatrix<Real>& rho,
                                           std::span<const int> members) {
  detail::check_members(rho.parties(), members);
  const auto s = detail::subset_offsets(rho.dim(), rho.parties(), members);
  const Eigen::Index n = rho.size();
  typename BasicDensityMatrix<Real>::Matrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index sr = s[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < n; ++c) {
      const Eigen::Index sc = s[static_cast<std::size_t>(c)];
      out(r, c) = rho(r - sr + sc, c - sc + sr);
    }
  }
  return BasicDensityMatrix<Real>(rho.dim(), rho.parties(), std::move(out), rho.normalized(),
                                  static_cast<std::uint64_t>(n));
}

template <typename Real>
BasicDensityMatrix<Real> partial_transpose(const BasicDensityMatrix<Real>& rho,
                                           const PartySubset& subset) {
  require_same_shape(rho, subset);
  return partial_transpose(rho, subset.members());
}

/// Single entry (row, col) of the partial transpose, without forming it.
template <typename Real>
std::complex<Real> pt_entry(const BasicDensityMatrix<Real>& rho, const Configuration& row,
                            const Configuration& col, const PartySubset& subset) {
  require_same_shape(rho, row);
  require_same_shape(rho, col);
  require_same_shape(rho, subset);
  std::vector<int> r(row.labels().begin(), row.labels().end());
  std::vector<int> c(col.labels().begin(), col.labels().end());
  for (int p : subset.members()) std::swap(r[static_cast<std::size_t>(p)], c[static_cast<std::size_t>(p)]);
  return element(rho, Configuration(rho.dim(), std::move(r)), Configuration(rho.dim(), std::move(c)));
}

template <typename Real>
std::complex<Real> trace(const BasicDensityMatrix<Real>& rho) {
  return rho.matrix().trace();
}

/// max |M(i,j) - conj(M(j,i))|.
template <typename Real>
Real max_hermitian_deviation(const BasicDensityMatrix<Real>& rho) {
  if (rho.size() == 0) return Real(0);
  return (rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff();
}

/// Rejects matrices that are not Hermitian or, when flagged normalized, not of unit trace.
template <typename Real>
void require_physical(const BasicDensityMatrix<Real>& rho, double tol = kConstructionTolerance) {
  const Real herm = max_hermitian_deviation(rho);
  if (herm > tol) throw InvariantViolation("hermiticity", static_cast<double>(herm));
  if (rho.normalized()) {
    const Real dev = std::abs(trace(rho) - std::complex<Real>(1));
    if (dev > tol) throw InvariantViolation("unit trace", static_cast<double>(dev));
  }
}

/// Full real spectrum in ascending order.
template <typename Real>
std::vector<Real> hermitian_eigenvalues(const BasicDensityMatrix<Real>& rho,
                                        double admission_tol = kEigenAdmissionTolerance) {
  const Real herm = max_hermitian_deviation(rho);
  if (herm > admission_tol) throw InvariantViolation("hermiticity", static_cast<double>(herm));
  using ColMajor = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  ColMajor h = (rho.matrix() + rho.matrix().adjoint()) * std::complex<Real>(Real(0.5));
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<Real>(ev.data(), ev.data() + ev.size());
}

template <typename Real = double>
BasicDensityMatrix<Real> maximally_mixed(int dim, int parties) {
  const Eigen::Index n = state_dimension(dim, parties);
  using M = typename BasicDensityMatrix<Real>::Matrix;
  return BasicDensityMatrix<Real>(dim, parties, M::Identity(n, n) / Real(n), true);
}

/// |psi><psi| for an amplitude vector in configuration order, normalized first.
template <typename Real = double>
BasicDensityMatrix<Real> pure_state(int dim, int parties,
                                    const std::vector<std::complex<Real>>& amplitudes) {
  const Eigen::Index n = state_dimension(dim, parties);
  if (static_cast<Eigen::Index>(amplitudes.size()) != n) {
    throw ShapeError("expected " + std::to_string(n) + " amplitudes, got " +
                     std::to_string(amplitudes.size()));
  }
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> psi =
      Eigen::Map<const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>>(amplitudes.data(), n);
  const Real norm = psi.norm();
  if (norm == Real(0)) throw DomainError("zero state vector");
  psi /= norm;
  typename BasicDensityMatrix<Real>::Matrix m = psi * psi.adjoint();
  return BasicDensityMatrix<Real>(dim, parties, std::move(m), true);
}

/// |c><c| for a single configuration.
template <typename Real = double>
BasicDensityMatrix<Real> basis_state(const Configuration& c) {
  const Eigen::Index n = state_dimension(c.dim(), c.parties());
  typename BasicDensityMatrix<Real>::Matrix m = BasicDensityMatrix<Real>::Matrix::Zero(n, n);
  const auto i = static_cast<Eigen::Index>(c.index());
  m(i, i) = Real(1);
  return BasicDensityMatrix<Real>(c.dim(), c.parties(), std::move(m), true);
}

/// (|00> + |11>)/sqrt2.
template <typename Real = double>
BasicDensityMatrix<Real> bell_phi_plus() {
  return pure_state<Real>(2, 2, {Real(1), Real(0), Real(0), Real(1)});
}

/// (|01> + |10>)/sqrt2.
template <typename Real = double>
BasicDensityMatrix<Real> bell_psi_plus() {
  return pure_state<Real>(2, 2, {Real(0), Real(1), Real(1), Real(0)});
}

}  // namespace causal_sep
