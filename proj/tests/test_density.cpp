#include <doctest.h>

#include <random>

#include "causal_sep/density_matrix.hpp"
#include "oracles.hpp"

using namespace causal_sep;
using cplx = std::complex<double>;

namespace {

double max_diff(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

DensityMatrix diag(std::initializer_list<double> v, int dim, int parties) {
  DensityMatrix::Matrix m = DensityMatrix::Matrix::Zero(static_cast<Eigen::Index>(v.size()),
                                                        static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return DensityMatrix(dim, parties, std::move(m), false);
}

std::vector<int> random_members(std::mt19937_64& rng, int parties, bool allow_trivial) {
  for (;;) {
    std::vector<int> s;
    for (int n = 0; n < parties; ++n)
      if (rng() & 1) s.push_back(n);
    if (allow_trivial || (!s.empty() && static_cast<int>(s.size()) < parties)) return s;
  }
}

}  // namespace

TEST_CASE("element access by configuration") {
  const auto mm = maximally_mixed(2, 2);
  CHECK(element(mm, Configuration(2, {1, 0}), Configuration(2, {1, 0})) == cplx(0.25));
  CHECK(element(mm, Configuration(2, {0, 1}), Configuration(2, {1, 0})) == cplx(0.0));
  const auto mm3 = maximally_mixed(3, 2);
  CHECK(element(mm3, Configuration(3, {2, 1}), Configuration(3, {2, 1})).real() == doctest::Approx(1.0 / 9));

  const auto phi = bell_phi_plus();
  CHECK(std::abs(element(phi, Configuration(2, {0, 0}), Configuration(2, {1, 1})) - 0.5) < 1e-15);
  CHECK_THROWS_AS(element(phi, Configuration(3, {0, 0}), Configuration(2, {1, 1})), ShapeError);
}

TEST_CASE("construction checks shape and cap") {
  CHECK_THROWS_AS(DensityMatrix(2, 2, DensityMatrix::Matrix::Identity(3, 3), false), ShapeError);
  CHECK_THROWS_AS(maximally_mixed(2, 13), BudgetExceeded);
  CHECK_NOTHROW(maximally_mixed(2, 12));
  CHECK_THROWS_AS(state_dimension(0, 2), DomainError);
}

TEST_CASE("tensor product") {
  const DensityMatrix one;
  const auto phi = bell_phi_plus();
  CHECK(max_diff(tensor_product(one, phi), phi) == 0.0);
  CHECK(max_diff(tensor_product(phi, one), phi) == 0.0);

  const auto a = diag({1, 0}, 2, 1);
  const auto b = diag({0, 1}, 2, 1);
  const auto ab = tensor_product(a, b);
  CHECK(ab.parties() == 2);
  CHECK(max_diff(ab, diag({0, 1, 0, 0}, 2, 2)) == 0.0);

  CHECK_THROWS_AS(tensor_product(maximally_mixed(2, 1), maximally_mixed(3, 1)), ShapeError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto x = oracle::random_hermitian(rng, 2, 1 + t % 2, false);
    const auto y = oracle::random_hermitian(rng, 2, 1 + t % 3, false);
    CHECK(std::abs(trace(tensor_product(x, y)) - trace(x) * trace(y)) < 1e-12);
  }
}

TEST_CASE("party subsets") {
  CHECK_THROWS_AS(PartySubset(2, {}), DomainError);
  CHECK_THROWS_AS(PartySubset(2, {0, 1}), DomainError);
  CHECK_THROWS_AS(PartySubset(3, {3}), DomainError);
  CHECK(PartySubset(4, {2, 0, 2}).members().size() == 2);
  CHECK(PartySubset(4, {0, 2}).complement() == PartySubset(4, {1, 3}));

  const auto c3 = canonical_subsets(3);
  REQUIRE(c3.size() == 3);
  CHECK(c3[0] == PartySubset(3, {0}));
  CHECK(c3[1] == PartySubset(3, {0, 1}));
  CHECK(c3[2] == PartySubset(3, {0, 2}));
  for (int n = 2; n <= 6; ++n) CHECK(canonical_subsets(n).size() == (1u << (n - 1)) - 1);
}

TEST_CASE("partial transpose index rule") {
  DensityMatrix::Matrix m = DensityMatrix::Matrix::Zero(4, 4);
  m(0, 3) = 1.0;
  const auto t = partial_transpose(DensityMatrix(2, 2, m, false), PartySubset(2, {1}));
  // ((0,0),(1,1)) moves to ((0,1),(1,0)).
  CHECK(t(1, 2) == cplx(1.0));
  CHECK((t.matrix().cwiseAbs().sum()) == 1.0);
}

TEST_CASE("partial transpose of the Bell state") {
  const auto t = partial_transpose(bell_psi_plus(), PartySubset(2, {1}));
  const auto ev = hermitian_eigenvalues(t);
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(ev[static_cast<std::size_t>(i)] == doctest::Approx(0.5).epsilon(1e-12));
  const auto ep = hermitian_eigenvalues(partial_transpose(bell_phi_plus(), PartySubset(2, {1})));
  CHECK(ep[0] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose matches the label-loop oracle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 2);
    const auto rho = oracle::random_hermitian(rng, d, n, true);
    const auto s = random_members(rng, n, true);
    CHECK(max_diff(partial_transpose(rho, s), oracle::partial_transpose(rho, s)) == 0.0);
  }
}

TEST_CASE("partial transpose structure on random Hermitian matrices") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto rho = oracle::random_hermitian(rng, d, n, true);
    const auto sv = random_members(rng, n, false);
    const PartySubset s(n, sv);
    const auto t1 = partial_transpose(rho, s);

    CHECK(max_diff(partial_transpose(t1, s), rho) == 0.0);
    CHECK(max_hermitian_deviation(t1) <= 1e-14);
    CHECK(std::abs(trace(t1) - trace(rho)) <= 1e-14);

    const auto s2 = random_members(rng, n, false);
    const auto both = partial_transpose(partial_transpose(rho, sv), s2);
    CHECK(max_diff(both, partial_transpose(rho, symmetric_difference(sv, s2))) == 0.0);

    auto a = hermitian_eigenvalues(t1);
    auto b = hermitian_eigenvalues(partial_transpose(rho, s.complement()));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  }
}

TEST_CASE("full and empty transposes") {
  std::mt19937_64 rng(29);
  const auto rho = oracle::random_hermitian(rng, 3, 2, true);
  CHECK(max_diff(partial_transpose(rho, std::vector<int>{}), rho) == 0.0);
  DensityMatrix full(3, 2, rho.matrix().transpose(), true);
  CHECK(max_diff(partial_transpose(rho, std::vector<int>{0, 1}), full) == 0.0);
  CHECK_THROWS_AS(partial_transpose(rho, std::vector<int>{2}), DomainError);
  CHECK_THROWS_AS(partial_transpose(rho, PartySubset(3, {0})), ShapeError);
}

TEST_CASE("pt_entry agrees with the formed partial transpose") {
  std::mt19937_64 rng(31);
  const auto rho = oracle::random_hermitian(rng, 3, 3, true);
  const PartySubset s(3, {0, 2});
  const auto t = partial_transpose(rho, s);
  for (Eigen::Index r = 0; r < rho.size(); r += 5) {
    for (Eigen::Index c = 0; c < rho.size(); c += 3) {
      const auto rc = Configuration::from_index(3, 3, static_cast<std::uint64_t>(r));
      const auto cc = Configuration::from_index(3, 3, static_cast<std::uint64_t>(c));
      CHECK(pt_entry(rho, rc, cc, s) == t(r, c));
    }
  }
}

TEST_CASE("Hermitian eigenvalues") {
  const auto id = hermitian_eigenvalues(DensityMatrix(2, 2, DensityMatrix::Matrix::Identity(4, 4), false));
  for (double v : id) CHECK(v == doctest::Approx(1.0));
  const auto dv = hermitian_eigenvalues(diag({0.3, 0.1, 0.4, 0.2}, 2, 2));
  CHECK(dv[0] == doctest::Approx(0.1));
  CHECK(dv[1] == doctest::Approx(0.2));
  CHECK(dv[2] == doctest::Approx(0.3));
  CHECK(dv[3] == doctest::Approx(0.4));

  DensityMatrix::Matrix bad = DensityMatrix::Matrix::Zero(4, 4);
  bad(0, 1) = 1e-6;
  CHECK_THROWS_AS(hermitian_eigenvalues(DensityMatrix(2, 2, bad, false)), InvariantViolation);
}

TEST_CASE("eigenvalues agree with the Jacobi oracle and sum to the trace") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto rho = oracle::random_hermitian(rng, d, n, false);
    const auto a = hermitian_eigenvalues(rho);
    const auto b = oracle::jacobi_eigenvalues(rho);
    REQUIRE(a.size() == b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i] - b[i]) <= 1e-10 * std::max(1.0, std::abs(b[i])));
      sum += a[i];
    }
    CHECK(std::abs(sum - trace(rho).real()) <= 1e-10);
    CHECK(std::is_sorted(a.begin(), a.end()));
  }
}

TEST_CASE("long double instantiation") {
  const auto rho = bell_psi_plus<long double>();
  const auto ev = hermitian_eigenvalues(partial_transpose(rho, PartySubset(2, {0})));
  CHECK(static_cast<double>(ev.front()) == doctest::Approx(-0.5));
}

TEST_CASE("physical-state checks") {
  CHECK_NOTHROW(require_physical(bell_phi_plus()));
  DensityMatrix::Matrix m = maximally_mixed(2, 2).matrix();
  m(0, 0) += 1e-9;
  try {
    require_physical(DensityMatrix(2, 2, m, true));
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.invariant() == "unit trace");
    CHECK(e.deviation() == doctest::Approx(1e-9));
  }
}
