#include <doctest.h>

#include <random>

#include "eqsing/lattice.hpp"
#include "eqsing/linalg.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace eqsing;
using testing::imat;
using testing::ivec;

namespace {

IntMatrix m5_restricted() {
  return imat({{-2, 2, 2, -2, -2}, {2, -4, 0, 2, 2}, {2, 0, -4, 2, 2}, {-2, 2, 2, -4, 0}, {-2, 2, 2, 0, -4}});
}

IntMatrix m4_restricted() { return imat({{-2, 2, 2, -4}, {2, -4, 0, 4}, {2, 0, -4, 4}, {-4, 4, 4, -8}}); }

bool in_span(const std::vector<IntVector>& basis, const IntVector& v) {
  auto rows = basis;
  const std::size_t before = rank(rows, v.size());
  rows.push_back(v);
  return rank(rows, v.size()) == before;
}

}  // namespace

TEST_CASE("inertia examples") {
  CHECK(inertia(IntLattice(imat({{-2}}))) == Inertia{0, 0, 1});
  CHECK(inertia(IntLattice(imat({{-2, 1}, {1, -2}}))) == Inertia{0, 0, 2});
  CHECK(inertia(IntLattice(m5_restricted())) == Inertia{0, 2, 3});
  CHECK(inertia(IntLattice(m4_restricted())) == Inertia{0, 2, 2});
}

TEST_CASE("hyperbolic plane from a zero diagonal") {
  CHECK(inertia(IntLattice(imat({{0, 1}, {1, 0}}))) == Inertia{1, 0, 1});
  CHECK(inertia(IntLattice(imat({{0, 0}, {0, 0}}))) == Inertia{0, 2, 0});
  CHECK(inertia(IntLattice(imat({{0, 2, 0}, {2, 0, 0}, {0, 0, -3}}))) == Inertia{1, 0, 2});
}

TEST_CASE("classification strings") {
  CHECK(Inertia{0, 0, 3}.classification() == "negative-definite");
  CHECK(Inertia{0, 2, 3}.classification() == "negative-semidefinite");
  CHECK(Inertia{1, 0, 1}.classification() == "indefinite");
}

TEST_CASE("non-symmetric gram is rejected") {
  try {
    IntLattice l(imat({{1, 2}, {3, 1}}));
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == "NotSymmetric");
  }
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(IntLattice(imat({{-2, 1}, {1, -2}}))).empty());
  const auto k5 = kernel_basis(IntLattice(m5_restricted()));
  REQUIRE(k5.size() == 2);
  CHECK(in_span(k5, ivec({2, 1, 1, 0, 0})));
  CHECK(in_span(k5, ivec({0, 1, 1, 1, 1})));
  const auto k4 = kernel_basis(IntLattice(m4_restricted()));
  REQUIRE(k4.size() == 2);
  CHECK(in_span(k4, ivec({2, 1, 1, 0})));
  CHECK(in_span(k4, ivec({0, 1, 1, 1})));
  // canonical: same answer for a congruent presentation of the same form
  CHECK(kernel_basis(IntLattice(m5_restricted())) == k5);
}

TEST_CASE("restriction") {
  const IntLattice a3(imat({{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}));
  const auto full = restrict_to(a3, {ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1})});
  CHECK(full.restricted_gram() == a3.gram());

  const auto sub = restrict_to(a3, {ivec({2, 0, 2})});
  REQUIRE(sub.rank() == 1);
  CHECK(sub.basis()[0] == ivec({1, 0, 1}));
  CHECK(sub.restricted_gram()(0, 0) == -4);

  try {
    restrict_to(a3, {ivec({1, 1, 0}), ivec({2, 2, 0})});
    FAIL("expected DependentBasis");
  } catch (const Error& e) {
    CHECK(e.code() == "DependentBasis");
  }
}

TEST_CASE("restriction is idempotent on saturated bases") {
  const IntLattice l(imat({{-2, 1, 0, 0}, {1, -2, 1, 0}, {0, 1, -2, 1}, {0, 0, 1, -2}}));
  const auto once = restrict_to(l, {ivec({1, 0, 0, 1}), ivec({0, 1, 1, 0})});
  const auto twice = restrict_to(l, once.basis());
  CHECK(once.basis() == twice.basis());
  CHECK(once.restricted_gram() == twice.restricted_gram());
}

TEST_CASE("coordinates in a sublattice") {
  const IntLattice l(imat({{-2, 0, 0}, {0, -2, 0}, {0, 0, -2}}));
  const auto s = restrict_to(l, {ivec({1, 1, 0}), ivec({0, 0, 1})});
  auto c = s.coordinates(ivec({3, 3, -2}));
  REQUIRE(c);
  CHECK(s.embed(*c) == ivec({3, 3, -2}));
  CHECK_FALSE(s.coordinates(ivec({1, 0, 0})));
}

TEST_CASE("inertia against sign enumeration and Descartes oracle on random small forms") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> entry(-3, 3);
  int cases = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + trial % 4;
    oracle::Mat g(n, std::vector<long>(n));
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const long x = entry(rng);
        g[i][j] = g[j][i] = x;
        m(i, j) = m(j, i) = x;
      }
    const IntLattice lat(m);
    const Inertia in = inertia(lat);
    const auto ker = kernel_basis(lat);
    CAPTURE(trial);

    CHECK(in.rank() == n);
    CHECK(in.n_zero == ker.size());
    for (const auto& v : ker) CHECK(is_zero(lat.apply(v)));

    const auto ds = oracle::descartes_signs(g);
    CHECK(ds == oracle::Signs{int(in.n_plus), int(in.n_zero), int(in.n_minus)});

    const auto box = oracle::box_signs(g);
    const bool neg_def = !box.any_positive && !box.any_zero;
    const bool pos_def = !box.any_negative && !box.any_zero;
    const bool neg_semi = !box.any_positive && box.any_zero;
    CHECK(neg_def == (in.n_plus == 0 && in.n_zero == 0));
    CHECK(pos_def == (in.n_minus == 0 && in.n_zero == 0));
    if (neg_semi) CHECK((in.n_plus == 0 && in.n_zero > 0));
    CHECK(box.any_positive == (in.n_plus > 0));
    CHECK(box.any_negative == (in.n_minus > 0));
    ++cases;
  }
  CHECK(cases >= 500);
}
