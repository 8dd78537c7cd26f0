#include <doctest.h>

#include <random>

#include "eqsing/catalog.hpp"
#include "eqsing/monodromy.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace eqsing;
using testing::imat;
using testing::ivec;

namespace {

template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

struct Setup {
  Sublattice iso;
  std::vector<MonodromyElement> gens;
};

Setup reflections(const Fixture& fx) {
  const auto action = action_from_file(fx.file);
  const auto chi = character_from_file(fx.file);
  Setup s{isotypic_sublattice(action, chi), {}};
  for (const auto& orbit : orbit_decomposition(action)) {
    auto g = orbit_generator(action, chi, s.iso, orbit);
    g.element.word = {static_cast<int>(s.gens.size()) + 1};
    s.gens.push_back(g.element);
  }
  return s;
}

GroupMatrix word_matrix(const std::vector<MonodromyElement>& gens, const std::vector<int>& word) {
  GroupMatrix g = GroupMatrix::identity(gens.front().matrix.dim());
  for (int letter : word) g = g * gens[static_cast<std::size_t>(letter - 1)].matrix;
  return g;
}

oracle::Mat to_oracle(const GroupMatrix& g) {
  oracle::Mat m(g.dim(), std::vector<long>(g.dim()));
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) m[i][j] = g(i, j);
  return m;
}

}  // namespace

TEST_CASE("reflection examples") {
  const auto r = pl_reflection(IntLattice(imat({{-2}})), ivec({1}));
  CHECK(r.matrix(0, 0) == -1);

  const auto m5 = reflections(fixture("M5"));
  const auto& form = m5.iso.restricted();
  const GroupMatrix& h2 = m5.gens[1].matrix;
  CHECK(h2.apply(ivec({0, 1, 0, 0, 0})) == ivec({0, -1, 0, 0, 0}));
  for (std::size_t k = 0; k < 5; ++k) {
    IntVector a(5, 0);
    a[k] = 1;
    IntVector expect = a;
    const Int half = form.product(a, ivec({0, 1, 0, 0, 0})) / 2;
    expect[1] += half;
    CHECK(h2.apply(a) == expect);
  }

  const auto m4 = reflections(fixture("M4"));
  CHECK(m4.gens[3].matrix.apply(ivec({1, 0, 0, 0})) == ivec({1, 0, 0, -1}));
}

TEST_CASE("reflection errors") {
  CHECK(error_code([] { pl_reflection(IntLattice(imat({{0}})), ivec({1})); }) == "IsotropicCycle");
  CHECK(error_code([] { pl_reflection(IntLattice(imat({{-4, 1}, {1, -2}})), ivec({1, 0})); }) ==
        "NonIntegralReflection");
}

TEST_CASE("orbit generators") {
  const auto action = action_from_file(fixture("M5").file);
  const auto iso = isotypic_sublattice(action, Character{{1}});
  const std::vector<std::size_t> single{0}, pair{1, 3};
  const auto h1 = orbit_generator(action, Character{{1}}, iso, single);
  CHECK(h1.delta == ivec({1, 0, 0, 0, 0}));
  const auto h2 = orbit_generator(action, Character{{1}}, iso, pair);
  CHECK(h2.delta == ivec({0, 1, 0, 0, 0}));
  CHECK(h2.delta_ambient == ivec({0, 1, 0, 1, 0, 0, 0, 0, 0}));

  const auto a4 = action_from_file(fixture("M4").file);
  const auto iso4 = isotypic_sublattice(a4, Character{{-1, -1}});
  const std::vector<std::size_t> quad{5, 6, 7, 8};
  const auto h4 = orbit_generator(a4, Character{{-1, -1}}, iso4, quad);
  CHECK(h4.delta == ivec({0, 0, 0, 1}));
  CHECK(h4.delta_ambient == ivec({0, 0, 0, 0, 0, 1, 1, 1, 1}));
}

TEST_CASE("orbit generator errors") {
  const IntLattice a2(imat({{-2, 1}, {1, -2}}));
  const GroupAction swap(a2, {"s"}, {SignedPermutation(std::vector<SignedPermutation::Image>{{1, 1}, {0, 1}})});
  const auto iso = isotypic_sublattice(swap, Character{{1}});
  const std::vector<std::size_t> both{0, 1};
  CHECK(error_code([&] { orbit_generator(swap, Character{{1}}, iso, both); }) == "OrbitNotOrthogonal");

  const IntLattice a3(imat({{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}));
  const GroupAction rev(a3, {"r"}, {SignedPermutation(std::vector<SignedPermutation::Image>{{2, 1}, {1, 1}, {0, 1}})});
  const auto iso3 = isotypic_sublattice(rev, Character{{-1}});
  const std::vector<std::size_t> middle{1};
  CHECK(error_code([&] { orbit_generator(rev, Character{{-1}}, iso3, middle); }) == "ProjectsToZero");
}

TEST_CASE("generate_group examples") {
  const IntLattice a2(imat({{-2, 1}, {1, -2}}));
  std::vector<MonodromyElement> gens{pl_reflection(a2, ivec({1, 0})), pl_reflection(a2, ivec({0, 1}))};
  const auto v = generate_group(a2, gens);
  REQUIRE(v.finite());
  CHECK(v.order() == 6);
  CHECK(v.search == SearchCase::Definite);

  const std::vector<MonodromyElement> one{gens[0]};
  CHECK(generate_group(a2, one).order() == 2);
  CHECK(generate_group(a2, std::vector<MonodromyElement>{}).order() == 1);

  const auto m5 = reflections(fixture("M5"));
  const auto inf = generate_group(m5.iso.restricted(), m5.gens);
  REQUIRE(inf.infinite());
  CHECK(inf.search == SearchCase::Semidefinite);
  const auto& cert = inf.certificate();
  CHECK(cert.kind == CertificateKind::Unipotent);
  CHECK(verify_certificate(m5.iso.restricted(), cert));
  CHECK(word_matrix(m5.gens, cert.element.word) == cert.element.matrix);
  CHECK_FALSE(power_law_check(cert.element.matrix, cert.witness, cert.increment, 10));
}

TEST_CASE("tampered certificates are rejected") {
  const auto m5 = reflections(fixture("M5"));
  const auto v = generate_group(m5.iso.restricted(), m5.gens);
  auto cert = v.certificate();
  cert.increment[0] += 1;
  CHECK_FALSE(verify_certificate(m5.iso.restricted(), cert));
  cert = v.certificate();
  cert.element.matrix = GroupMatrix::identity(5);
  CHECK_FALSE(verify_certificate(m5.iso.restricted(), cert));
}

TEST_CASE("indefinite forms") {
  // affine-like pair with (δ1,δ2) = 3: the product of reflections has infinite order
  const IntLattice hyp(imat({{-2, 3}, {3, -2}}));
  std::vector<MonodromyElement> gens{pl_reflection(hyp, ivec({1, 0})), pl_reflection(hyp, ivec({0, 1}))};
  gens[0].word = {1};
  gens[1].word = {2};
  const auto v = generate_group(hyp, gens);
  REQUIRE(v.infinite());
  CHECK(v.search == SearchCase::Indefinite);
  CHECK(v.certificate().kind == CertificateKind::NonTorsion);
  CHECK(verify_certificate(hyp, v.certificate()));

  // finite group on an indefinite form, and the cap
  const IntLattice split(imat({{1, 0}, {0, -1}}));
  std::vector<MonodromyElement> signs{pl_reflection(split, ivec({1, 0})), pl_reflection(split, ivec({0, 1}))};
  CHECK(generate_group(split, signs).order() == 4);
  const auto capped = generate_group(split, signs, GroupOptions{2, true});
  CHECK(capped.unknown());
  CHECK(generate_group_reference(split, signs, 2).unknown());
}

TEST_CASE("finite order test") {
  CHECK(cyclotomic_polynomial(1) == ivec({-1, 1}));
  CHECK(cyclotomic_polynomial(6) == ivec({1, -1, 1}));
  GroupMatrix rot(2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  CHECK(has_finite_order(rot));
  GroupMatrix shear = GroupMatrix::identity(2);
  shear(0, 1) = 1;
  CHECK_FALSE(has_finite_order(shear));
  GroupMatrix hyperbolic(2);
  hyperbolic(0, 0) = 2;
  hyperbolic(0, 1) = 1;
  hyperbolic(1, 0) = 1;
  hyperbolic(1, 1) = 1;
  CHECK_FALSE(has_finite_order(hyperbolic));
}

TEST_CASE("reflections are involutions preserving the form and fixing the kernel") {
  for (const auto& fx : all_fixtures()) {
    const auto s = reflections(fx);
    const IntLattice& form = s.iso.restricted();
    const auto kernel = kernel_basis(form);
    CAPTURE(fx.name);
    std::mt19937 rng(3);
    for (const auto& h : s.gens) {
      CHECK((h.matrix * h.matrix).is_identity());
      CHECK(preserves_form(h.matrix, form.gram()));
    }
    // random products
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> word(1 + rng() % 12);
      for (auto& l : word) l = 1 + static_cast<int>(rng() % s.gens.size());
      const GroupMatrix g = word_matrix(s.gens, word);
      CHECK(preserves_form(g, form.gram()));
      for (const auto& k : kernel) CHECK(g.apply(k) == k);
    }
  }
}

TEST_CASE("parallel, serial and reference searches agree") {
  for (const auto& fx : all_fixtures()) {
    if (!fx.group_enumerated || fx.name == "A8") continue;
    const auto s = reflections(fx);
    const IntLattice& form = s.iso.restricted();
    const auto par = generate_group(form, s.gens, GroupOptions{1'000'000, true});
    const auto ser = generate_group(form, s.gens, GroupOptions{1'000'000, false});
    CAPTURE(fx.name);
    REQUIRE(par.finite() == ser.finite());
    if (par.finite()) {
      CHECK(par.order() == ser.order());
      if (par.order() <= 2000) CHECK(generate_group_reference(form, s.gens).order() == par.order());
    } else {
      CHECK(par.certificate().element.word == ser.certificate().element.word);
      CHECK(par.certificate().element.matrix == ser.certificate().element.matrix);
      const auto ref = generate_group_reference(form, s.gens);
      REQUIRE(ref.infinite());
      CHECK(ref.certificate().element.word == par.certificate().element.word);
    }
  }
}

TEST_CASE("group orders against a naive closure") {
  for (const char* name : {"A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4"}) {
    const auto [sym, k] = split_fixture_name(name);
    const auto s = reflections(fixture(sym, k));
    std::vector<oracle::Mat> gens;
    for (const auto& g : s.gens) gens.push_back(to_oracle(g.matrix));
    CAPTURE(name);
    CHECK(generate_group(s.iso.restricted(), s.gens).order() == oracle::naive_closure(gens));
  }
}

TEST_CASE("power law: identity") {
  const auto id = GroupMatrix::identity(3);
  CHECK_FALSE(power_law_check(id, ivec({1, 2, 3}), ivec({0, 0, 0}), 5));
}

// The law (h5 h4 h1)^s(δ2+δ3) = δ2+δ3 + s∇ cannot hold: reflections
// in δ1, δ4, δ5 only move a vector inside span(δ1, δ4, δ5), while ∇ has a δ2
// component. The increment actually produced is 2(∇ - ∇').
TEST_CASE("power law: M5 increment") {
  const auto s = reflections(fixture("M5"));
  const GroupMatrix g = word_matrix(s.gens, {5, 4, 1});
  const IntVector v = ivec({0, 1, 1, 0, 0});
  const IntVector nabla = ivec({2, 1, 1, 0, 0});
  const IntVector nabla2 = ivec({0, 1, 1, 1, 1});
  CHECK(power_law_check(g, v, nabla, 5) == std::optional<std::size_t>(1));
  IntVector w(5);
  for (std::size_t i = 0; i < 5; ++i) w[i] = 2 * (nabla[i] - nabla2[i]);
  CHECK(w == ivec({4, 0, 0, -2, -2}));
  CHECK_FALSE(power_law_check(g, v, w, 5));
  CHECK(is_zero(s.iso.restricted().apply(w)));
}

TEST_CASE("power law: M4 increment") {
  const auto s = reflections(fixture("M4"));
  const GroupMatrix g = word_matrix(s.gens, {4, 1});
  const IntVector v = ivec({0, 1, 1, 0});
  const IntVector nabla = ivec({2, 1, 1, 0});
  const IntVector nabla2 = ivec({0, 1, 1, 1});
  CHECK(power_law_check(g, v, nabla, 5) == std::optional<std::size_t>(1));
  IntVector w(4);
  for (std::size_t i = 0; i < 4; ++i) w[i] = 2 * (nabla[i] - nabla2[i]);
  CHECK_FALSE(power_law_check(g, v, w, 5));
}

TEST_CASE("group matrix overflow is detected") {
  GroupMatrix big = GroupMatrix::identity(2);
  big(0, 1) = std::int64_t{1} << 62;
  GroupMatrix m = big;
  m(1, 0) = 4;
  CHECK(error_code([&] { (void)(m * m); }) == "Overflow");
}
