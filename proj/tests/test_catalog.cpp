#include <doctest.h>

#include "eqsing/catalog.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace eqsing;

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

std::vector<std::string> symbols(const std::vector<FamilyEntry>& list) {
  std::vector<std::string> out;
  for (const auto& e : list) out.push_back(e.symbol);
  return out;
}

std::uint64_t expected_order(const std::string& sym, std::optional<int> k) {
  if (sym == "A") return oracle::weyl_A(*k);
  if (sym == "B" || sym == "C") return oracle::weyl_BC(*k);
  if (sym == "D") return oracle::weyl_D(*k);
  if (sym == "E6") return oracle::weyl_E6();
  if (sym == "F4") return oracle::weyl_F4();
  return 0;
}

}  // namespace

TEST_CASE("normal forms") {
  CHECK(normal_form("F4", {.m = 2, .n = 1}).to_string() == "x1^4 + x2^2 + y1^3");
  CHECK(normal_form("B", {.k = 2, .m = 1, .n = 0}).to_string() == "x1^4");
  CHECK(normal_form("M5", {.modulus = Rat(1)}).to_string() == "x1^4 + x1^2*x2^2 + x2^4");
  CHECK(normal_form("A", {.k = 3}).to_string() == "y1^4");
  CHECK(normal_form("M4").group() == GroupKind::Corner);
  CHECK(error_code([] { normal_form("X9", {.modulus = Rat(2)}); }) == "BadParameter");
  CHECK(error_code([] { normal_form("X9", {.modulus = Rat(-2)}); }) == "BadParameter");
  CHECK(error_code([] { normal_form("A", {.k = 0}); }) == "BadParameter");
  CHECK(error_code([] { normal_form("A"); }) == "BadParameter");
  CHECK(error_code([] { normal_form("E6", {.k = 6}); }) == "BadParameter");
  CHECK(error_code([] { normal_form("M5", {.setting = Setting::Corner}); }) == "BadParameter");
  CHECK(error_code([] { normal_form("P8", {.n = 2}); }) == "BadParameter");
  CHECK(error_code([] { normal_form("Q7"); }) == "UnknownFamily");
}

TEST_CASE("normal forms are invariant and quasihomogeneous") {
  for (const auto& fam : families()) {
    FamilyParams p;
    if (fam.k_min) p.k = *fam.k_min + 1;
    if (fam.has_modulus()) p.modulus = Rat(1, 3);
    for (std::size_t extra = 0; extra < 2; ++extra) {
      FamilyParams q = p;
      const auto base = normal_form(fam.symbol, p);
      q.m = base.x_count() + extra;
      q.n = base.y_count() + 1;
      const auto f = normal_form(fam.symbol, q);
      CAPTURE(fam.symbol);
      CHECK_NOTHROW(f.validate_invariant());
      const auto w = normal_form_weights(fam.symbol, q);
      REQUIRE(w.size() == f.variable_count());
      CHECK(is_quasihomogeneous(f, w));
    }
  }
}

TEST_CASE("lists") {
  CHECK(symbols(simple_list()) == std::vector<std::string>{"A", "D", "E6", "E7", "E8", "B", "C", "F4"});
  const auto z2 = symbols(confining_list(Setting::Z2));
  const auto corner = symbols(confining_list(Setting::Corner));
  REQUIRE(z2.size() == 7);
  REQUIRE(corner.size() == 7);
  CHECK(z2.back() == "M5");
  CHECK(corner.back() == "M4");
  CHECK(std::vector<std::string>(z2.begin(), z2.end() - 1) == std::vector<std::string>(corner.begin(), corner.end() - 1));
  CHECK(families().size() == 16);
}

TEST_CASE("modulus exclusions") {
  CHECK(modulus_excluded(family("P8"), Rat(-3)));
  CHECK_FALSE(modulus_excluded(family("P8"), Rat(3)));
  CHECK_FALSE(modulus_excluded(family("J10"), Rat(-3)));  // 4a^3+27 has no rational root
  CHECK(modulus_excluded(family("K42"), Rat(2)));
  CHECK(modulus_excluded(family("L6"), Rat(1)));
  CHECK(modulus_excluded(family("M4"), Rat(-2)));
  CHECK_FALSE(modulus_excluded(family("M4"), Rat(0)));
}

TEST_CASE("fixtures agree with closed-form group orders") {
  for (const auto& fx : all_fixtures()) {
    if (!fx.group_enumerated) continue;
    const auto [sym, k] = split_fixture_name(fx.name);
    const std::uint64_t expect = expected_order(sym, k);
    if (!expect) continue;
    CAPTURE(fx.name);
    const auto ev = simplicity_verdict(sym, k);
    REQUIRE(ev.verdict.finite());
    CHECK(ev.verdict.order() == expect);
    CHECK(ev.simple());
    CHECK(ev.criteria_agree());
  }
}

TEST_CASE("confining fixtures are not simple") {
  for (const char* name : {"M5", "M4", "X9"}) {
    const auto ev = simplicity_verdict(name);
    CAPTURE(name);
    CHECK(ev.verdict.infinite());
    CHECK(ev.certificate_verified);
    CHECK(ev.kernel.size() == 2);
    CHECK_FALSE(ev.simple());
    CHECK(ev.criteria_agree());
  }
  CHECK(simplicity_verdict("M5").form_inertia == Inertia{0, 2, 3});
  CHECK(simplicity_verdict("M4").form_inertia == Inertia{0, 2, 2});
}

TEST_CASE("fixture errors") {
  CHECK(error_code([] { fixture("P8"); }) == "NoFixture");
  CHECK(error_code([] { fixture("J10"); }) == "NoFixture");
  CHECK(error_code([] { fixture("A", 20); }) == "NoFixture");
  CHECK(error_code([] { fixture("Z"); }) == "UnknownFamily");
  CHECK(error_code([] { simplicity_verdict("E7"); }) == "NoFixture");
  CHECK(split_fixture_name("B3") == std::pair<std::string, std::optional<int>>{"B", 3});
  CHECK(split_fixture_name("E6") == std::pair<std::string, std::optional<int>>{"E6", std::nullopt});
}

TEST_CASE("homology rank matches the local algebra") {
  // invariant homology of the fixture = invariant functions in the local algebra
  const auto check = [](const char* sym, std::optional<int> k, FamilyParams p) {
    const auto fx = fixture(sym, k);
    const auto iso = isotypic_sublattice(action_from_file(fx.file), character_from_file(fx.file));
    p.k = k;
    const auto f = normal_form(sym, p);
    const auto rep = milnor_number(f);
    CAPTURE(fx.name);
    CHECK(iso.rank() == rep.invariant_dim());
  };
  check("M5", std::nullopt, {.modulus = Rat(1)});
  check("M4", std::nullopt, {.modulus = Rat(1)});
  for (int k = 2; k <= 4; ++k) {
    check("B", k, {.m = 1, .n = 0});
    check("C", k, {.m = 1, .n = 1});
  }
  check("F4", std::nullopt, {.m = 1, .n = 1});
  for (int k = 1; k <= 5; ++k) check("A", k, {});

  CHECK(milnor_number(normal_form("M5", {.modulus = Rat(1)})).invariant_dim() == 5);
  CHECK(milnor_number(normal_form("M4", {.modulus = Rat(1)})).invariant_dim() == 4);
}

TEST_CASE("coranks of normal forms") {
  CHECK(coranks(normal_form("A", {.k = 3})) == Coranks{0, 1});
  CHECK(coranks(normal_form("D", {.k = 5})) == Coranks{0, 2});
  CHECK(coranks(normal_form("B", {.k = 3, .m = 2})) == Coranks{1, 0});
  CHECK(coranks(normal_form("C", {.k = 3})) == Coranks{1, 1});
  CHECK(coranks(normal_form("M5")) == Coranks{2, 0});
  CHECK(coranks(normal_form("E7")) == Coranks{0, 2});
}
