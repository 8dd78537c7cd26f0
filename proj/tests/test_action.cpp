#include <doctest.h>

#include "eqsing/action.hpp"
#include "eqsing/catalog.hpp"
#include "helpers.hpp"

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

GroupAction fixture_action(const char* name) { return action_from_file(fixture(name).file); }

SignedPermutation perm(std::initializer_list<std::pair<std::size_t, int>> images) {
  std::vector<SignedPermutation::Image> im;
  for (const auto& [t, s] : images) im.push_back({t, s});
  return SignedPermutation(im);
}

}  // namespace

TEST_CASE("signed permutations") {
  const auto p = perm({{1, -1}, {0, 1}, {2, 1}});
  CHECK(p.apply(ivec({1, 2, 3})) == ivec({2, -1, 3}));
  CHECK(p.matrix() * ivec({1, 2, 3}) == ivec({2, -1, 3}));
  CHECK(p.compose(p).apply(ivec({1, 2, 3})) == ivec({-1, -2, 3}));
  CHECK(error_code([] { perm({{0, 1}, {0, 1}}); }) == "NotPermutation");
}

TEST_CASE("validate_action examples") {
  const IntLattice a2(imat({{-2, 1}, {1, -2}}));
  CHECK_NOTHROW(validate_action(GroupAction(a2, {"e"}, {SignedPermutation::identity(2)})));
  CHECK_NOTHROW(validate_action(fixture_action("M5")));
  CHECK_NOTHROW(validate_action(fixture_action("M4")));
  CHECK(error_code([&] { validate_action(GroupAction(a2, {"s"}, {perm({{1, 1}, {0, -1}})})); }) == "NotIsometry");

  const IntLattice diag(imat({{-2, 0, 0}, {0, -2, 0}, {0, 0, -2}}));
  // 3-cycle: an isometry but not an involution
  CHECK(error_code([&] { validate_action(GroupAction(diag, {"c"}, {perm({{1, 1}, {2, 1}, {0, 1}})})); }) ==
        "NotInvolution");
  // two transpositions sharing a point do not commute
  CHECK(error_code([&] {
          validate_action(GroupAction(diag, {"a", "b"}, {perm({{1, 1}, {0, 1}, {2, 1}}), perm({{0, 1}, {2, 1}, {1, 1}})}));
        }) == "NotCommuting");
}

TEST_CASE("M5 isotypic sublattice") {
  const auto action = fixture_action("M5");
  const auto iso = isotypic_sublattice(action, Character{{1}});
  REQUIRE(iso.rank() == 5);
  CHECK(iso.basis()[0] == ivec({1, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(iso.basis()[1] == ivec({0, 1, 0, 1, 0, 0, 0, 0, 0}));
  CHECK(iso.basis()[2] == ivec({0, 0, 1, 0, 1, 0, 0, 0, 0}));
  CHECK(iso.basis()[3] == ivec({0, 0, 0, 0, 0, 1, 0, 1, 0}));
  CHECK(iso.basis()[4] == ivec({0, 0, 0, 0, 0, 0, 1, 0, 1}));
  CHECK(iso.restricted_gram()(1, 1) == -4);
  CHECK(iso.restricted().labels()[1] == "δ2");
}

TEST_CASE("M4 isotypic sublattice") {
  const auto action = fixture_action("M4");
  const auto iso = isotypic_sublattice(action, Character{{-1, -1}});
  REQUIRE(iso.rank() == 4);
  CHECK(iso.basis()[0] == ivec({1, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(iso.basis()[1] == ivec({0, 1, 0, 1, 0, 0, 0, 0, 0}));
  CHECK(iso.basis()[2] == ivec({0, 0, 1, 0, 1, 0, 0, 0, 0}));
  CHECK(iso.basis()[3] == ivec({0, 0, 0, 0, 0, 1, 1, 1, 1}));
  CHECK(iso.restricted_gram()(3, 3) == -8);
  CHECK(iso.restricted_gram()(0, 3) == -4);
}

TEST_CASE("trivial action gives the full lattice") {
  const IntLattice a3(imat({{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}));
  const GroupAction trivial(a3, {}, {});
  const auto iso = isotypic_sublattice(trivial, Character{});
  CHECK(iso.rank() == 3);
  CHECK(iso.restricted_gram() == a3.gram());
  CHECK(orbit_decomposition(trivial) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
}

TEST_CASE("orbit decompositions") {
  CHECK(orbit_decomposition(fixture_action("M5")) ==
        std::vector<std::vector<std::size_t>>{{0}, {1, 3}, {2, 4}, {5, 7}, {6, 8}});
  CHECK(orbit_decomposition(fixture_action("M4")) ==
        std::vector<std::vector<std::size_t>>{{0}, {1, 3}, {2, 4}, {5, 6, 7, 8}});
}

TEST_CASE("isotypic vectors transform by the character, over all fixtures and characters") {
  for (const auto& fx : all_fixtures()) {
    const auto action = action_from_file(fx.file);
    for (const auto& chi : all_characters(action.generators().size())) {
      const auto iso = isotypic_sublattice(action, chi);
      for (const auto& b : iso.basis())
        for (std::size_t k = 0; k < chi.values.size(); ++k) {
          IntVector expect = b;
          for (auto& x : expect) x *= chi.values[k];
          CHECK(action.generators()[k].apply(b) == expect);
        }
      CHECK(iso.rank() == rational_isotypic_rank(action, chi));
    }
  }
}

TEST_CASE("isotypic ranks add up to the ambient rank") {
  for (const auto& fx : all_fixtures()) {
    const auto action = action_from_file(fx.file);
    std::size_t total = 0;
    for (const auto& chi : all_characters(action.generators().size())) total += rational_isotypic_rank(action, chi);
    CAPTURE(fx.name);
    CHECK(total == action.lattice().rank());
  }
}

TEST_CASE("restricted form is preserved by operators commuting with the action") {
  // the generators themselves commute with the action
  const auto action = fixture_action("M4");
  const auto iso = isotypic_sublattice(action, Character{{-1, -1}});
  for (const auto& g : action.generators())
    for (const auto& a : iso.basis())
      for (const auto& b : iso.basis())
        CHECK(action.lattice().product(g.apply(a), g.apply(b)) == action.lattice().product(a, b));
}

TEST_CASE("character presets") {
  CHECK(z2_rule(2) == Character{{1}});
  CHECK(z2_rule(1) == Character{{-1}});
  CHECK(corner_rule(2) == Character{{-1, -1}});
  CHECK(all_characters(2).size() == 4);
  CHECK(all_characters(2)[1] == Character{{-1, 1}});
}
