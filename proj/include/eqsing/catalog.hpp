#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqsing/action.hpp"
#include "eqsing/local_algebra.hpp"
#include "eqsing/monodromy.hpp"

namespace eqsing {

enum class Setting { Z2, Corner, Both };
enum class FamilyKind { Simple, Confining };

std::string to_string(Setting s);
Setting parse_setting(std::string_view s);

struct FamilyEntry {
  std::string symbol;            // A, D, E6, ..., F10, K42, L6, M5, M4
  FamilyKind kind = FamilyKind::Simple;
  Setting setting = Setting::Both;
  std::optional<int> k_min;      // set for the series A, D, B, C
  std::string normal_form;       // human-readable template
  std::string modulus_exclusion; // empty when there is no modulus
  bool has_modulus() const { return !modulus_exclusion.empty(); }
};

const std::vector<FamilyEntry>& families();
/// Throws CatalogError UnknownFamily.
const FamilyEntry& family(std::string_view symbol);
std::vector<FamilyEntry> simple_list();
/// Confining families for the setting: the six shared ones then M5 (Z2) or M4 (corner).
std::vector<FamilyEntry> confining_list(Setting setting);

/// True when a violates the family's modulus condition.
bool modulus_excluded(const FamilyEntry& entry, const Rat& a);

struct FamilyParams {
  std::optional<int> k;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<Rat> modulus;  // defaults to 0
  std::optional<Setting> setting;
};

/// Normal form with x- and y-variable counts padded by squares. Throws
/// CatalogError BadParameter for k out of range, an excluded modulus, m or n
/// too small for the template, or a setting the family does not belong to.
PolyGerm normal_form(std::string_view symbol, const FamilyParams& params = {});

/// Weights making normal_form(symbol, params) quasihomogeneous of degree 1.
std::vector<Rat> normal_form_weights(std::string_view symbol, const FamilyParams& params = {});

struct Fixture {
  std::string name;  // e.g. "B3", "M5"
  DiagramFile file;
  bool group_enumerated = true;  // false for E7/E8: diagram only
};

/// Bundled diagram + action + character. Throws CatalogError NoFixture or BadParameter.
Fixture fixture(std::string_view symbol, std::optional<int> k = std::nullopt);
/// Every bundled fixture, in a fixed order (E7/E8 included).
std::vector<Fixture> all_fixtures();

/// Identifies fixture names like "A3", "E6", "M5" and splits symbol and index.
std::pair<std::string, std::optional<int>> split_fixture_name(std::string_view name);

struct Evidence {
  Sublattice isotypic;
  Inertia form_inertia;
  std::vector<IntVector> kernel;          // δ-coordinates
  std::vector<IntVector> kernel_ambient;  // Δ-coordinates
  std::vector<std::vector<std::size_t>> skipped_orbits;  // projected to zero
  std::vector<OrbitGenerator> generators;
  FinitenessVerdict verdict;
  bool certificate_verified = false;

  bool negative_definite() const { return form_inertia.negative_definite(); }
  bool criteria_agree() const { return verdict.unknown() || negative_definite() == verdict.finite(); }
  bool simple() const { return negative_definite() && verdict.finite(); }
};

/// Isotypic sublattice, inertia and kernel, orbit reflections, finiteness.
Evidence analyze_action(const GroupAction& action, const Character& chi, const GroupOptions& options = {});

/// analyze_action on a bundled fixture; a disagreement between definiteness
/// and finiteness is raised as CatalogError InternalError.
Evidence simplicity_verdict(std::string_view symbol, std::optional<int> k = std::nullopt,
                            const GroupOptions& options = {});

}  // namespace eqsing
