#pragma once

#include <string>
#include <vector>

#include "eqsing/diagram.hpp"
#include "eqsing/lattice.hpp"

namespace eqsing {

// e_j -> sign_j * e_{target_j}, indices 0-based in lattice order.
class SignedPermutation {
 public:
  struct Image {
    std::size_t target;
    int sign;
    bool operator==(const Image&) const = default;
  };

  SignedPermutation() = default;
  explicit SignedPermutation(std::vector<Image> images);
  static SignedPermutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  const Image& image(std::size_t j) const { return images_[j]; }
  IntVector apply(std::span<const Int> v) const;
  IntMatrix matrix() const;
  SignedPermutation compose(const SignedPermutation& inner) const;  // this ∘ inner

  bool operator==(const SignedPermutation&) const = default;

 private:
  std::vector<Image> images_;
};

// One ±1 per generator, in generator order.
struct Character {
  std::vector<int> values;
  bool operator==(const Character&) const = default;
};

/// σ_* a = (-1)^m a for a Z2 action negating m coordinates.
Character z2_rule(int m);
/// Anti-invariance under each of the m corner generators.
Character corner_rule(std::size_t m);
/// All 2^m characters, ordered by bitmask (bit i set ⇔ value -1 on generator i).
std::vector<Character> all_characters(std::size_t generators);

class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(IntLattice lattice, std::vector<std::string> names, std::vector<SignedPermutation> generators);

  const IntLattice& lattice() const { return lattice_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<SignedPermutation>& generators() const { return generators_; }

 private:
  IntLattice lattice_;
  std::vector<std::string> names_;
  std::vector<SignedPermutation> generators_;
};

/// Builds the action described by a diagram file's generator lines.
GroupAction action_from_file(const DiagramFile& file);
/// The file's character, or all +1 when it has none.
Character character_from_file(const DiagramFile& file);

/// Throws ActionError with code NotInvolution, NotCommuting or NotIsometry,
/// naming the first offending generator(s) and matrix entry.
void validate_action(const GroupAction& action);

/// Saturated sublattice {a : σ_i a = χ_i a for all i}, basis in Hermite normal form.
Sublattice isotypic_sublattice(const GroupAction& action, const Character& chi);

/// Rank over Q of the character projector Σ_g χ(g) g (no saturation).
std::size_t rational_isotypic_rank(const GroupAction& action, const Character& chi);

/// Orbits of the unsigned permutation group on basis indices: each orbit
/// sorted, orbits ordered by least element.
std::vector<std::vector<std::size_t>> orbit_decomposition(const GroupAction& action);

/// Σ_g χ(g) g applied to a vector.
IntVector character_projection(const GroupAction& action, const Character& chi, std::span<const Int> v);

}  // namespace eqsing
