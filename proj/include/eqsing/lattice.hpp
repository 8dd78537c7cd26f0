#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqsing/arith.hpp"

namespace eqsing {

// A free abelian group of finite rank with an integral symmetric bilinear
// form. Immutable after construction.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(IntMatrix gram, std::vector<std::string> labels = {});

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Int product(std::span<const Int> u, std::span<const Int> v) const { return bilinear(gram_, u, v); }
  IntVector apply(const IntVector& v) const { return gram_ * v; }

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

struct Inertia {
  std::size_t n_plus = 0;
  std::size_t n_zero = 0;
  std::size_t n_minus = 0;

  std::size_t rank() const { return n_plus + n_zero + n_minus; }
  bool negative_definite() const { return n_plus == 0 && n_zero == 0; }
  bool positive_definite() const { return n_minus == 0 && n_zero == 0; }
  bool definite() const { return rank() > 0 && (negative_definite() || positive_definite()); }
  bool semidefinite() const { return n_plus == 0 || n_minus == 0; }
  // "negative-definite", "negative-semidefinite", "indefinite", ...
  std::string classification() const;

  bool operator==(const Inertia&) const = default;
};

/// Signature by symmetric congruence over Q. A zero diagonal with a nonzero
/// off-diagonal entry is split off as a hyperbolic plane contributing (1,0,1).
Inertia inertia(const IntLattice& lattice);

/// Saturated Z-basis of the radical {v : Gv = 0}, in Hermite normal form.
std::vector<IntVector> kernel_basis(const IntLattice& lattice);

// A primitive sublattice of an ambient lattice, with basis rows in Hermite
// normal form and the restricted form on them.
class Sublattice {
 public:
  Sublattice() = default;

  // `basis` must already be saturated and in Hermite normal form.
  static Sublattice from_saturated(IntLattice ambient, std::vector<IntVector> basis, const std::string& label_prefix = "δ");

  const IntLattice& ambient() const { return ambient_; }
  const std::vector<IntVector>& basis() const { return basis_; }
  const IntLattice& restricted() const { return restricted_; }
  const IntMatrix& restricted_gram() const { return restricted_.gram(); }
  std::size_t rank() const { return basis_.size(); }

  IntVector embed(std::span<const Int> coords) const;
  // Coordinates of an ambient vector in the sublattice basis, if it lies in it.
  std::optional<IntVector> coordinates(std::span<const Int> ambient_vector) const;

 private:
  IntLattice ambient_;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivots_;
  IntLattice restricted_;
};

/// Saturates Q-span(vectors) and restricts the form to it. Throws
/// DependentBasis when the vectors are rationally dependent.
Sublattice restrict_to(const IntLattice& lattice, const std::vector<IntVector>& vectors);

}  // namespace eqsing
