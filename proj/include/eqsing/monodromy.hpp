#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eqsing/action.hpp"
#include "eqsing/lattice.hpp"

namespace eqsing {

// Square integer matrix with overflow-checked int64 entries; the element type
// of monodromy groups.
class GroupMatrix {
 public:
  GroupMatrix() = default;
  explicit GroupMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  static GroupMatrix identity(std::size_t n);
  static GroupMatrix from(const IntMatrix& m);

  std::size_t dim() const { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<std::int64_t>& entries() const { return a_; }

  IntMatrix to_int_matrix() const;
  IntVector apply(std::span<const Int> v) const;
  bool is_identity() const;

  bool operator==(const GroupMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b);

// `word` lists 1-based generator indices left to right, negative for an
// inverse: {5, 4, 1} is h5·h4·h1.
struct MonodromyElement {
  GroupMatrix matrix;
  std::vector<int> word;
};

std::string format_word(const std::vector<int>& word, const std::string& letter = "h");

bool preserves_form(const GroupMatrix& g, const IntMatrix& gram);

/// Reflection a ↦ a − 2(a,δ)/(δ,δ)·δ in the given form. Throws
/// MonodromyError IsotropicCycle when (δ,δ)=0 and NonIntegralReflection when
/// some basis vector would map to a non-integral vector.
MonodromyElement pl_reflection(const IntLattice& form, std::span<const Int> delta);

struct OrbitGenerator {
  std::vector<std::size_t> orbit;  // ambient basis indices
  IntVector delta_ambient;         // primitive projection of the orbit cycle
  IntVector delta;                 // the same cycle in isotypic coordinates
  MonodromyElement element;        // reflection in delta on the isotypic sublattice
};

/// Product of ambient Picard-Lefschetz reflections over a pairwise orthogonal
/// orbit, restricted to the isotypic sublattice, and checked to coincide with
/// the reflection in the projected orbit cycle. Errors: OrbitNotOrthogonal,
/// ProjectsToZero, GeneratorMismatch.
OrbitGenerator orbit_generator(const GroupAction& action, const Character& chi, const Sublattice& isotypic,
                               std::span<const std::size_t> orbit);

struct FiniteGroup {
  std::uint64_t order = 0;
};

enum class CertificateKind {
  Unipotent,   // (g-I)^2 = 0, g != I; g^s v = v + s w with w in the form kernel
  NonTorsion,  // characteristic polynomial / radical test shows infinite order
};

struct InfiniteCertificate {
  CertificateKind kind = CertificateKind::Unipotent;
  MonodromyElement element;
  IntVector witness;    // v
  IntVector increment;  // w = (g - I) v
};

struct UnknownOrder {
  std::size_t cap = 0;
  std::size_t explored = 0;
};

enum class SearchCase { Trivial, Definite, Semidefinite, Indefinite };

struct FinitenessVerdict {
  std::variant<FiniteGroup, InfiniteCertificate, UnknownOrder> result;
  SearchCase search = SearchCase::Trivial;

  bool finite() const { return std::holds_alternative<FiniteGroup>(result); }
  bool infinite() const { return std::holds_alternative<InfiniteCertificate>(result); }
  bool unknown() const { return std::holds_alternative<UnknownOrder>(result); }
  std::uint64_t order() const { return std::get<FiniteGroup>(result).order; }
  const InfiniteCertificate& certificate() const { return std::get<InfiniteCertificate>(result); }
};

struct GroupOptions {
  std::size_t cap = 1'000'000;  // only consulted for indefinite forms
  bool parallel = true;
};

/// Decides finiteness of the group generated by `generators` acting on the
/// lattice with the given form:
///  - definite form: closure by breadth-first search, always Finite;
///  - semidefinite form, generators fixing the kernel K pointwise: the search
///    tracks the induced action on L/K; two distinct elements with the same
///    induced action yield a unipotent certificate, otherwise Finite;
///  - anything else: closure with an exact finite-order test per element and
///    a cap on the number of elements.
/// The frontier products of each level are computed in parallel when
/// `options.parallel` is set; the result is identical to the serial search.
FinitenessVerdict generate_group(const IntLattice& form, std::span<const MonodromyElement> generators,
                                 const GroupOptions& options = {});

/// Straightforward serial breadth-first closure kept as a reference for
/// generate_group; same verdict semantics, different data structures.
FinitenessVerdict generate_group_reference(const IntLattice& form, std::span<const MonodromyElement> generators,
                                           std::size_t cap = 1'000'000);

/// Re-checks a certificate without trusting the search that produced it.
bool verify_certificate(const IntLattice& form, const InfiniteCertificate& cert);

/// Checks g^s v == v + s·w for s = 1..s_max; returns the first failing s.
std::optional<std::size_t> power_law_check(const GroupMatrix& g, std::span<const Int> v, std::span<const Int> w,
                                           std::size_t s_max);

/// Exact test: the characteristic polynomial is a product of cyclotomic
/// polynomials and the product of its distinct cyclotomic factors kills g.
bool has_finite_order(const GroupMatrix& g);

std::vector<Int> cyclotomic_polynomial(std::size_t m);

}  // namespace eqsing
