#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqsing/arith.hpp"

namespace eqsing {

enum class GroupKind {
  Z2,      // one generator negating every x-variable (T_{m,n})
  Corner,  // generator i negates x_i only (S_{m,n})
};

using Exponent = std::vector<int>;

/// A polynomial germ in variables x1..xm, y1..yn (in that order) with exact
/// rational coefficients and the Z2^k action given by `group`.
class PolyGerm {
 public:
  PolyGerm(std::size_t m, std::size_t n, GroupKind group = GroupKind::Z2);

  std::size_t x_count() const { return m_; }
  std::size_t y_count() const { return n_; }
  std::size_t variable_count() const { return m_ + n_; }
  GroupKind group() const { return group_; }
  std::size_t generator_count() const;
  std::string variable_name(std::size_t v) const;

  void add_term(const Rat& coefficient, Exponent exponent);
  const std::map<Exponent, Rat>& terms() const { return terms_; }

  /// Bitmask of generators under which the monomial is odd.
  std::size_t parity(const Exponent& e) const;
  /// Throws LocalAlgebraError NotInvariant naming the first odd monomial,
  /// or ConstantTerm when the constant term is nonzero.
  void validate_invariant() const;

  std::map<Exponent, Rat> derivative(std::size_t v) const;
  std::string to_string() const;

  bool operator==(const PolyGerm&) const = default;

 private:
  std::size_t m_;
  std::size_t n_;
  GroupKind group_;
  std::map<Exponent, Rat> terms_;
};

/// `vars x:<m> y:<n>` header, optional `group z2|corner`, then one
/// `<rational> <monomial>` term per line (monomials like x1^2*y1).
PolyGerm parse_polynomial(std::string_view text);
PolyGerm read_polynomial_file(const std::string& path);
std::string serialize_polynomial(const PolyGerm& f, const std::vector<std::string>& header = {});

/// f + y_{n+1}^2.
PolyGerm stabilize_y(const PolyGerm& f);
/// f + x_{m+1}^2; for corner germs the new variable gets its own generator.
PolyGerm stabilize_x(const PolyGerm& f);

struct LocalAlgebraReport {
  std::size_t mu = 0;
  // Indexed by character bitmask (bit i set ⇔ generator i acts by -1).
  std::vector<std::size_t> isotypic_dims;
  std::size_t truncation_degree = 0;

  std::size_t invariant_dim() const { return isotypic_dims.at(0); }
};

struct MilnorOptions {
  std::size_t max_degree = 24;
  bool parallel = true;
};

/// Dimension of O/(∂f) by exact reduction of the Jacobian ideal modulo
/// m^{D+1}. Degree D is accepted once every degree-D monomial lies in the
/// reduced row space, which by Nakayama gives m^D ⊆ (∂f). The ideal is
/// spanned by character-homogeneous rows, so each character class is reduced
/// independently (in parallel when enabled). Throws NotCertified when no
/// D ≤ max_degree works.
LocalAlgebraReport milnor_number(const PolyGerm& f, const MilnorOptions& options = {});

/// Dense serial reduction of the same quotient; reference for tests.
LocalAlgebraReport milnor_number_reference(const PolyGerm& f, std::size_t max_degree = 24);

/// Relabels isotypic dims by χ ↦ χ·det, det being the determinant character
/// of the action on the x-variables.
std::vector<std::size_t> det_twisted(const PolyGerm& f, const std::vector<std::size_t>& dims);

/// Π (1/w_i - 1) for weights in (0, 1/2]. Errors: BadWeights, NotInteger.
Int quasihomogeneous_mu(std::span<const Rat> weights);

/// True when every monomial of f has weighted degree 1.
bool is_quasihomogeneous(const PolyGerm& f, std::span<const Rat> weights);

struct Coranks {
  std::size_t x_block = 0;  // m1
  std::size_t y_block = 0;  // n1
  bool operator==(const Coranks&) const = default;
};

/// Coranks of the Hessian at 0 restricted to the x- and y-blocks. Mixed
/// second derivatives must vanish (NotInvariant otherwise).
Coranks coranks(const PolyGerm& f);

Rat parse_rational(std::string_view s);

}  // namespace eqsing
