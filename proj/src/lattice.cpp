#include "eqsing/lattice.hpp"

#include <algorithm>

#include "eqsing/linalg.hpp"

namespace eqsing {

IntLattice::IntLattice(IntMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.square()) throw DimensionError("gram matrix is not square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.cols(); ++j)
      if (gram_(i, j) != gram_(j, i))
        throw Error("NotSymmetric", "gram matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ")");
  if (!labels_.empty() && labels_.size() != gram_.rows()) throw DimensionError("label count differs from rank");
}

std::string Inertia::classification() const {
  if (rank() == 0) return "zero-rank";
  if (n_plus == 0 && n_minus == 0) return "zero";
  if (n_plus == 0) return n_zero == 0 ? "negative-definite" : "negative-semidefinite";
  if (n_minus == 0) return n_zero == 0 ? "positive-definite" : "positive-semidefinite";
  return "indefinite";
}

Inertia inertia(const IntLattice& lattice) {
  RatMatrix s = to_rational(lattice.gram());
  std::vector<std::size_t> active(lattice.rank());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  Inertia out;

  auto drop = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return s(i, i) != 0; });
    if (diag != active.end()) {
      const std::size_t p = *diag;
      const Rat piv = s(p, p);
      (piv > 0 ? out.n_plus : out.n_minus)++;
      drop(p);
      for (std::size_t j : active) {
        if (s(j, p) == 0) continue;
        const Rat f = s(j, p) / piv;
        for (std::size_t k : active) s(j, k) -= f * s(p, k);
      }
      continue;
    }
    // All remaining diagonal entries vanish: look for a hyperbolic pair.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t a = 0; a < active.size() && !pair; ++a)
      for (std::size_t b = a + 1; b < active.size(); ++b)
        if (s(active[a], active[b]) != 0) {
          pair = {active[a], active[b]};
          break;
        }
    if (!pair) {
      out.n_zero += active.size();
      break;
    }
    const auto [p, q] = *pair;
    const Rat b = s(p, q);
    out.n_plus++;
    out.n_minus++;
    drop(p);
    drop(q);
    // Schur complement against [[0,b],[b,0]], whose inverse is [[0,1/b],[1/b,0]].
    const RatMatrix before = s;
    for (std::size_t k : active)
      for (std::size_t l : active)
        s(k, l) = before(k, l) - (before(k, p) * before(q, l) + before(k, q) * before(p, l)) / b;
  }
  return out;
}

std::vector<IntVector> kernel_basis(const IntLattice& lattice) { return integer_kernel(lattice.gram()); }

Sublattice Sublattice::from_saturated(IntLattice ambient, std::vector<IntVector> basis, const std::string& label_prefix) {
  Sublattice s;
  const std::size_t k = basis.size();
  IntMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) g(i, j) = g(j, i) = ambient.product(basis[i], basis[j]);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back(label_prefix + std::to_string(i + 1));
  for (const auto& b : basis) {
    auto it = std::find_if(b.begin(), b.end(), [](const Int& x) { return x != 0; });
    if (it == b.end()) throw DimensionError("zero vector in sublattice basis");
    s.pivots_.push_back(static_cast<std::size_t>(it - b.begin()));
  }
  s.ambient_ = std::move(ambient);
  s.basis_ = std::move(basis);
  s.restricted_ = IntLattice(std::move(g), std::move(labels));
  return s;
}

IntVector Sublattice::embed(std::span<const Int> coords) const {
  if (coords.size() != basis_.size()) throw DimensionError("embed: coordinate count differs from sublattice rank");
  IntVector v(ambient_.rank(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += coords[i] * basis_[i][j];
  return v;
}

std::optional<IntVector> Sublattice::coordinates(std::span<const Int> ambient_vector) const {
  if (ambient_vector.size() != ambient_.rank()) throw DimensionError("coordinates: vector has wrong length");
  IntVector residual(ambient_vector.begin(), ambient_vector.end());
  IntVector coords(basis_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Int& lead = basis_[i][pivots_[i]];
    if (!mpz_divisible_p(residual[pivots_[i]].get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    coords[i] = residual[pivots_[i]] / lead;
    for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= coords[i] * basis_[i][j];
  }
  if (!is_zero(residual)) return std::nullopt;
  return coords;
}

Sublattice restrict_to(const IntLattice& lattice, const std::vector<IntVector>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != lattice.rank()) throw DimensionError("restrict: vector length differs from lattice rank");
  if (rank(vectors, lattice.rank()) != vectors.size())
    throw DependentBasis("restrict: the " + std::to_string(vectors.size()) + " vectors are rationally dependent");
  return Sublattice::from_saturated(lattice, saturate(vectors, lattice.rank()));
}

}  // namespace eqsing
