#include "eqsing/action.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "eqsing/linalg.hpp"

namespace eqsing {

SignedPermutation::SignedPermutation(std::vector<Image> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (const auto& im : images_) {
    if (im.target >= images_.size() || hit[im.target] || (im.sign != 1 && im.sign != -1))
      throw ActionError("NotPermutation", "signed permutation images are not a bijection with signs ±1");
    hit[im.target] = true;
  }
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<Image> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = {i, 1};
  return SignedPermutation(std::move(im));
}

IntVector SignedPermutation::apply(std::span<const Int> v) const {
  if (v.size() != images_.size()) throw DimensionError("signed permutation applied to vector of wrong length");
  IntVector r(v.size(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) r[images_[j].target] += images_[j].sign * v[j];
  return r;
}

IntMatrix SignedPermutation::matrix() const {
  IntMatrix m(images_.size(), images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j) m(images_[j].target, j) = images_[j].sign;
  return m;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& inner) const {
  if (inner.size() != size()) throw DimensionError("composing signed permutations of different sizes");
  std::vector<Image> im(size());
  for (std::size_t j = 0; j < size(); ++j) {
    const Image& a = inner.images_[j];
    const Image& b = images_[a.target];
    im[j] = {b.target, a.sign * b.sign};
  }
  return SignedPermutation(std::move(im));
}

Character z2_rule(int m) { return Character{{m % 2 == 0 ? 1 : -1}}; }

Character corner_rule(std::size_t m) { return Character{std::vector<int>(m, -1)}; }

std::vector<Character> all_characters(std::size_t generators) {
  std::vector<Character> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << generators); ++mask) {
    Character c;
    for (std::size_t i = 0; i < generators; ++i) c.values.push_back((mask >> i) & 1 ? -1 : 1);
    out.push_back(std::move(c));
  }
  return out;
}

GroupAction::GroupAction(IntLattice lattice, std::vector<std::string> names, std::vector<SignedPermutation> generators)
    : lattice_(std::move(lattice)), names_(std::move(names)), generators_(std::move(generators)) {
  if (names_.size() != generators_.size()) throw DimensionError("generator name count differs from generator count");
  for (const auto& g : generators_)
    if (g.size() != lattice_.rank()) throw DimensionError("generator size differs from lattice rank");
}

GroupAction action_from_file(const DiagramFile& file) {
  const auto& d = file.diagram;
  std::vector<std::string> names;
  std::vector<SignedPermutation> gens;
  for (const auto& g : file.generators) {
    std::vector<SignedPermutation::Image> im(d.size());
    for (const auto& [src, dst] : g.images) im[d.index_of(src)] = {d.index_of(std::abs(dst)), dst > 0 ? 1 : -1};
    names.push_back(g.name);
    gens.emplace_back(std::move(im));
  }
  return GroupAction(to_lattice(d), std::move(names), std::move(gens));
}

Character character_from_file(const DiagramFile& file) {
  Character chi{std::vector<int>(file.generators.size(), 1)};
  if (!file.character) return chi;
  for (std::size_t i = 0; i < file.generators.size(); ++i)
    for (const auto& [name, v] : file.character->values)
      if (name == file.generators[i].name) chi.values[i] = v;
  return chi;
}

void validate_action(const GroupAction& action) {
  const auto& gens = action.generators();
  const auto& names = action.names();
  const IntMatrix& g = action.lattice().gram();
  const std::size_t n = action.lattice().rank();
  const auto ident = SignedPermutation::identity(n);

  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& s = gens[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& a = s.image(i);
        const auto& b = s.image(j);
        if (a.sign * b.sign * g(a.target, b.target) != g(i, j))
          throw ActionError("NotIsometry", "generator '" + names[k] + "' does not preserve the form: (σe" +
                                               std::to_string(i + 1) + ",σe" + std::to_string(j + 1) + ") != (e" +
                                               std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")");
      }
    const auto sq = s.compose(s);
    for (std::size_t j = 0; j < n; ++j)
      if (!(sq.image(j) == ident.image(j)))
        throw ActionError("NotInvolution",
                          "generator '" + names[k] + "' is not an involution: σ²e" + std::to_string(j + 1) + " != e" +
                              std::to_string(j + 1));
  }
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const auto ab = gens[a].compose(gens[b]);
      const auto ba = gens[b].compose(gens[a]);
      for (std::size_t j = 0; j < n; ++j)
        if (!(ab.image(j) == ba.image(j)))
          throw ActionError("NotCommuting", "generators '" + names[a] + "' and '" + names[b] +
                                                "' do not commute on e" + std::to_string(j + 1));
    }
}

Sublattice isotypic_sublattice(const GroupAction& action, const Character& chi) {
  validate_action(action);
  const auto& gens = action.generators();
  if (chi.values.size() != gens.size()) throw DimensionError("character length differs from generator count");
  const std::size_t n = action.lattice().rank();
  IntMatrix stacked(gens.size() * n, n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const IntMatrix m = gens[k].matrix();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(k * n + i, j) = m(i, j) - (i == j ? chi.values[k] : 0);
  }
  return Sublattice::from_saturated(action.lattice(), integer_kernel(stacked));
}

std::size_t rational_isotypic_rank(const GroupAction& action, const Character& chi) {
  const std::size_t n = action.lattice().rank();
  IntMatrix p = IntMatrix::identity(n);
  for (std::size_t k = 0; k < action.generators().size(); ++k) {
    IntMatrix factor = action.generators()[k].matrix();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) factor(i, j) = chi.values[k] * factor(i, j) + (i == j ? 1 : 0);
    p = factor * p;
  }
  return rank(p);
}

std::vector<std::vector<std::size_t>> orbit_decomposition(const GroupAction& action) {
  const std::size_t n = action.lattice().rank();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : action.generators())
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t a = find(j);
      const std::size_t b = find(g.image(j).target);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < n; ++j) groups[find(j)].push_back(j);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

IntVector character_projection(const GroupAction& action, const Character& chi, std::span<const Int> v) {
  IntVector cur(v.begin(), v.end());
  for (std::size_t k = 0; k < action.generators().size(); ++k) {
    const IntVector moved = action.generators()[k].apply(cur);
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += chi.values[k] * moved[i];
  }
  return cur;
}

}  // namespace eqsing
