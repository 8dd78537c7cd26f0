#include "eqsing/monodromy.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include <omp.h>

#include "eqsing/linalg.hpp"

namespace eqsing {

GroupMatrix GroupMatrix::identity(std::size_t n) {
  GroupMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

GroupMatrix GroupMatrix::from(const IntMatrix& m) {
  if (!m.square()) throw DimensionError("group matrix must be square");
  GroupMatrix g(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = to_int64(m(i, j));
  return g;
}

IntMatrix GroupMatrix::to_int_matrix() const {
  IntMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

IntVector GroupMatrix::apply(std::span<const Int> v) const {
  if (v.size() != n_) throw DimensionError("group matrix applied to vector of wrong length");
  IntVector r(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if ((*this)(i, j) != 0) r[i] += static_cast<long>((*this)(i, j)) * v[j];
  return r;
}

bool GroupMatrix::is_identity() const { return *this == identity(n_); }

GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("group matrix product: dimensions differ");
  const std::size_t n = a.dim();
  GroupMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
    }
  return c;
}

std::string format_word(const std::vector<int>& word, const std::string& letter) {
  if (word.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ' ';
    s += letter + std::to_string(std::abs(word[i]));
    if (word[i] < 0) s += "^-1";
  }
  return s;
}

bool preserves_form(const GroupMatrix& g, const IntMatrix& gram) {
  const IntMatrix m = g.to_int_matrix();
  return m.transpose() * gram * m == gram;
}

namespace {

IntMatrix reflection_matrix(const IntMatrix& gram, std::span<const Int> delta) {
  const std::size_t n = gram.rows();
  if (delta.size() != n) throw DimensionError("reflection vector has wrong length");
  const Int dd = bilinear(gram, delta, delta);
  if (dd == 0) throw MonodromyError("IsotropicCycle", "cannot reflect in a cycle with (δ,δ) = 0");
  const IntVector gd = gram * IntVector(delta.begin(), delta.end());
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Int num = 2 * gd[j];
    if (!mpz_divisible_p(num.get_mpz_t(), dd.get_mpz_t()))
      throw MonodromyError("NonIntegralReflection", "reflection in a cycle with (δ,δ) = " + dd.get_str() +
                                                        " sends basis vector " + std::to_string(j + 1) +
                                                        " to a non-integral vector");
    const Int c = num / dd;
    for (std::size_t i = 0; i < n; ++i) m(i, j) -= c * delta[i];
  }
  return m;
}

IntVector primitive(IntVector v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

}  // namespace

MonodromyElement pl_reflection(const IntLattice& form, std::span<const Int> delta) {
  return MonodromyElement{GroupMatrix::from(reflection_matrix(form.gram(), delta)), {}};
}

OrbitGenerator orbit_generator(const GroupAction& action, const Character& chi, const Sublattice& isotypic,
                               std::span<const std::size_t> orbit) {
  if (orbit.empty()) throw DimensionError("empty orbit");
  const IntMatrix& gram = action.lattice().gram();
  const std::size_t n = gram.rows();
  for (std::size_t a = 0; a < orbit.size(); ++a)
    for (std::size_t b = a + 1; b < orbit.size(); ++b)
      if (gram(orbit[a], orbit[b]) != 0)
        throw MonodromyError("OrbitNotOrthogonal", "orbit cycles " + std::to_string(orbit[a] + 1) + " and " +
                                                       std::to_string(orbit[b] + 1) + " intersect");

  IntVector rep(n, 0);
  rep[orbit.front()] = 1;
  IntVector delta_amb = character_projection(action, chi, rep);
  if (is_zero(delta_amb))
    throw MonodromyError("ProjectsToZero", "orbit of cycle " + std::to_string(orbit.front() + 1) +
                                               " has no component in the selected isotypic part");
  delta_amb = primitive(std::move(delta_amb));
  auto delta = isotypic.coordinates(delta_amb);
  if (!delta) throw Error("InternalError", "projected orbit cycle is not in the isotypic sublattice");

  IntMatrix ambient = IntMatrix::identity(n);
  for (std::size_t idx : orbit) {
    IntVector e(n, 0);
    e[idx] = 1;
    ambient = reflection_matrix(gram, e) * ambient;
  }
  const std::size_t r = isotypic.rank();
  IntMatrix restricted(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto coords = isotypic.coordinates(ambient * isotypic.basis()[k]);
    if (!coords) throw Error("InternalError", "orbit monodromy does not preserve the isotypic sublattice");
    for (std::size_t i = 0; i < r; ++i) restricted(i, k) = (*coords)[i];
  }
  MonodromyElement h = pl_reflection(isotypic.restricted(), *delta);
  if (!(h.matrix == GroupMatrix::from(restricted)))
    throw MonodromyError("GeneratorMismatch",
                         "restricted orbit monodromy is not the reflection in the projected orbit cycle");
  return OrbitGenerator{std::vector<std::size_t>(orbit.begin(), orbit.end()), std::move(delta_amb), std::move(*delta),
                        std::move(h)};
}

// ---------------------------------------------------------------------------
// Finite-order test

namespace {

using Poly = std::vector<Int>;  // coefficients from degree 0 upward

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial; nullopt if it leaves a remainder.
std::optional<Poly> divide_monic(Poly num, const Poly& den) {
  trim(num);
  if (num.size() < den.size()) return std::nullopt;
  const std::size_t dq = num.size() - den.size();
  Poly q(dq + 1, 0);
  for (std::size_t k = dq + 1; k-- > 0;) {
    const Int c = num[k + den.size() - 1];
    q[k] = c;
    if (c != 0)
      for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
  }
  for (const auto& x : num)
    if (x != 0) return std::nullopt;
  return q;
}

std::size_t euler_phi(std::size_t m) {
  std::size_t r = m;
  for (std::size_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  if (m > 1) r -= r / m;
  return r;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(std::size_t m) {
  if (m == 0) throw DimensionError("cyclotomic polynomial index must be positive");
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (std::size_t d = 1; d < m; ++d)
    if (m % d == 0) p = *divide_monic(p, cyclotomic_polynomial(d));
  return p;
}

bool has_finite_order(const GroupMatrix& g) {
  const std::size_t n = g.dim();
  Poly rest = characteristic_polynomial(g.to_int_matrix());
  std::vector<Poly> factors;
  for (std::size_t m = 1; m <= 2 * n * n + 2 && rest.size() > 1; ++m) {
    if (euler_phi(m) > n) continue;
    const Poly phi = cyclotomic_polynomial(m);
    bool used = false;
    while (auto q = divide_monic(rest, phi)) {
      rest = std::move(*q);
      used = true;
    }
    if (used) factors.push_back(phi);
  }
  trim(rest);
  if (rest.size() != 1 || rest[0] != 1) return false;
  // Diagonalizable iff the radical of the characteristic polynomial kills g.
  Poly radical{1};
  for (const auto& f : factors) {
    Poly prod(radical.size() + f.size() - 1, 0);
    for (std::size_t i = 0; i < radical.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) prod[i + j] += radical[i] * f[j];
    radical = std::move(prod);
  }
  const IntMatrix a = g.to_int_matrix();
  IntMatrix acc(n, n);
  for (std::size_t k = radical.size(); k-- > 0;) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += radical[k];
  }
  return acc == IntMatrix(n, n);
}

// ---------------------------------------------------------------------------
// Group generation

namespace {

// Flat int32 storage of group elements with an open-addressing index.
class ElementStore {
 public:
  explicit ElementStore(std::size_t n) : n_(n), slots_(1 << 10, 0) {}

  std::size_t size() const { return count_; }

  std::pair<std::uint32_t, bool> insert(const GroupMatrix& m) {
    const std::size_t nn = n_ * n_;
    scratch_.resize(nn);
    for (std::size_t k = 0; k < nn; ++k) {
      const std::int64_t x = m.entries()[k];
      if (x < std::numeric_limits<std::int32_t>::min() || x > std::numeric_limits<std::int32_t>::max())
        throw OverflowError("group element entry exceeds 32-bit storage");
      scratch_[k] = static_cast<std::int32_t>(x);
    }
    const std::uint64_t h = hash(scratch_.data());
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = h & mask;; s = (s + 1) & mask) {
      if (slots_[s] == 0) break;
      const std::int32_t* p = arena_.data() + (slots_[s] - 1) * nn;
      if (std::equal(p, p + nn, scratch_.data())) return {slots_[s] - 1, false};
    }
    if (count_ >= std::numeric_limits<std::uint32_t>::max() - 1) throw OverflowError("too many group elements");
    arena_.insert(arena_.end(), scratch_.begin(), scratch_.end());
    const auto idx = static_cast<std::uint32_t>(count_++);
    if (2 * count_ > slots_.size()) rehash();
    mask = slots_.size() - 1;
    for (std::size_t s = h & mask;; s = (s + 1) & mask)
      if (slots_[s] == 0) {
        slots_[s] = idx + 1;
        break;
      }
    return {idx, true};
  }

  GroupMatrix get(std::uint32_t idx) const {
    GroupMatrix m(n_);
    const std::int32_t* p = arena_.data() + static_cast<std::size_t>(idx) * n_ * n_;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = p[i * n_ + j];
    return m;
  }

 private:
  std::uint64_t hash(const std::int32_t* p) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      h ^= static_cast<std::uint32_t>(p[k]);
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return h;
  }

  void rehash() {
    std::vector<std::uint32_t> fresh(slots_.size() * 2, 0);
    const std::size_t mask = fresh.size() - 1;
    const std::size_t nn = n_ * n_;
    for (std::size_t idx = 0; idx < count_; ++idx) {
      for (std::size_t s = hash(arena_.data() + idx * nn) & mask;; s = (s + 1) & mask)
        if (fresh[s] == 0) {
          fresh[s] = static_cast<std::uint32_t>(idx + 1);
          break;
        }
    }
    slots_.swap(fresh);
  }

  std::size_t n_;
  std::vector<std::int32_t> arena_;
  std::vector<std::uint32_t> slots_;
  std::vector<std::int32_t> scratch_;
  std::size_t count_ = 0;
};

struct SearchSetup {
  SearchCase search = SearchCase::Trivial;
  std::vector<IntVector> kernel;
  // Integer matrix with kernel exactly the form kernel: Π·g fingerprints the
  // action of g on L/K.
  std::vector<std::vector<std::int64_t>> quotient_map;
  std::vector<bool> involution;
};

SearchSetup prepare(const IntLattice& form, std::span<const MonodromyElement> generators) {
  SearchSetup s;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i].matrix;
    if (g.dim() != form.rank()) throw DimensionError("generator dimension differs from lattice rank");
    if (!preserves_form(g, form.gram()))
      throw MonodromyError("NotIsometry", "generator " + std::to_string(i + 1) + " does not preserve the form");
    s.involution.push_back((g * g).is_identity());
  }
  if (form.rank() == 0 || generators.empty()) return s;
  const Inertia in = inertia(form);
  if (in.definite()) {
    s.search = SearchCase::Definite;
    return s;
  }
  s.search = SearchCase::Indefinite;
  if (!in.semidefinite()) return s;
  s.kernel = kernel_basis(form);
  for (const auto& g : generators)
    for (const auto& k : s.kernel)
      if (g.matrix.apply(k) != k) return s;
  s.search = SearchCase::Semidefinite;
  for (const auto& row : integer_kernel(rows_to_matrix(s.kernel, form.rank()))) {
    std::vector<std::int64_t> r;
    for (const auto& x : row) r.push_back(to_int64(x));
    s.quotient_map.push_back(std::move(r));
  }
  return s;
}

std::vector<std::int64_t> fingerprint(const SearchSetup& s, const GroupMatrix& g) {
  const std::size_t n = g.dim();
  std::vector<std::int64_t> f;
  f.reserve(s.quotient_map.size() * n);
  for (const auto& row : s.quotient_map)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = checked_add(acc, checked_mul(row[k], g(k, j)));
      f.push_back(acc);
    }
  return f;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

std::vector<int> inverse_word(const std::vector<int>& word, const std::vector<bool>& involution) {
  std::vector<int> r;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int g = *it;
    r.push_back(g > 0 && involution[static_cast<std::size_t>(g - 1)] ? g : -g);
  }
  return r;
}

// Certificate from two distinct elements with equal action on L/K.
InfiniteCertificate unipotent_certificate(const IntLattice& form, const GroupMatrix& newer,
                                          const std::vector<int>& newer_word, const GroupMatrix& older,
                                          const std::vector<int>& older_word, const std::vector<bool>& involution) {
  const auto inv = inverse(to_rational(older.to_int_matrix()));
  if (!inv) throw Error("InternalError", "group element is not invertible");
  IntMatrix inv_int(inv->rows(), inv->cols());
  for (std::size_t i = 0; i < inv->rows(); ++i)
    for (std::size_t j = 0; j < inv->cols(); ++j) {
      if ((*inv)(i, j).get_den() != 1) throw Error("InternalError", "group element inverse is not integral");
      inv_int(i, j) = (*inv)(i, j).get_num();
    }
  InfiniteCertificate cert;
  cert.kind = CertificateKind::Unipotent;
  cert.element.matrix = newer * GroupMatrix::from(inv_int);
  cert.element.word = newer_word;
  const auto tail = inverse_word(older_word, involution);
  cert.element.word.insert(cert.element.word.end(), tail.begin(), tail.end());
  const std::size_t n = form.rank();
  for (std::size_t k = 0; k < n; ++k) {
    IntVector e(n, 0);
    e[k] = 1;
    IntVector w = cert.element.matrix.apply(e);
    w[k] -= 1;
    if (!is_zero(w)) {
      cert.witness = std::move(e);
      cert.increment = std::move(w);
      break;
    }
  }
  if (!verify_certificate(form, cert)) throw Error("InternalError", "unipotent certificate failed verification");
  return cert;
}

InfiniteCertificate nontorsion_certificate(const IntLattice& form, const GroupMatrix& g, std::vector<int> word) {
  InfiniteCertificate cert;
  cert.kind = CertificateKind::NonTorsion;
  cert.element = {g, std::move(word)};
  const std::size_t n = form.rank();
  cert.witness.assign(n, 0);
  cert.increment.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    IntVector e(n, 0);
    e[k] = 1;
    IntVector w = g.apply(e);
    w[k] -= 1;
    if (!is_zero(w)) {
      cert.witness = std::move(e);
      cert.increment = std::move(w);
      break;
    }
  }
  return cert;
}

}  // namespace

FinitenessVerdict generate_group(const IntLattice& form, std::span<const MonodromyElement> generators,
                                 const GroupOptions& options) {
  const SearchSetup setup = prepare(form, generators);
  FinitenessVerdict verdict;
  verdict.search = setup.search;
  if (setup.search == SearchCase::Trivial) {
    verdict.result = FiniteGroup{1};
    return verdict;
  }
  const std::size_t n = form.rank();
  const std::size_t ngen = generators.size();
  ElementStore store(n);
  std::vector<std::uint32_t> parent;
  std::vector<int> via;
  std::unordered_map<std::vector<std::int64_t>, std::uint32_t, VecHash> by_quotient;

  auto word_of = [&](std::uint32_t idx) {
    std::vector<int> w;
    while (parent[idx] != std::numeric_limits<std::uint32_t>::max()) {
      w.push_back(via[idx]);
      idx = parent[idx];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  const GroupMatrix id = GroupMatrix::identity(n);
  store.insert(id);
  parent.push_back(std::numeric_limits<std::uint32_t>::max());
  via.push_back(0);
  if (setup.search == SearchCase::Semidefinite) by_quotient.emplace(fingerprint(setup, id), 0);

  std::vector<std::uint32_t> frontier{0};
  std::vector<GroupMatrix> products;
  while (!frontier.empty()) {
    products.assign(frontier.size() * ngen, GroupMatrix());
    const auto total = static_cast<std::ptrdiff_t>(products.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (options.parallel)
    for (std::ptrdiff_t t = 0; t < total; ++t) {
      try {
        const auto f = static_cast<std::size_t>(t) / ngen;
        const auto j = static_cast<std::size_t>(t) % ngen;
        products[static_cast<std::size_t>(t)] = store.get(frontier[f]) * generators[j].matrix;
      } catch (...) {
#pragma omp critical(eqsing_bfs_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::uint32_t> next;
    for (std::size_t t = 0; t < products.size(); ++t) {
      const auto [idx, inserted] = store.insert(products[t]);
      if (!inserted) continue;
      parent.push_back(frontier[t / ngen]);
      via.push_back(static_cast<int>(t % ngen) + 1);
      if (setup.search == SearchCase::Semidefinite) {
        const auto [it, fresh] = by_quotient.emplace(fingerprint(setup, products[t]), idx);
        if (!fresh) {
          verdict.result = unipotent_certificate(form, products[t], word_of(idx), store.get(it->second),
                                                 word_of(it->second), setup.involution);
          return verdict;
        }
      } else if (setup.search == SearchCase::Indefinite) {
        if (!has_finite_order(products[t])) {
          verdict.result = nontorsion_certificate(form, products[t], word_of(idx));
          return verdict;
        }
        if (store.size() > options.cap) {
          verdict.result = UnknownOrder{options.cap, store.size()};
          return verdict;
        }
      }
      next.push_back(idx);
    }
    frontier.swap(next);
  }
  verdict.result = FiniteGroup{store.size()};
  return verdict;
}

FinitenessVerdict generate_group_reference(const IntLattice& form, std::span<const MonodromyElement> generators,
                                           std::size_t cap) {
  const SearchSetup setup = prepare(form, generators);
  FinitenessVerdict verdict;
  verdict.search = setup.search;
  if (setup.search == SearchCase::Trivial) {
    verdict.result = FiniteGroup{1};
    return verdict;
  }
  struct Node {
    GroupMatrix m;
    std::vector<int> word;
  };
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::map<std::vector<std::int64_t>, std::size_t> by_quotient;
  std::vector<Node> nodes;
  std::deque<std::size_t> queue;

  nodes.push_back({GroupMatrix::identity(form.rank()), {}});
  seen.emplace(nodes[0].m.entries(), 0);
  if (setup.search == SearchCase::Semidefinite) by_quotient.emplace(fingerprint(setup, nodes[0].m), 0);
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < generators.size(); ++j) {
      GroupMatrix prod = nodes[cur].m * generators[j].matrix;
      if (seen.count(prod.entries())) continue;
      std::vector<int> word = nodes[cur].word;
      word.push_back(static_cast<int>(j) + 1);
      const std::size_t idx = nodes.size();
      seen.emplace(prod.entries(), idx);
      if (setup.search == SearchCase::Semidefinite) {
        auto fp = fingerprint(setup, prod);
        if (auto it = by_quotient.find(fp); it != by_quotient.end()) {
          verdict.result = unipotent_certificate(form, prod, word, nodes[it->second].m, nodes[it->second].word,
                                                 setup.involution);
          return verdict;
        }
        by_quotient.emplace(std::move(fp), idx);
      } else if (setup.search == SearchCase::Indefinite) {
        if (!has_finite_order(prod)) {
          verdict.result = nontorsion_certificate(form, prod, word);
          return verdict;
        }
        if (nodes.size() + 1 > cap) {
          verdict.result = UnknownOrder{cap, nodes.size() + 1};
          return verdict;
        }
      }
      nodes.push_back({std::move(prod), std::move(word)});
      queue.push_back(idx);
    }
  }
  verdict.result = FiniteGroup{nodes.size()};
  return verdict;
}

bool verify_certificate(const IntLattice& form, const InfiniteCertificate& cert) {
  const GroupMatrix& g = cert.element.matrix;
  const std::size_t n = form.rank();
  if (g.dim() != n || !preserves_form(g, form.gram())) return false;
  if (cert.kind == CertificateKind::NonTorsion) return !has_finite_order(g);

  IntMatrix nil = g.to_int_matrix();
  for (std::size_t i = 0; i < n; ++i) nil(i, i) -= 1;
  if (nil == IntMatrix(n, n)) return false;
  if (!(nil * nil == IntMatrix(n, n))) return false;
  if (cert.witness.size() != n || cert.increment.size() != n) return false;
  if (nil * cert.witness != cert.increment || is_zero(cert.increment)) return false;
  return is_zero(form.apply(cert.increment));
}

std::optional<std::size_t> power_law_check(const GroupMatrix& g, std::span<const Int> v, std::span<const Int> w,
                                           std::size_t s_max) {
  if (v.size() != g.dim() || w.size() != g.dim()) throw DimensionError("power_law_check: vector length mismatch");
  IntVector cur(v.begin(), v.end());
  for (std::size_t s = 1; s <= s_max; ++s) {
    cur = g.apply(cur);
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (cur[i] != v[i] + static_cast<long>(s) * w[i]) return s;
  }
  return std::nullopt;
}

}  // namespace eqsing
