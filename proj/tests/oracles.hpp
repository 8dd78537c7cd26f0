#pragma once

// Independent checks used by the unit and acceptance tests. Nothing here
// calls into the library's linear algebra.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Mat = std::vector<std::vector<long>>;

struct Signs {
  int plus = 0;
  int zero = 0;
  int minus = 0;
  bool operator==(const Signs&) const = default;
};

// Classification of v^T G v over all nonzero integer vectors in [-r, r]^n.
struct BoxSigns {
  bool any_positive = false;
  bool any_negative = false;
  bool any_zero = false;
};

inline BoxSigns box_signs(const Mat& g, int r = 5) {
  const std::size_t n = g.size();
  BoxSigns out;
  std::vector<long> v(n, -r);
  while (true) {
    bool nonzero = false;
    for (long x : v) nonzero = nonzero || x != 0;
    if (nonzero) {
      long q = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += v[i] * g[i][j] * v[j];
      if (q > 0) out.any_positive = true;
      if (q < 0) out.any_negative = true;
      if (q == 0) out.any_zero = true;
    }
    std::size_t i = 0;
    while (i < n && v[i] == r) v[i++] = -r;
    if (i == n) break;
    ++v[i];
  }
  return out;
}

// det by fraction-free (Bareiss) elimination.
inline mpz_class det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Coefficients (t^0 upward) of det(G - tI), by evaluation at t = 0..n and
// Lagrange interpolation.
inline std::vector<mpq_class> charpoly(const Mat& g) {
  const std::size_t n = g.size();
  std::vector<mpq_class> coeffs(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j] - (i == j ? long(k) : 0L);
    const mpz_class value = det(a);
    // basis polynomial prod_{j != k} (t - j) / (k - j)
    std::vector<mpq_class> basis{1};
    mpq_class denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<mpq_class> next(basis.size() + 1, 0);
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * long(j);
      }
      basis = next;
      denom *= long(k) - long(j);
    }
    for (std::size_t d = 0; d <= n; ++d) coeffs[d] += basis[d] * value / denom;
  }
  return coeffs;
}

// Eigenvalue sign counts of a symmetric matrix: all roots are real, so
// Descartes' rule of signs is exact.
inline Signs descartes_signs(const Mat& g) {
  auto c = charpoly(g);
  Signs s;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  s.zero = static_cast<int>(low);
  auto changes = [](const std::vector<mpq_class>& p) {
    int count = 0, last = 0;
    for (const auto& x : p) {
      const int sg = sgn(x);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  std::vector<mpq_class> p(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());
  s.plus = changes(p);
  for (std::size_t d = 1; d < p.size(); d += 2) p[d] = -p[d];
  s.minus = changes(p);
  return s;
}

// Closure of a set of integer matrices by depth-first search with a std::set.
inline std::size_t naive_closure(const std::vector<Mat>& gens, std::size_t limit = 100000) {
  const std::size_t n = gens.front().size();
  Mat id(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::set<Mat> seen{id};
  std::vector<Mat> stack{id};
  while (!stack.empty()) {
    Mat cur = stack.back();
    stack.pop_back();
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
      Mat p(n, std::vector<long>(n, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j) p[i][j] += (*it)[i][k] * cur[k][j];
      if (seen.insert(p).second) {
        if (seen.size() > limit) return 0;
        stack.push_back(p);
      }
    }
  }
  return seen.size();
}

inline std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Closed-form Weyl group orders.
inline std::uint64_t weyl_A(int k) { return factorial(k + 1); }
inline std::uint64_t weyl_BC(int k) { return (std::uint64_t{1} << k) * factorial(k); }
inline std::uint64_t weyl_D(int k) { return (std::uint64_t{1} << (k - 1)) * factorial(k); }
inline std::uint64_t weyl_E6() { return 51840; }
inline std::uint64_t weyl_F4() { return 1152; }

// Brieskorn-Pham germ sum x_i^{a_i}: the local algebra has monomial basis
// prod x_i^{e_i}, 0 <= e_i <= a_i - 2. Returns counts keyed by the parity
// class computed by `cls`.
inline std::map<std::size_t, std::size_t> brieskorn_classes(const std::vector<int>& a,
                                                            const std::function<std::size_t(const std::vector<int>&)>& cls) {
  std::map<std::size_t, std::size_t> out;
  std::vector<int> e(a.size(), 0);
  while (true) {
    out[cls(e)]++;
    std::size_t i = 0;
    while (i < a.size() && e[i] == a[i] - 2) e[i++] = 0;
    if (i == a.size()) break;
    ++e[i];
  }
  return out;
}

}  // namespace oracle
