#include "eqsing/linalg.hpp"

#include <algorithm>
#include <utility>

namespace eqsing {

namespace {

void axpy_row(IntVector& dst, const Int& scale, const IntVector& src) {
  if (scale == 0) return;
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += scale * src[j];
}

// Unimodular 2x2 combination clearing column c of `low` against `high`.
void clear_against(IntVector& high, IntVector& low, std::size_t c) {
  Int g, s, t;
  const Int a = high[c];
  const Int b = low[c];
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const Int a_g = a / g;
  const Int b_g = b / g;
  for (std::size_t j = 0; j < high.size(); ++j) {
    Int h = s * high[j] + t * low[j];
    Int l = a_g * low[j] - b_g * high[j];
    high[j] = std::move(h);
    low[j] = std::move(l);
  }
}

// Echelonizes rows using pivots among the first `limit` columns. Returns the
// number of pivot rows; rows past that index are zero on those columns.
std::size_t echelonize(std::vector<IntVector>& rows, std::size_t limit, bool reduce_above) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < rows.size(); ++c) {
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (rows[i][c] != 0) clear_against(rows[r], rows[i], c);
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    if (reduce_above) {
      for (std::size_t i = 0; i < r; ++i) {
        if (rows[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        axpy_row(rows[i], -q, rows[r]);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows, std::size_t cols) {
  for (const auto& row : rows)
    if (row.size() != cols) throw DimensionError("hermite_normal_form: row length mismatch");
  const std::size_t r = echelonize(rows, cols, true);
  rows.resize(r);
  return rows;
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Row j of [a^T | I]; unimodular row operations keep the right block a
  // basis of Z^n, and rows whose left block vanishes span the kernel.
  std::vector<IntVector> aug(n, IntVector(m + n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) aug[j][i] = a(i, j);
    aug[j][m + j] = 1;
  }
  const std::size_t r = echelonize(aug, m, false);
  std::vector<IntVector> kernel;
  for (std::size_t j = r; j < n; ++j) kernel.emplace_back(aug[j].begin() + static_cast<std::ptrdiff_t>(m), aug[j].end());
  return hermite_normal_form(std::move(kernel), n);
}

IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("rows_to_matrix: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  const auto orthogonal = integer_kernel(rows_to_matrix(vectors, dim));
  if (orthogonal.empty()) {
    std::vector<IntVector> id(dim, IntVector(dim, 0));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
    return id;
  }
  return integer_kernel(rows_to_matrix(orthogonal, dim));
}

std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rat f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols) {
  return rank(rows_to_matrix(rows, cols));
}

std::optional<RatMatrix> inverse(RatMatrix m) {
  if (!m.square()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rat piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<Int> characteristic_polynomial(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("characteristic_polynomial: matrix is not square");
  // Faddeev-LeVerrier; exact over Q and the coefficients come out integral.
  const std::size_t n = a.rows();
  const RatMatrix ar = to_rational(a);
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  RatMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = ar * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const RatMatrix amk = ar * mk;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  std::vector<Int> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (c[i].get_den() != 1) throw Error("InternalError", "characteristic polynomial is not integral");
    out[i] = c[i].get_num();
  }
  return out;
}

}  // namespace eqsing
