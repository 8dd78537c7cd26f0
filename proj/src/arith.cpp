#include "eqsing/arith.hpp"

#include <limits>

namespace eqsing {

Int bilinear(const IntMatrix& gram, std::span<const Int> u, std::span<const Int> v) {
  if (u.size() != gram.rows() || v.size() != gram.cols()) throw DimensionError("bilinear: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) row += gram(i, j) * v[j];
    s += u[i] * row;
  }
  return s;
}

bool is_zero(std::span<const Int> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

IntVector to_int_vector(std::span<const long> v) {
  IntVector r;
  r.reserve(v.size());
  for (long x : v) r.emplace_back(x);
  return r;
}

std::string join(std::span<const Int> v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].get_str();
  }
  return s;
}

std::int64_t to_int64(const Int& z) {
  if (!z.fits_slong_p()) throw OverflowError("integer does not fit in 64 bits: " + z.get_str());
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return z.get_si();
}

}  // namespace eqsing
