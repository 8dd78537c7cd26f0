#pragma once

#include <initializer_list>
#include <string>

#include "eqsing/arith.hpp"

namespace testing {

inline eqsing::IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  eqsing::IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline eqsing::IntVector ivec(std::initializer_list<long> v) {
  eqsing::IntVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

inline std::string source_dir() { return EQSING_SOURCE_DIR; }

}  // namespace testing
