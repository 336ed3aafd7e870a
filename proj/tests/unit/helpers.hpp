#pragma once

#include <initializer_list>

#include "acp/matrix.hpp"

namespace acp::test {

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const cplx& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return operator_norm(a - b); }

inline constexpr cplx I{0.0, 1.0};

}  // namespace acp::test
