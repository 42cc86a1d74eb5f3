#pragma once

// Matrices typed in from the published worked examples, used as oracles
// independent of the library's own constructors.

#include <string>
#include <vector>

#include "singpencil/matcore.hpp"

namespace fixtures {

using singpencil::Matrix;

inline Matrix from_rows(int n, std::initializer_list<double> values) {
  Matrix m(n, n);
  int i = 0;
  for (const double v : values) {
    m(i / n, i % n) = v;
    ++i;
  }
  return m;
}

inline Matrix hmp_a() {
  return from_rows(8, {-1, -1, -1, -1, -1, -1, -1, 0,  //
                       1,  0,  0,  0,  0,  0,  0,  0,   //
                       1,  2,  1,  1,  1,  1,  1,  0,   //
                       1,  2,  3,  3,  3,  3,  3,  0,   //
                       1,  2,  3,  2,  2,  2,  2,  0,   //
                       1,  2,  3,  4,  3,  3,  3,  -1,  //
                       1,  2,  3,  4,  5,  5,  4,  1,   //
                       0,  0,  0,  0,  2,  2,  1,  2});
}

inline Matrix hmp_b() {
  return from_rows(8, {-2, -2, -2, -2, -2, -2, -2, 0,  //
                       2,  -1, -1, -1, -1, -1, -1, 0,  //
                       2,  5,  5,  5,  5,  5,  5,  0,   //
                       2,  5,  5,  4,  4,  4,  4,  0,   //
                       2,  5,  5,  6,  5,  5,  5,  -1,  //
                       2,  5,  5,  6,  7,  7,  7,  1,   //
                       2,  5,  5,  6,  7,  6,  6,  1,   //
                       0,  0,  0,  0,  0,  -1, -1, 0});
}

// Kronecker structures used as the generated test corpus.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> specs = {
      "J1(1/2),J1(1/3),N1,L0,L1,LT0,LT2",
      "J1(2),L0,LT0",
      "J1(1),J1(-1),N2,L1,LT1",
      "J1(0.5),J1(1+1i),J1(1-1i),L0,L2,LT1,LT0",
      "J1(3),J2(-2),N1,L1,LT2",
      "J1(-0.5),J1(0.25),J1(4),L0,L0,L0,LT0,LT0,LT0",
      "J1(2i),N1,L3,LT1",
      "J1(1),J1(2),J1(3),N1,L1,L1,LT1,LT1",
      "J1(0),J1(10),L2,LT0",
      "J1(-1),J1(1/3),N2,N1,L0,L1,L2,LT0,LT1,LT1",
  };
  return specs;
}

}  // namespace fixtures
