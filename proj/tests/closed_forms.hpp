#pragma once

#include <map>

#include "confext/exactnum.hpp"

namespace confext_tests {

using confext::Rational;
using confext::Scalar;

// Closed forms of a_4..a_8 in terms of a_2, a_3 and the earlier coefficients,
// written out term by term as an independent check of the recursion.
inline std::map<int, Scalar> closed_forms(int n, const Scalar& x, std::map<int, Scalar> a) {
  for (int k = n + 1; k <= 8; ++k) a[k] = Scalar(0);
  auto q = [](long p, long r) { return Scalar(Rational(p, r)); };
  Scalar N(n);
  auto f = [&](int k) { return N - Scalar(k); };
  std::map<int, Scalar> out;
  out[4] = q(1, 12) * f(2) * f(3) * (f(4) + Scalar(3) * x) * a[2] - q(1, 4) * f(3) * (f(4) + Scalar(2) * x) * a[3];
  out[5] = q(1, 120) * f(2) * f(3) * f(4) * (f(5) + Scalar(4) * x) * a[2] -
           q(1, 10) * f(4) * (f(5) + Scalar(2) * x) * a[4];
  if (n == 6)
    out[6] = x * (Scalar(3) * a[2] + a[3] - a[4] - Scalar(3) * a[5]) / Scalar(32);
  else
    out[6] = (q(1, 40) * f(2) * f(3) * f(4) * f(5) * (f(6) + Scalar(5) * x) * a[2] +
              q(1, 24) * f(3) * f(4) * f(5) * (f(6) + Scalar(4) * x) * a[3] -
              q(1, 6) * f(4) * f(5) * (f(6) + Scalar(3) * x) * a[4] -
              q(3, 2) * f(5) * (f(6) + Scalar(2) * x) * a[5]) /
             Scalar(32);
  out[7] = (q(1, 180) * f(2) * f(3) * f(4) * f(5) * f(6) * (f(7) + Scalar(6) * x) * a[2] +
            q(1, 60) * f(3) * f(4) * f(5) * f(6) * (f(7) + Scalar(5) * x) * a[3] -
            q(1, 3) * f(5) * f(6) * (f(7) + Scalar(3) * x) * a[5] - Scalar(2) * f(6) * (f(7) + Scalar(2) * x) * a[6]) /
           Scalar(84);
  if (n == 8)
    out[8] = x * (Scalar(5) * a[2] + Scalar(3) * a[3] + a[4] - a[5] - Scalar(3) * a[6] - Scalar(5) * a[7]) /
             Scalar(198);
  else
    out[8] = (q(1, 1008) * f(2) * f(3) * f(4) * f(5) * f(6) * f(7) * (f(8) + Scalar(7) * x) * a[2] +
              q(1, 240) * f(3) * f(4) * f(5) * f(6) * f(7) * (f(8) + Scalar(6) * x) * a[3] +
              q(1, 120) * f(4) * f(5) * f(6) * f(7) * (f(8) + Scalar(5) * x) * a[4] -
              q(1, 24) * f(5) * f(6) * f(7) * (f(8) + Scalar(4) * x) * a[5] -
              q(1, 2) * f(6) * f(7) * (f(8) + Scalar(3) * x) * a[6] - q(5, 2) * f(7) * (f(8) + Scalar(2) * x) * a[7]) /
             Scalar(198);
  return out;
}

}  // namespace confext_tests
