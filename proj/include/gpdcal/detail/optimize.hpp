#pragma once

#include <cmath>
#include <utility>

#include "gpdcal/errors.hpp"

namespace gpdcal::detail {

struct ScalarMin {
  double x;
  double fx;
};

/// Golden-section minimization of a unimodal f on [a, b] to absolute
/// x-tolerance xtol. One function evaluation per iteration after setup.
template <class F>
ScalarMin golden_minimize(F&& f, double a, double b, double xtol) {
  if (!(a < b)) throw domain_error("golden_minimize: empty bracket");
  constexpr double invphi = 0.6180339887498948482;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? ScalarMin{x1, f1} : ScalarMin{x2, f2};
}

/// Bisection root of f on [a, b]; requires f(a) and f(b) of opposite sign
/// (zero endpoint values count as roots).
template <class F>
double bisect_root(F&& f, double a, double b, double xtol, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    throw domain_error("bisect_root: no sign change over the bracket");
  }
  for (int i = 0; i < max_iter && b - a > xtol; ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace gpdcal::detail
