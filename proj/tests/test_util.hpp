#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

// Oracles shared by the test suites. These are deliberately independent of
// the library's own evaluation paths: quadrature instead of closed forms,
// bisection instead of analytic inverses.
namespace testutil {

inline double integrate(const std::function<double(double)>& f, double a,
                        double b) {
  boost::math::quadrature::tanh_sinh<double> quad;
  if (std::isinf(b)) {
    // Split at a finite cut and map the tail through u = 1/x so slowly
    // decaying power tails become integrable endpoint singularities.
    const double cut = a + 100.0;
    double head = quad.integrate(f, a, cut, 1e-12);
    double tail = quad.integrate(
        [&](double u) {
          double fx = f(1.0 / u);
          return fx == 0.0 ? 0.0 : fx / (u * u);
        },
        0.0, 1.0 / cut, 1e-12);
    return head + tail;
  }
  return quad.integrate(f, a, b, 1e-12);
}

/// Quantile by bisection on a monotone CDF.
inline double invert_cdf(const std::function<double(double)>& cdf, double p,
                         double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++i) {
    double m = 0.5 * (lo + hi);
    (cdf(m) < p ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace testutil
