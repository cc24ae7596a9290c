#include "gpdcal/special.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gpdcal/errors.hpp"

namespace gpdcal {

namespace {
void check_gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw parameter_error("gamma law requires shape > 0 and rate > 0");
  }
}
}  // namespace

double gamma_log_pdf(double x, double shape, double rate) {
  check_gamma(shape, rate);
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) +
         (shape - 1.0) * std::log(x) - rate * x;
}

double gamma_pdf(double x, double shape, double rate) {
  if (!(x > 0.0)) {
    check_gamma(shape, rate);
    return 0.0;
  }
  return std::exp(gamma_log_pdf(x, shape, rate));
}

double gamma_cdf(double x, double shape, double rate) {
  check_gamma(shape, rate);
  if (!(x > 0.0)) return 0.0;
  return boost::math::gamma_p(shape, rate * x);
}

double gamma_quantile(double p, double shape, double rate) {
  check_gamma(shape, rate);
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("gamma_quantile: p must lie in (0, 1)");
  }
  return boost::math::gamma_p_inv(shape, p) / rate;
}

double inv_gamma_cdf(double x, double shape, double scale) {
  check_gamma(shape, scale);
  if (!(x > 0.0)) return 0.0;
  // P(1/G <= x) = P(G >= 1/x) with G ~ Gamma(shape, rate = 1/scale)... the
  // scale parameter of the inverted law is the rate of the reciprocal Gamma.
  return boost::math::gamma_q(shape, scale / x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_cdf_c(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("normal_quantile: p must lie in (0, 1)");
  }
  static const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
  return boost::math::quantile(std_normal, p);
}

double normal_log_pdf(double z) {
  constexpr double half_log_two_pi = 0.9189385332046727417803297;
  return -0.5 * z * z - half_log_two_pi;
}

}  // namespace gpdcal
