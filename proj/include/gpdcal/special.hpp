#pragma once

namespace gpdcal {

// Thin wrappers around well-tested special-function implementations; every
// distribution-specific formula in the library goes through these rather than
// ad-hoc series.

double gamma_pdf(double x, double shape, double rate);
double gamma_log_pdf(double x, double shape, double rate);
double gamma_cdf(double x, double shape, double rate);
double gamma_quantile(double p, double shape, double rate);

/// CDF of the inverted Gamma with given shape and scale: P(1/G <= x) for
/// G ~ Gamma(shape, rate = scale).
double inv_gamma_cdf(double x, double shape, double scale);

double normal_cdf(double z);
/// Upper tail P(Z > z), accurate for large z.
double normal_cdf_c(double z);
double normal_quantile(double p);
double normal_log_pdf(double z);

}  // namespace gpdcal
