#pragma once

#include <optional>
#include <span>
#include <utility>

#include "gpdcal/common.hpp"

namespace gpdcal {

/// Symmetric 2x2 covariance of (kappa, sigma).
struct Matrix2 {
  double kk;
  double ks;
  double ss;
  bool positive_semidefinite() const {
    return kk >= 0.0 && ss >= 0.0 && kk * ss - ks * ks >= 0.0;
  }
};

struct FitResult {
  double kappa;
  double sigma;
  /// Asymptotic covariance; absent outside the estimator's validity region.
  std::optional<Matrix2> covariance;
  std::optional<Interval> ci_kappa;
  std::optional<Interval> ci_sigma;
  double confidence = 0.95;
  Method method = Method::mle;
  bool converged = true;
  /// Maximized log-likelihood (MLE only).
  std::optional<double> objective;
};

/// GPD log-likelihood: -n log sigma + (1/kappa - 1) sum log(1 - kappa x/sigma)
/// with the exponential form -n log sigma - n xbar/sigma at kappa = 0.
/// Returns -inf outside the support (kappa > 0 with max x beyond sigma/kappa)
/// rather than failing, so optimizers can probe freely.
double gpd_loglik(double kappa, double sigma, std::span<const double> sample);

/// Numerical GPD maximum likelihood: BFGS with a Wolfe line search on
/// (kappa, log sigma), kappa capped at 1, support handled by the -inf
/// barrier. Default start is the PWM fit when admissible. Non-convergence
/// after restarts returns the best point with converged = false. Covariance
/// (1/n) [[(1-k)^2, s(1-k)], [s(1-k), 2 s^2 (1-k)]] reported for kappa < 1/2.
FitResult gpd_mle(std::span<const double> sample,
                  std::optional<std::pair<double, double>> init = {},
                  double confidence = 0.95);

/// Probability-weighted-moments fit with plotting positions (i - 0.35)/n.
/// Covariance reported on (-1/2, 1/2), where the asymptotic matrix is
/// positive definite.
FitResult pwm_fit(std::span<const double> sample, double confidence = 0.95);

/// Moment inversion behind the PWM estimator: kappa = mu0/(mu0 - 2 mu1) - 2,
/// sigma = 2 mu0 mu1 / (mu0 - 2 mu1). estimator_error when mu0 == 2 mu1.
std::pair<double, double> pwm_from_moments(double mu0, double mu1);

}  // namespace gpdcal
