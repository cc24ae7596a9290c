#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gpdcal/common.hpp"
#include "gpdcal/jeffreys.hpp"

namespace gpdcal {

enum class ReturnKind { log_return, simple };

struct ReturnSeries {
  std::vector<double> values;
  ReturnKind kind = ReturnKind::log_return;
  int horizon = 10;
};

/// Non-overlapping horizon-length returns from an ordered price series; the
/// trailing remainder shorter than one horizon is dropped.
ReturnSeries prices_to_returns(std::span<const double> prices, int horizon = 10,
                               ReturnKind kind = ReturnKind::log_return);

/// Losses beyond a threshold: absolute values of returns below -u.
struct TailData {
  double threshold;
  std::vector<double> exceedances;  // |r| for r < -u
  std::vector<double> excesses;     // |r| - u
  std::size_t n_tail;
  std::size_t n_total;
  double f_tilde;  // n_tail / n_total
};

TailData tail_exceedances(const ReturnSeries& returns, double threshold);

struct MeanExcessPoint {
  double u;
  double me;
  double lo;
  double hi;
  std::size_t count;
};

/// Empirical mean excess with a 0.95 normal-approximation band; grid points
/// with fewer than 2 exceedances are omitted.
std::vector<MeanExcessPoint> empirical_mean_excess(
    std::span<const double> sample, std::span<const double> grid);

/// Evenly spaced grid from the sample minimum up to the third-largest point.
std::vector<double> default_mean_excess_grid(std::span<const double> sample,
                                             std::size_t points = 40);

/// GPD Lorenz curve L(u); needs kappa > -1, kappa = 0 handled by its limit.
double lorenz(double kappa, double u);

/// GPD Gini index 1/(kappa + 2); needs kappa > -1.
double gini(double kappa);

/// Tail quantile u + (sigma/kappa)(1 - ((1-eps)/f_tilde)^kappa) in loss units,
/// with the kappa -> 0 limit built in. Requires 1 - eps <= f_tilde.
double var_quantile(double epsilon, double threshold, double kappa,
                    double sigma, double f_tilde);

/// Converts a log-loss VaR to the simple-return loss fraction 1 - exp(-v).
double var_to_simple_loss(double var_log);

struct MethodRow {
  Method method;
  double kappa;
  std::optional<Interval> kappa_interval;
  std::optional<double> gini_point;
  std::optional<Interval> gini_interval;
  double sigma;
  double var_log;
  double var_simple;
  bool converged = true;
};

struct ComparisonTable {
  double threshold;
  double epsilon;
  double probability;  // interval mass / confidence level
  std::size_t n_tail;
  std::size_t n_total;
  double f_tilde;
  std::vector<MethodRow> rows;
};

/// Full peaks-over-threshold comparison: BRI is fit to the reciprocals of the
/// exceedances through the inverted-Pareto route, MLE/PWM/Jeffreys to the
/// excesses over the threshold. Each row carries the shape point and interval,
/// the Gini mapped through 1/(kappa+2), and VaR at the requested epsilon.
ComparisonTable fit_tail_all(const ReturnSeries& returns, double threshold,
                             const std::vector<Method>& methods,
                             const ChainConfig& chain_config = {},
                             double epsilon = 0.99, double probability = 0.95);

}  // namespace gpdcal
