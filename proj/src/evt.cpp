#include "gpdcal/evt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpdcal/classical.hpp"
#include "gpdcal/errors.hpp"
#include "gpdcal/intrinsic.hpp"
#include "gpdcal/stats.hpp"

namespace gpdcal {

namespace {

/// Gini is decreasing in kappa, so interval endpoints swap under the map.
Interval gini_interval_from_kappa(const Interval& k) {
  return Interval{gini(k.upper), gini(k.lower)};
}

MethodRow frequentist_row(Method method, const FitResult& fit, double u,
                          double f_tilde, double epsilon) {
  MethodRow row;
  row.method = method;
  row.kappa = fit.kappa;
  row.kappa_interval = fit.ci_kappa;
  row.sigma = fit.sigma;
  row.converged = fit.converged;
  if (fit.kappa > -1.0) {
    row.gini_point = gini(fit.kappa);
    if (fit.ci_kappa && fit.ci_kappa->lower > -1.0) {
      row.gini_interval = gini_interval_from_kappa(*fit.ci_kappa);
    }
  }
  row.var_log = var_quantile(epsilon, u, fit.kappa, fit.sigma, f_tilde);
  row.var_simple = var_to_simple_loss(row.var_log);
  return row;
}

}  // namespace

ReturnSeries prices_to_returns(std::span<const double> prices, int horizon,
                               ReturnKind kind) {
  if (horizon < 1) throw parameter_error("prices_to_returns: horizon must be >= 1");
  if (prices.size() < static_cast<std::size_t>(horizon) + 1) {
    throw data_error("prices_to_returns: need at least horizon + 1 prices");
  }
  for (double p : prices) {
    if (!(p > 0.0)) {
      throw data_error("prices_to_returns: prices must be strictly positive");
    }
  }
  ReturnSeries out;
  out.kind = kind;
  out.horizon = horizon;
  const std::size_t h = static_cast<std::size_t>(horizon);
  for (std::size_t i = 0; i + h < prices.size(); i += h) {
    const double ratio = prices[i + h] / prices[i];
    out.values.push_back(kind == ReturnKind::log_return ? std::log(ratio)
                                                        : ratio - 1.0);
  }
  return out;
}

TailData tail_exceedances(const ReturnSeries& returns, double threshold) {
  if (!(threshold > 0.0)) {
    throw parameter_error("tail_exceedances: threshold must be positive");
  }
  TailData tail;
  tail.threshold = threshold;
  tail.n_total = returns.values.size();
  for (double r : returns.values) {
    if (r < -threshold) {
      tail.exceedances.push_back(-r);
      tail.excesses.push_back(-r - threshold);
    }
  }
  tail.n_tail = tail.exceedances.size();
  if (tail.n_tail == 0) {
    throw empty_tail_error(
        "tail_exceedances: no returns below the negative threshold");
  }
  tail.f_tilde =
      static_cast<double>(tail.n_tail) / static_cast<double>(tail.n_total);
  return tail;
}

std::vector<MeanExcessPoint> empirical_mean_excess(
    std::span<const double> sample, std::span<const double> grid) {
  if (grid.empty()) throw data_error("empirical_mean_excess: empty grid");
  if (sample.empty()) throw data_error("empirical_mean_excess: empty sample");
  std::vector<MeanExcessPoint> out;
  std::vector<double> excess;
  for (double u : grid) {
    excess.clear();
    for (double x : sample) {
      if (x > u) excess.push_back(x - u);
    }
    if (excess.size() < 2) continue;
    const double m = mean(excess);
    const double half =
        1.96 * std::sqrt(variance(excess) / static_cast<double>(excess.size()));
    out.push_back({u, m, m - half, m + half, excess.size()});
  }
  return out;
}

std::vector<double> default_mean_excess_grid(std::span<const double> sample,
                                             std::size_t points) {
  if (sample.size() < 3) {
    throw data_error("default_mean_excess_grid: need at least 3 observations");
  }
  if (points < 2) throw parameter_error("default_mean_excess_grid: points >= 2");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted[sorted.size() - 3];
  std::vector<double> grid;
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(points - 1));
  }
  return grid;
}

double lorenz(double kappa, double u) {
  if (kappa <= -1.0) {
    throw moment_error("lorenz: requires kappa > -1 (mean must exist)");
  }
  if (!(u >= 0.0 && u <= 1.0)) {
    throw domain_error("lorenz: u must lie in [0, 1]");
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double l = std::log1p(-u);
  if (std::abs(kappa) < 1e-6) {
    // series around kappa = 0
    return u + (1.0 - u) * l + 0.5 * kappa * (1.0 - u) * l * l;
  }
  return (std::exp((kappa + 1.0) * l) + (kappa + 1.0) * u - 1.0) / kappa;
}

double gini(double kappa) {
  if (kappa <= -1.0) {
    throw moment_error("gini: requires kappa > -1 (mean must exist)");
  }
  return 1.0 / (kappa + 2.0);
}

double var_quantile(double epsilon, double threshold, double kappa,
                    double sigma, double f_tilde) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw domain_error("var_quantile: epsilon must lie in (0, 1)");
  }
  if (!(threshold > 0.0)) {
    throw parameter_error("var_quantile: threshold must be positive");
  }
  if (!(sigma > 0.0)) throw parameter_error("var_quantile: sigma must be positive");
  if (!(f_tilde > 0.0 && f_tilde <= 1.0)) {
    throw parameter_error("var_quantile: f_tilde must lie in (0, 1]");
  }
  if (1.0 - epsilon > f_tilde) {
    throw out_of_tail_error(
        "var_quantile: quantile lies below the modeled tail (1 - epsilon > "
        "f_tilde)");
  }
  const double log_ratio = std::log((1.0 - epsilon) / f_tilde);
  if (kappa == 0.0) return threshold - sigma * log_ratio;
  return threshold - sigma * std::expm1(kappa * log_ratio) / kappa;
}

double var_to_simple_loss(double var_log) { return -std::expm1(-var_log); }

ComparisonTable fit_tail_all(const ReturnSeries& returns, double threshold,
                             const std::vector<Method>& methods,
                             const ChainConfig& chain_config, double epsilon,
                             double probability) {
  if (methods.empty()) {
    throw parameter_error("fit_tail_all: at least one method required");
  }
  TailData tail = tail_exceedances(returns, threshold);

  ComparisonTable table;
  table.threshold = threshold;
  table.epsilon = epsilon;
  table.probability = probability;
  table.n_tail = tail.n_tail;
  table.n_total = tail.n_total;
  table.f_tilde = tail.f_tilde;

  for (Method method : methods) {
    switch (method) {
      case Method::mle:
        table.rows.push_back(frequentist_row(
            method, gpd_mle(tail.excesses, {}, probability), threshold,
            tail.f_tilde, epsilon));
        break;
      case Method::pwm:
        table.rows.push_back(frequentist_row(
            method, pwm_fit(tail.excesses, probability), threshold,
            tail.f_tilde, epsilon));
        break;
      case Method::bri: {
        // Inverted-Pareto route: reciprocals of the exceedances.
        std::vector<double> recip(tail.exceedances.size());
        std::transform(tail.exceedances.begin(), tail.exceedances.end(),
                       recip.begin(), [](double y) { return 1.0 / y; });
        const SuffStats stats = suff_stats(recip);
        const IpMle mle = ip_mle(stats);
        const int n = static_cast<int>(stats.n);
        BriFit ip_fit =
            bri_fit_shape(n, mle.kappa_hat, probability, FitMode::numeric);
        BriFit gpd_fit = to_gpd_shape(ip_fit);

        MethodRow row;
        row.method = method;
        row.kappa = gpd_fit.point;
        row.kappa_interval = gpd_fit.interval;
        if (row.kappa > -1.0) {
          row.gini_point = gini(row.kappa);
          if (gpd_fit.interval.lower > -1.0) {
            row.gini_interval = gini_interval_from_kappa(gpd_fit.interval);
          }
        }
        // Pareto scale of the exceedances from the intrinsic scale estimate,
        // then the GPD scale of the excesses, moved from the fitted Pareto
        // edge to the working threshold by the memoryless property.
        const double sigma_ip = bri_scale(stats, FitMode::approximation);
        const double beta_bar = 1.0 / sigma_ip;
        const double sigma_at_edge = beta_bar / ip_fit.point;
        row.sigma = sigma_at_edge + gpd_fit.point * (beta_bar - threshold);
        row.var_log =
            var_quantile(epsilon, threshold, row.kappa, row.sigma, tail.f_tilde);
        row.var_simple = var_to_simple_loss(row.var_log);
        table.rows.push_back(row);
        break;
      }
      case Method::jeffreys: {
        ChainOutput chain = run_chain(tail.excesses, chain_config);
        PosteriorSummary summary =
            summarize(chain, probability,
                      PotContext{threshold, tail.f_tilde, epsilon});
        MethodRow row;
        row.method = method;
        row.kappa = summary.kappa.median;
        row.kappa_interval = summary.kappa.interval;
        if (summary.gini) {
          row.gini_point = summary.gini->median;
          row.gini_interval = summary.gini->interval;
        }
        row.sigma = summary.sigma.median;
        row.var_log = summary.var->median;
        row.var_simple = var_to_simple_loss(row.var_log);
        table.rows.push_back(row);
        break;
      }
    }
  }
  return table;
}

}  // namespace gpdcal
