#include "gpdcal/jeffreys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/gamma.hpp>

#include "gpdcal/classical.hpp"
#include "gpdcal/errors.hpp"
#include "gpdcal/evt.hpp"
#include "gpdcal/rng.hpp"
#include "gpdcal/special.hpp"
#include "gpdcal/stats.hpp"

namespace gpdcal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Inverse-CDF draw from a Gaussian(mu, sd) truncated to (lo, hi).
double truncated_normal_draw(double mu, double sd, double lo, double hi,
                             RandomStream& rng) {
  const double p_lo = std::isinf(lo) ? 0.0 : normal_cdf((lo - mu) / sd);
  const double p_hi = std::isinf(hi) ? 1.0 : normal_cdf((hi - mu) / sd);
  double p = p_lo + rng.uniform01() * (p_hi - p_lo);
  p = std::clamp(p, 1e-300, 1.0 - 1e-16);
  return mu + sd * normal_quantile(p);
}

/// Log-density of the truncated Gaussian; the normalization is needed only
/// when the truncation window moves between the forward and reverse proposal.
double truncated_normal_log_pdf(double x, double mu, double sd, double lo,
                                double hi) {
  if (x <= lo || x >= hi) return -kInf;
  const double z = (x - mu) / sd;
  double norm;
  if (std::isinf(hi)) {
    norm = normal_cdf_c((lo - mu) / sd);
  } else if (std::isinf(lo)) {
    norm = normal_cdf((hi - mu) / sd);
  } else {
    norm = normal_cdf((hi - mu) / sd) - normal_cdf((lo - mu) / sd);
  }
  if (!(norm > 0.0)) return -kInf;
  return normal_log_pdf(z) - std::log(sd) - std::log(norm);
}

double gamma_draw(double shape, double rate, RandomStream& rng) {
  static thread_local double cached_shape = -1.0;
  static thread_local boost::math::gamma_distribution<double> dist(1.0, 1.0);
  if (shape != cached_shape) {
    dist = boost::math::gamma_distribution<double>(shape, 1.0);
    cached_shape = shape;
  }
  return boost::math::quantile(dist, rng.uniform01()) / rate;
}

FunctionalSummary summarize_draws(std::vector<double> draws, double p,
                                  std::size_t skipped) {
  std::sort(draws.begin(), draws.end());
  FunctionalSummary s;
  s.median = median_sorted(draws);
  s.mean = mean(draws);
  s.interval = Interval{quantile_sorted(draws, 0.5 * (1.0 - p)),
                        quantile_sorted(draws, 0.5 * (1.0 + p))};
  s.skipped = skipped;
  return s;
}

}  // namespace

double log_prior(double kappa, double sigma) {
  if (!(kappa < 0.5) || !(sigma > 0.0)) return -kInf;
  return -std::log(sigma) - std::log1p(-kappa) -
         0.5 * std::log1p(-2.0 * kappa);
}

double log_posterior(double kappa, double sigma,
                     std::span<const double> sample) {
  const double lp = log_prior(kappa, sigma);
  if (lp == -kInf) return -kInf;
  return lp + gpd_loglik(kappa, sigma, sample);
}

ChainOutput run_chain(std::span<const double> sample,
                      const ChainConfig& config) {
  if (sample.size() < 2) {
    throw data_error("run_chain: need at least 2 observations");
  }
  for (double v : sample) {
    if (!(v > 0.0)) {
      throw data_error("run_chain: sample must be strictly positive");
    }
  }
  if (config.iterations <= config.burn_in) {
    throw parameter_error("run_chain: iterations must exceed burn_in");
  }
  if (config.thin < 1) throw parameter_error("run_chain: thin must be >= 1");
  for (auto opt : {config.kappa_proposal_sd, config.sigma_proposal_sd}) {
    if (opt && !(*opt > 0.0)) {
      throw parameter_error("run_chain: proposal scales must be positive");
    }
  }
  if (!(config.gamma_proposal_shape > 1.0)) {
    throw parameter_error(
        "run_chain: gamma proposal shape must exceed 1 (mode at the current "
        "scale requires shape > 1)");
  }

  const double x_max = *std::max_element(sample.begin(), sample.end());

  FitResult mle = gpd_mle(sample);
  const double kappa_mode = mle.kappa;  // proposal location for the shape step

  double sd_kappa = config.kappa_proposal_sd.value_or(
      mle.covariance ? 2.0 * std::sqrt(mle.covariance->kk) : 0.25);

  double kappa_c, sigma_c;
  if (config.initial_state) {
    kappa_c = config.initial_state->first;
    sigma_c = config.initial_state->second;
  } else {
    // MLE clipped into the prior support.
    kappa_c = std::min(mle.kappa, 0.49);
    sigma_c = mle.sigma;
    if (kappa_c > 0.0 && sigma_c / kappa_c <= x_max) {
      sigma_c = kappa_c * x_max * (1.0 + 1e-6);
    }
  }
  double sd_sigma = config.sigma_proposal_sd.value_or(
      mle.covariance ? 2.0 * std::sqrt(mle.covariance->ss) : 0.25 * sigma_c);

  double lp_c = log_posterior(kappa_c, sigma_c, sample);
  if (lp_c == -kInf) {
    throw parameter_error("run_chain: initial state outside the support");
  }

  RandomStream rng(config.seed);
  ChainOutput out;
  out.iterations = config.iterations;
  out.burn_in = config.burn_in;
  out.thin = config.thin;
  out.seed = config.seed;
  out.kappa.reserve((config.iterations - config.burn_in) / config.thin);
  out.sigma.reserve((config.iterations - config.burn_in) / config.thin);

  std::size_t accept_k = 0, accept_s = 0;
  std::size_t accept_k_post = 0, accept_s_post = 0;

  const double gamma_shape = config.gamma_proposal_shape;

  for (std::size_t it = 1; it <= config.iterations; ++it) {
    // Shape update: independence-style truncated Gaussian, mode at the MLE,
    // upper bound from the support constraint at the current scale. The
    // truncation window depends only on sigma_c, so its normalization cancels
    // in the Hastings ratio.
    {
      const double ub = std::min(0.5, sigma_c / x_max);
      const double kappa_p =
          truncated_normal_draw(kappa_mode, sd_kappa, -kInf, ub, rng);
      const double lp_p = log_posterior(kappa_p, sigma_c, sample);
      const double zc = (kappa_c - kappa_mode) / sd_kappa;
      const double zp = (kappa_p - kappa_mode) / sd_kappa;
      const double log_alpha =
          lp_p - lp_c + normal_log_pdf(zc) - normal_log_pdf(zp);
      if (std::log(rng.uniform01()) < log_alpha) {
        kappa_c = kappa_p;
        lp_c = lp_p;
        ++accept_k;
        if (it > config.burn_in) ++accept_k_post;
      }
    }
    // Scale update.
    {
      double sigma_p, log_q_fwd, log_q_rev;
      if (kappa_c < 0.0) {
        // Gamma proposal with mode at the current scale.
        const double rate_c = (gamma_shape - 1.0) / sigma_c;
        sigma_p = gamma_draw(gamma_shape, rate_c, rng);
        const double rate_p = (gamma_shape - 1.0) / sigma_p;
        log_q_fwd = gamma_log_pdf(sigma_p, gamma_shape, rate_c);
        log_q_rev = gamma_log_pdf(sigma_c, gamma_shape, rate_p);
      } else {
        // Truncated Gaussian above the support bound; the window moves with
        // the state, so both normalizations enter the ratio.
        const double lb = kappa_c * x_max;
        sigma_p = truncated_normal_draw(sigma_c, sd_sigma, lb, kInf, rng);
        log_q_fwd = truncated_normal_log_pdf(sigma_p, sigma_c, sd_sigma, lb, kInf);
        log_q_rev = truncated_normal_log_pdf(sigma_c, sigma_p, sd_sigma, lb, kInf);
      }
      const double lp_p = log_posterior(kappa_c, sigma_p, sample);
      const double log_alpha = lp_p - lp_c + log_q_rev - log_q_fwd;
      if (std::log(rng.uniform01()) < log_alpha) {
        sigma_c = sigma_p;
        lp_c = lp_p;
        ++accept_s;
        if (it > config.burn_in) ++accept_s_post;
      }
    }
    if (it > config.burn_in && (it - config.burn_in) % config.thin == 0) {
      out.kappa.push_back(kappa_c);
      out.sigma.push_back(sigma_c);
    }
  }

  const double denom = static_cast<double>(config.iterations);
  out.accept_rate_kappa = static_cast<double>(accept_k) / denom;
  out.accept_rate_sigma = static_cast<double>(accept_s) / denom;
  if (accept_k_post == 0 || accept_s_post == 0) {
    throw chain_error(
        "run_chain: a coordinate accepted no proposal after burn-in; retune "
        "the proposal scales");
  }
  return out;
}

PosteriorSummary summarize(const ChainOutput& output, double p,
                           std::optional<PotContext> pot) {
  if (output.retained() < 100) {
    throw data_error("summarize: need at least 100 retained draws");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("summarize: p must lie in (0, 1)");
  }
  PosteriorSummary s;
  s.probability = p;
  s.kappa = summarize_draws(output.kappa, p, 0);
  s.sigma = summarize_draws(output.sigma, p, 0);

  // Gini = 1/(kappa + 2) exists only for kappa > -1; undefined draws are
  // skipped and counted.
  std::vector<double> gini_draws;
  gini_draws.reserve(output.retained());
  std::size_t gini_skipped = 0;
  for (double k : output.kappa) {
    if (k > -1.0) {
      gini_draws.push_back(1.0 / (k + 2.0));
    } else {
      ++gini_skipped;
    }
  }
  if (!gini_draws.empty()) {
    s.gini = summarize_draws(std::move(gini_draws), p, gini_skipped);
  }

  if (pot) {
    std::vector<double> var_draws;
    var_draws.reserve(output.retained());
    for (std::size_t i = 0; i < output.retained(); ++i) {
      var_draws.push_back(var_quantile(pot->epsilon, pot->threshold,
                                       output.kappa[i], output.sigma[i],
                                       pot->f_tilde));
    }
    s.var = summarize_draws(std::move(var_draws), p, 0);
  }
  return s;
}

void write_chain_csv(const ChainOutput& output, std::ostream& os) {
  os << "iteration,kappa,sigma\n";
  for (std::size_t i = 0; i < output.retained(); ++i) {
    const std::size_t iteration = output.burn_in + (i + 1) * output.thin;
    os << iteration << ',' << output.kappa[i] << ',' << output.sigma[i]
       << '\n';
  }
}

}  // namespace gpdcal
