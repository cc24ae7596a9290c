#include "gpdcal/distributions.hpp"

#include <cmath>
#include <limits>

#include "gpdcal/errors.hpp"
#include "gpdcal/special.hpp"

namespace gpdcal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw parameter_error(std::string(what) + " must be strictly positive");
  }
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("quantile: p must lie in (0, 1)");
  }
}

}  // namespace

Family family(const DistSpec& dist) {
  return std::visit(
      overloaded{[](const Gpd&) { return Family::gpd; },
                 [](const Pareto&) { return Family::pareto; },
                 [](const InvPareto&) { return Family::inv_pareto; },
                 [](const LocExp&) { return Family::loc_exp; },
                 [](const Exponential&) { return Family::exponential; },
                 [](const Uniform&) { return Family::uniform; }},
      dist);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::gpd: return "gpd";
    case Family::pareto: return "pareto";
    case Family::inv_pareto: return "inv_pareto";
    case Family::loc_exp: return "loc_exp";
    case Family::exponential: return "exponential";
    case Family::uniform: return "uniform";
  }
  return "?";
}

void validate(const DistSpec& dist) {
  std::visit(overloaded{[](const Gpd& d) {
                          require_positive(d.sigma, "gpd sigma");
                          if (!std::isfinite(d.kappa)) {
                            throw parameter_error("gpd kappa must be finite");
                          }
                        },
                        [](const Pareto& d) {
                          require_positive(d.alpha, "pareto alpha");
                          require_positive(d.beta, "pareto beta");
                        },
                        [](const InvPareto& d) {
                          require_positive(d.alpha, "inv_pareto alpha");
                          require_positive(d.beta, "inv_pareto beta");
                        },
                        [](const LocExp& d) {
                          require_positive(d.rate, "loc_exp rate");
                          if (!std::isfinite(d.theta)) {
                            throw parameter_error("loc_exp theta must be finite");
                          }
                        },
                        [](const Exponential& d) {
                          require_positive(d.rate, "exponential rate");
                        },
                        [](const Uniform& d) {
                          require_positive(d.upper, "uniform upper");
                        }},
             dist);
}

SupportRange support(const DistSpec& dist) {
  validate(dist);
  return std::visit(
      overloaded{[](const Gpd& d) {
                   return SupportRange{0.0, d.kappa > 0.0 ? d.sigma / d.kappa
                                                          : kInf};
                 },
                 [](const Pareto& d) { return SupportRange{d.beta, kInf}; },
                 [](const InvPareto& d) { return SupportRange{0.0, d.beta}; },
                 [](const LocExp& d) { return SupportRange{d.theta, kInf}; },
                 [](const Exponential&) { return SupportRange{0.0, kInf}; },
                 [](const Uniform& d) { return SupportRange{0.0, d.upper}; }},
      dist);
}

double density(const DistSpec& dist, double x) {
  validate(dist);
  return std::visit(
      overloaded{
          [x](const Gpd& d) -> double {
            if (x < 0.0) return 0.0;
            if (d.kappa == 0.0) return std::exp(-x / d.sigma) / d.sigma;
            double u = -d.kappa * x / d.sigma;
            double t = 1.0 + u;
            if (t < 0.0) return 0.0;
            if (t == 0.0) {
              // upper endpoint for kappa > 0: finite only when the exponent
              // vanishes (uniform case)
              if (d.kappa == 1.0) return 1.0 / d.sigma;
              return d.kappa > 1.0 ? kInf : 0.0;
            }
            return std::exp((1.0 / d.kappa - 1.0) * std::log1p(u)) / d.sigma;
          },
          [x](const Pareto& d) -> double {
            if (x < d.beta) return 0.0;
            return d.alpha / d.beta *
                   std::exp(-(d.alpha + 1.0) * std::log(x / d.beta));
          },
          [x](const InvPareto& d) -> double {
            if (x <= 0.0 || x > d.beta) return 0.0;
            return d.alpha / d.beta *
                   std::exp((d.alpha - 1.0) * std::log(x / d.beta));
          },
          [x](const LocExp& d) -> double {
            if (x < d.theta) return 0.0;
            return d.rate * std::exp(-d.rate * (x - d.theta));
          },
          [x](const Exponential& d) -> double {
            if (x < 0.0) return 0.0;
            return d.rate * std::exp(-d.rate * x);
          },
          [x](const Uniform& d) -> double {
            if (x <= 0.0 || x > d.upper) return 0.0;
            return 1.0 / d.upper;
          }},
      dist);
}

double cdf(const DistSpec& dist, double x) {
  validate(dist);
  return std::visit(
      overloaded{
          [x](const Gpd& d) -> double {
            if (x <= 0.0) return 0.0;
            if (d.kappa == 0.0) return -std::expm1(-x / d.sigma);
            double u = -d.kappa * x / d.sigma;
            if (1.0 + u <= 0.0) return 1.0;
            return -std::expm1(std::log1p(u) / d.kappa);
          },
          [x](const Pareto& d) -> double {
            if (x <= d.beta) return 0.0;
            return -std::expm1(-d.alpha * std::log(x / d.beta));
          },
          [x](const InvPareto& d) -> double {
            if (x <= 0.0) return 0.0;
            if (x >= d.beta) return 1.0;
            return std::exp(d.alpha * std::log(x / d.beta));
          },
          [x](const LocExp& d) -> double {
            if (x <= d.theta) return 0.0;
            return -std::expm1(-d.rate * (x - d.theta));
          },
          [x](const Exponential& d) -> double {
            if (x <= 0.0) return 0.0;
            return -std::expm1(-d.rate * x);
          },
          [x](const Uniform& d) -> double {
            if (x <= 0.0) return 0.0;
            if (x >= d.upper) return 1.0;
            return x / d.upper;
          }},
      dist);
}

double quantile(const DistSpec& dist, double p) {
  validate(dist);
  check_p(p);
  return std::visit(
      overloaded{
          [p](const Gpd& d) -> double {
            if (d.kappa == 0.0) return -d.sigma * std::log1p(-p);
            return d.sigma * -std::expm1(d.kappa * std::log1p(-p)) / d.kappa;
          },
          [p](const Pareto& d) -> double {
            return d.beta * std::exp(-std::log1p(-p) / d.alpha);
          },
          [p](const InvPareto& d) -> double {
            return d.beta * std::exp(std::log(p) / d.alpha);
          },
          [p](const LocExp& d) -> double {
            return d.theta - std::log1p(-p) / d.rate;
          },
          [p](const Exponential& d) -> double {
            return -std::log1p(-p) / d.rate;
          },
          [p](const Uniform& d) -> double { return p * d.upper; }},
      dist);
}

std::vector<double> sample(const DistSpec& dist, std::size_t n,
                           RandomStream& rng) {
  validate(dist);
  if (n == 0) throw domain_error("sample: n must be at least 1");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(dist, rng.uniform01()));
  return out;
}

double mean_excess(const DistSpec& dist, double t) {
  validate(dist);
  return std::visit(
      overloaded{
          [t](const Gpd& d) -> double {
            if (d.kappa <= -1.0) {
              throw moment_error("gpd mean excess requires kappa > -1");
            }
            if (t < 0.0 || (d.kappa > 0.0 && t >= d.sigma / d.kappa)) {
              throw domain_error("mean_excess: t outside the support");
            }
            return (d.sigma - d.kappa * t) / (1.0 + d.kappa);
          },
          [t](const Pareto& d) -> double {
            if (d.alpha <= 1.0) {
              throw moment_error("pareto mean excess requires alpha > 1");
            }
            if (t < d.beta) {
              throw domain_error("mean_excess: t outside the support");
            }
            return t / (d.alpha - 1.0);
          },
          [t](const InvPareto& d) -> double {
            if (t <= 0.0 || t >= d.beta) {
              throw domain_error("mean_excess: t outside the support");
            }
            double r = t / d.beta;
            double surv = -std::expm1(d.alpha * std::log(r));
            double partial = d.alpha / (d.alpha + 1.0) * d.beta *
                             (1.0 - std::pow(r, d.alpha + 1.0));
            return partial / surv - t;
          },
          [t](const LocExp& d) -> double {
            if (t < d.theta) {
              throw domain_error("mean_excess: t outside the support");
            }
            return 1.0 / d.rate;
          },
          [t](const Exponential& d) -> double {
            if (t < 0.0) throw domain_error("mean_excess: t outside the support");
            return 1.0 / d.rate;
          },
          [t](const Uniform& d) -> double {
            if (t < 0.0 || t >= d.upper) {
              throw domain_error("mean_excess: t outside the support");
            }
            return 0.5 * (d.upper - t);
          }},
      dist);
}

std::vector<TransformMapping> transform(const DistSpec& dist) {
  validate(dist);
  std::vector<TransformMapping> out;
  std::visit(
      overloaded{
          [&](const Gpd& d) {
            if (d.kappa > 0.0) {
              out.push_back({InvPareto{1.0 / d.kappa, d.sigma},
                             "y = sigma - kappa*x",
                             [d](double x) { return d.sigma - d.kappa * x; }});
              if (d.kappa == 1.0) {
                out.push_back({Uniform{d.sigma}, "y = sigma - x",
                               [d](double x) { return d.sigma - x; }});
              }
            } else if (d.kappa < 0.0) {
              out.push_back({Pareto{-1.0 / d.kappa, d.sigma},
                             "y = sigma - kappa*x",
                             [d](double x) { return d.sigma - d.kappa * x; }});
            } else {
              out.push_back({Exponential{1.0 / d.sigma}, "y = x",
                             [](double x) { return x; }});
            }
          },
          [&](const Pareto& d) {
            out.push_back({Gpd{-1.0 / d.alpha, d.beta / d.alpha},
                           "z = y - beta",
                           [d](double y) { return y - d.beta; }});
          },
          [&](const InvPareto& d) {
            out.push_back({Gpd{1.0 / d.alpha, d.beta},
                           "x = alpha*(beta - y)",
                           [d](double y) { return d.alpha * (d.beta - y); }});
            out.push_back({Exponential{d.alpha}, "z = log(beta/y)",
                           [d](double y) { return std::log(d.beta / y); }});
            // Under z = -log y the location lands at -log beta.
            out.push_back({LocExp{d.alpha, -std::log(d.beta)}, "z = -log(y)",
                           [](double y) { return -std::log(y); }});
            if (d.alpha == 1.0) {
              out.push_back({Uniform{d.beta}, "y = y",
                             [](double y) { return y; }});
            }
          },
          [&](const auto&) {
            throw domain_error(
                "transform: defined for gpd, pareto and inv_pareto sources");
          }},
      dist);
  return out;
}

TransformMapping transform_to(const DistSpec& dist, Family target) {
  for (auto& m : transform(dist)) {
    if (family(m.target) == target) return m;
  }
  throw domain_error("transform_to: no " + family_name(target) +
                     " mapping is valid for this distribution");
}

double pdf(const GammaPosterior& g, double x) {
  return gamma_pdf(x, g.shape, g.rate);
}

double cdf(const GammaPosterior& g, double x) {
  return gamma_cdf(x, g.shape, g.rate);
}

double quantile(const GammaPosterior& g, double p) {
  return gamma_quantile(p, g.shape, g.rate);
}

GammaPosterior pareto_gamma_update(const ParetoGammaHyper& hyper,
                                   const SuffStats& stats) {
  require_positive(hyper.k, "hyper.k");
  require_positive(hyper.b, "hyper.b");
  require_positive(hyper.c, "hyper.c");
  require_positive(hyper.d, "hyper.d");
  if (stats.n < 1) throw data_error("pareto_gamma_update: empty sample");
  require_positive(stats.t1, "t1");
  require_positive(stats.t2, "t2");
  if (stats.n > 1 && stats.t1 >= stats.t2) {
    throw degenerate_sample_error(
        "pareto_gamma_update: all observations equal (t1 == t2)");
  }
  const double n = static_cast<double>(stats.n);
  const double s = std::max(stats.t2, hyper.b);
  const double q = hyper.k * std::log(s / hyper.b) + n * std::log(s / stats.t1);
  return GammaPosterior{n + hyper.c, hyper.d + q};
}

GammaPosterior reference_posterior(const SuffStats& stats) {
  if (stats.n < 2) {
    throw degenerate_sample_error(
        "reference_posterior: need n >= 2 for a proper posterior");
  }
  require_positive(stats.t1, "t1");
  require_positive(stats.t2, "t2");
  if (!(stats.t1 < stats.t2)) {
    throw degenerate_sample_error(
        "reference_posterior: all observations equal (t1 == t2)");
  }
  const double n = static_cast<double>(stats.n);
  return GammaPosterior{n - 1.0, n * std::log(stats.t2 / stats.t1)};
}

}  // namespace gpdcal
