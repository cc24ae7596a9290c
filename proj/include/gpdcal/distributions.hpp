#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gpdcal/common.hpp"
#include "gpdcal/rng.hpp"

namespace gpdcal {

/// Generalised Pareto with density (1/sigma) (1 - kappa x / sigma)^{1/kappa-1}
/// and the exponential limit at kappa = 0. Under this sign convention heavy
/// tails are kappa < 0; the other common shape parameter is xi = -kappa.
/// Support is (0, inf) for kappa <= 0 and (0, sigma/kappa] for kappa > 0.
struct Gpd {
  double kappa;
  double sigma;
};

/// Pareto on [beta, inf) with density (alpha/beta) (y/beta)^{-(alpha+1)}.
struct Pareto {
  double alpha;
  double beta;
};

/// Inverted Pareto on (0, beta] with density (alpha/beta) (y/beta)^{alpha-1}.
struct InvPareto {
  double alpha;
  double beta;
};

/// Location (shifted) exponential on [theta, inf) with rate alpha.
struct LocExp {
  double rate;
  double theta;
};

struct Exponential {
  double rate;
};

/// Uniform on (0, upper].
struct Uniform {
  double upper;
};

using DistSpec =
    std::variant<Gpd, Pareto, InvPareto, LocExp, Exponential, Uniform>;

enum class Family { gpd, pareto, inv_pareto, loc_exp, exponential, uniform };

Family family(const DistSpec& dist);
std::string family_name(Family f);

/// Throws parameter_error unless every scale/rate parameter is strictly
/// positive (the GPD shape is unrestricted).
void validate(const DistSpec& dist);

/// Closure of the support; upper may be +inf.
struct SupportRange {
  double lower;
  double upper;
};
SupportRange support(const DistSpec& dist);

/// PDF at x; 0 outside the support.
double density(const DistSpec& dist, double x);

/// CDF at x; 0 below and 1 above the support.
double cdf(const DistSpec& dist, double x);

/// Inverse CDF at p in (0, 1).
double quantile(const DistSpec& dist, double p);

/// n i.i.d. draws by inversion; deterministic given the stream.
std::vector<double> sample(const DistSpec& dist, std::size_t n,
                           RandomStream& rng);

/// Mean excess E[X - t | X > t] for t inside the support.
double mean_excess(const DistSpec& dist, double t);

/// One equivalent parameterization of a distribution, with the executable
/// variable change that carries a draw onto it.
struct TransformMapping {
  DistSpec target;
  std::string description;
  std::function<double(double)> forward;
};

/// All equivalent parameterizations of `dist` within the family. Defined for
/// GPD, Pareto and inverted Pareto sources.
std::vector<TransformMapping> transform(const DistSpec& dist);

/// The mapping from transform(dist) with the requested target family;
/// domain_error when that mapping is not valid for these parameters.
TransformMapping transform_to(const DistSpec& dist, Family target);

/// Sufficient statistics of an inverted-Pareto sample:
/// t1 the geometric mean, t2 the maximum.
struct SuffStats {
  double t1;
  double t2;
  std::size_t n;
};

/// Conjugate (Pareto-Gamma) hyperparameters; all strictly positive.
struct ParetoGammaHyper {
  double k;
  double b;
  double c;
  double d;
};

/// Gamma(shape, rate) law for the inverted-Pareto shape parameter.
struct GammaPosterior {
  double shape;
  double rate;
  double mean() const { return shape / rate; }
};

double pdf(const GammaPosterior& g, double x);
double cdf(const GammaPosterior& g, double x);
double quantile(const GammaPosterior& g, double p);

/// Conjugate update: Ga(n + c, d + q) with q = k log(s/b) + n log(s/t1) and
/// s = max{t2, b}. Reduces to the spec'd reference limit when the prior
/// flattens.
GammaPosterior pareto_gamma_update(const ParetoGammaHyper& hyper,
                                   const SuffStats& stats);

/// Reference-prior limit (prior proportional to 1/(kappa sigma)):
/// Ga(n - 1, n / kappa_hat) with kappa_hat = 1 / log(t2/t1). Needs n >= 2 and
/// t1 < t2.
GammaPosterior reference_posterior(const SuffStats& stats);

}  // namespace gpdcal
