#include "gpdcal/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gpdcal/errors.hpp"
#include "gpdcal/special.hpp"
#include "gpdcal/stats.hpp"

namespace gpdcal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGradTol = 1e-8;
constexpr int kMaxIter = 500;

// Series kernels for the per-observation terms, u = kappa * x / sigma:
//   A(u) = -log1p(-u)/u        (log-density factor)
//   C(u) = (1/(1-u) - A(u))/u  (shape-gradient factor)
// Both have removable singularities at u = 0; the series keep the gradient
// accurate where the direct forms cancel.
double kernel_a(double u) {
  if (std::abs(u) < 1e-3) {
    return 1.0 +
           u * (1.0 / 2.0 +
                u * (1.0 / 3.0 +
                     u * (1.0 / 4.0 +
                          u * (1.0 / 5.0 + u * (1.0 / 6.0 + u / 7.0)))));
  }
  return -std::log1p(-u) / u;
}

double kernel_c(double u) {
  if (std::abs(u) < 1e-3) {
    return 1.0 / 2.0 +
           u * (2.0 / 3.0 +
                u * (3.0 / 4.0 +
                     u * (4.0 / 5.0 +
                          u * (5.0 / 6.0 + u * (6.0 / 7.0 + u * 7.0 / 8.0)))));
  }
  return (1.0 / (1.0 - u) - kernel_a(u)) / u;
}

/// Negative log-likelihood on (kappa, psi = log sigma), with gradient.
/// Returns +inf outside the admissible region (support violation or
/// kappa > 1).
struct Objective {
  std::span<const double> x;

  double eval(double kappa, double psi, double* g_kappa,
              double* g_psi) const {
    if (kappa > 1.0) return kInf;
    const double n = static_cast<double>(x.size());
    const double inv_sigma = std::exp(-psi);
    double ll = -n * psi;
    double dk = 0.0;
    double sum_tb = 0.0;
    for (double xi : x) {
      const double t = xi * inv_sigma;
      const double u = kappa * t;
      const double w = 1.0 - u;
      if (w <= 0.0) return kInf;
      ll += -t * kernel_a(u) - std::log1p(-u);
      const double b = 1.0 / w;
      dk += t * b - t * t * kernel_c(u);
      sum_tb += t * b;
    }
    if (g_kappa) *g_kappa = -dk;  // objective is -loglik
    if (g_psi) *g_psi = -(-n + (1.0 - kappa) * sum_tb);
    return -ll;
  }
};

struct Point {
  double kappa, psi, f, gk, gp;
  double grad_norm() const { return std::hypot(gk, gp); }
};

Point evaluate(const Objective& obj, double kappa, double psi) {
  Point p{kappa, psi, 0.0, 0.0, 0.0};
  p.f = obj.eval(kappa, psi, &p.gk, &p.gp);
  return p;
}

/// Weak-Wolfe line search (Lewis-Overton bisection): sufficient decrease with
/// c1 = 1e-4 and curvature with c2 = 0.9. Non-finite trial values count as
/// failed decrease.
bool wolfe_search(const Objective& obj, const Point& from, double dk,
                  double dp, Point* out) {
  constexpr double c1 = 1e-4;
  constexpr double c2 = 0.9;
  const double slope0 = from.gk * dk + from.gp * dp;
  if (!(slope0 < 0.0)) return false;
  double lo = 0.0;
  double hi = kInf;
  double a = 1.0;
  for (int i = 0; i < 60; ++i) {
    Point trial = evaluate(obj, from.kappa + a * dk, from.psi + a * dp);
    if (!std::isfinite(trial.f) || trial.f > from.f + c1 * a * slope0) {
      hi = a;
    } else if (trial.gk * dk + trial.gp * dp < c2 * slope0) {
      lo = a;
    } else {
      *out = trial;
      return true;
    }
    a = std::isinf(hi) ? 2.0 * lo : 0.5 * (lo + hi);
    if (a == 0.0) break;
  }
  // Fall back to the best sufficient-decrease point if curvature never held.
  if (lo > 0.0) {
    *out = evaluate(obj, from.kappa + lo * dk, from.psi + lo * dp);
    return std::isfinite(out->f) && out->f < from.f;
  }
  return false;
}

struct BfgsResult {
  Point point;
  bool converged;
};

BfgsResult bfgs(const Objective& obj, double kappa0, double psi0) {
  Point cur = evaluate(obj, kappa0, psi0);
  if (!std::isfinite(cur.f)) return {cur, false};
  // Inverse Hessian approximation, symmetric 2x2.
  double h11 = 1.0, h12 = 0.0, h22 = 1.0;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (cur.grad_norm() < kGradTol) return {cur, true};
    double dk = -(h11 * cur.gk + h12 * cur.gp);
    double dp = -(h12 * cur.gk + h22 * cur.gp);
    if (!(dk * cur.gk + dp * cur.gp < 0.0)) {
      h11 = h22 = 1.0;
      h12 = 0.0;
      dk = -cur.gk;
      dp = -cur.gp;
    }
    Point next;
    if (!wolfe_search(obj, cur, dk, dp, &next)) {
      return {cur, cur.grad_norm() < kGradTol};
    }
    const double sk = next.kappa - cur.kappa;
    const double sp = next.psi - cur.psi;
    const double yk = next.gk - cur.gk;
    const double yp = next.gp - cur.gp;
    const double sy = sk * yk + sp * yp;
    if (sy > 1e-12 * std::hypot(sk, sp) * std::hypot(yk, yp)) {
      // H' = (I - r s y^T) H (I - r y s^T) + r s s^T with r = 1/sy
      const double r = 1.0 / sy;
      const double hy1 = h11 * yk + h12 * yp;
      const double hy2 = h12 * yk + h22 * yp;
      const double yhy = yk * hy1 + yp * hy2;
      h11 += r * ((1.0 + r * yhy) * sk * sk - 2.0 * sk * hy1);
      h12 += r * ((1.0 + r * yhy) * sk * sp - sk * hy2 - sp * hy1);
      h22 += r * ((1.0 + r * yhy) * sp * sp - 2.0 * sp * hy2);
    }
    cur = next;
  }
  return {cur, cur.grad_norm() < kGradTol};
}

void check_sample(std::span<const double> sample, const char* op) {
  if (sample.size() < 2) {
    throw data_error(std::string(op) + ": need at least 2 observations");
  }
  for (double v : sample) {
    if (!(v > 0.0)) {
      throw data_error(std::string(op) + ": sample must be strictly positive");
    }
  }
}

void attach_wald_ci(FitResult* fit) {
  if (!fit->covariance) return;
  const double z = normal_quantile(0.5 * (1.0 + fit->confidence));
  const double se_k = std::sqrt(fit->covariance->kk);
  const double se_s = std::sqrt(fit->covariance->ss);
  fit->ci_kappa = Interval{fit->kappa - z * se_k, fit->kappa + z * se_k};
  fit->ci_sigma = Interval{fit->sigma - z * se_s, fit->sigma + z * se_s};
}

}  // namespace

double gpd_loglik(double kappa, double sigma, std::span<const double> sample) {
  if (!(sigma > 0.0)) throw parameter_error("gpd_loglik: sigma must be > 0");
  if (sample.empty()) throw data_error("gpd_loglik: empty sample");
  const double n = static_cast<double>(sample.size());
  if (kappa == 0.0) {
    double s = 0.0;
    for (double v : sample) s += v;
    return -n * std::log(sigma) - s / sigma;
  }
  double acc = 0.0;
  for (double v : sample) {
    const double t = 1.0 - kappa * v / sigma;
    if (t < 0.0) return -kInf;
    if (t == 0.0) {
      if (kappa == 1.0) continue;  // exponent vanishes, term contributes 0
      return kappa < 1.0 ? -kInf : kInf;
    }
    acc += std::log1p(-kappa * v / sigma);
  }
  return -n * std::log(sigma) + (1.0 / kappa - 1.0) * acc;
}

FitResult gpd_mle(std::span<const double> sample,
                  std::optional<std::pair<double, double>> init,
                  double confidence) {
  check_sample(sample, "gpd_mle");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw domain_error("gpd_mle: confidence must lie in (0, 1)");
  }
  const double x_max = *std::max_element(sample.begin(), sample.end());
  const double m = mean(sample);

  double kappa0, sigma0;
  if (init) {
    kappa0 = init->first;
    sigma0 = init->second;
    if (!(sigma0 > 0.0)) throw parameter_error("gpd_mle: init sigma must be > 0");
  } else {
    bool have_start = false;
    kappa0 = 0.0;
    sigma0 = m;
    try {
      FitResult pwm = pwm_fit(sample, confidence);
      if (pwm.kappa < 1.0 && pwm.sigma > 0.0) {
        kappa0 = pwm.kappa;
        sigma0 = pwm.sigma;
        have_start = true;
      }
    } catch (const error&) {
    }
    if (!have_start) {
      // Moment hint: mean^2/var = 1 + 2 kappa for the GPD.
      double hint = 0.0;
      if (sample.size() >= 2) {
        double v = variance(sample);
        if (v > 0.0) hint = (m * m / v - 1.0) / 2.0;
      }
      kappa0 = 0.1 * (hint > 0.0 ? 1.0 : (hint < 0.0 ? -1.0 : 0.0));
      sigma0 = m;
    }
  }

  Objective obj{sample};
  auto clip_start = [&](double k, double s) {
    k = std::min(k, 0.95);
    if (k > 0.0 && s / k <= x_max) k = 0.9 * s / x_max;
    return std::pair{k, std::log(s)};
  };

  auto [k_start, psi_start] = clip_start(kappa0, sigma0);
  BfgsResult best = bfgs(obj, k_start, psi_start);

  if (!best.converged) {
    const std::array<std::pair<double, double>, 3> jitter = {
        {{-0.2, 1.25}, {0.2, 0.8}, {-0.5, 1.5}}};
    for (auto [dk, fs] : jitter) {
      auto [k2, psi2] = clip_start(kappa0 + dk, sigma0 * fs);
      BfgsResult run = bfgs(obj, k2, psi2);
      bool better = (run.converged && !best.converged) ||
                    (run.converged == best.converged &&
                     run.point.f < best.point.f);
      if (better) best = run;
      if (best.converged) break;
    }
  }

  FitResult fit;
  fit.kappa = best.point.kappa;
  fit.sigma = std::exp(best.point.psi);
  fit.method = Method::mle;
  fit.converged = best.converged;
  fit.confidence = confidence;
  fit.objective = -best.point.f;
  if (fit.kappa < 0.5) {
    const double n = static_cast<double>(sample.size());
    const double omk = 1.0 - fit.kappa;
    fit.covariance = Matrix2{omk * omk / n, fit.sigma * omk / n,
                             2.0 * fit.sigma * fit.sigma * omk / n};
    attach_wald_ci(&fit);
  }
  return fit;
}

std::pair<double, double> pwm_from_moments(double mu0, double mu1) {
  const double den = mu0 - 2.0 * mu1;
  if (den == 0.0) {
    throw estimator_error("pwm estimator undefined: mu0 == 2 mu1");
  }
  return {mu0 / den - 2.0, 2.0 * mu0 * mu1 / den};
}

FitResult pwm_fit(std::span<const double> sample, double confidence) {
  check_sample(sample, "pwm_fit");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw domain_error("pwm_fit: confidence must lie in (0, 1)");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double mu0 = 0.0, mu1 = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (static_cast<double>(i + 1) - 0.35) / n;
    mu0 += sorted[i];
    mu1 += sorted[i] * (1.0 - p);
  }
  mu0 /= n;
  mu1 /= n;
  auto [kappa, sigma] = pwm_from_moments(mu0, mu1);

  FitResult fit;
  fit.kappa = kappa;
  fit.sigma = sigma;
  fit.method = Method::pwm;
  fit.converged = true;
  fit.confidence = confidence;
  // The asymptotic matrix is positive definite only where the second moment
  // exists; outside (-1/2, 1/2) it is not a covariance.
  if (kappa > -0.5 && kappa < 0.5) {
    const double k = kappa;
    const double c = 1.0 / (n * (1.0 + 2.0 * k) * (3.0 + 2.0 * k));
    const double kk =
        c * (1.0 + k) * (2.0 + k) * (2.0 + k) * (1.0 + k + 2.0 * k * k);
    const double ks = c * sigma * (2.0 + k) *
                      (2.0 + 6.0 * k + 7.0 * k * k + 2.0 * k * k * k);
    const double ss = c * sigma * sigma *
                      (7.0 + 18.0 * k + 11.0 * k * k + 2.0 * k * k * k);
    fit.covariance = Matrix2{kk, ks, ss};
    attach_wald_ci(&fit);
  }
  return fit;
}

}  // namespace gpdcal
