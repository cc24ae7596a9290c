#include "gpdcal/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "gpdcal/errors.hpp"
#include "gpdcal/stats.hpp"
#include "test_util.hpp"

using namespace gpdcal;

namespace {

const std::vector<DistSpec> kGrid = {
    Gpd{0.0, 1.0},    Gpd{1.0, 1.0},   Gpd{-0.5, 2.0},  Gpd{0.3, 1.5},
    Gpd{-2.0, 0.7},   Pareto{2.0, 1.0}, Pareto{0.8, 3.0}, InvPareto{2.0, 1.0},
    InvPareto{0.6, 4.0}, LocExp{1.5, -2.0}, Exponential{0.5}, Uniform{4.0}};

}  // namespace

TEST_CASE("density matches the stated closed forms") {
  CHECK(density(Gpd{0.0, 1.0}, 0.0) == doctest::Approx(1.0));
  CHECK(density(Gpd{1.0, 1.0}, 0.3) == doctest::Approx(1.0));
  // direct evaluation, cross-checked below by normalization
  CHECK(density(Pareto{2.0, 1.0}, 2.0) == doctest::Approx(0.25));
  CHECK(density(Pareto{2.0, 1.0}, 0.5) == 0.0);
  CHECK(density(Gpd{1.0, 1.0}, 1.5) == 0.0);
  CHECK(density(Gpd{-0.5, 1.0}, -0.1) == 0.0);
  CHECK(density(Uniform{4.0}, 2.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(density(Gpd{0.0, -1.0}, 1.0), parameter_error);
  CHECK_THROWS_AS(density(Pareto{-2.0, 1.0}, 2.0), parameter_error);
}

TEST_CASE("densities integrate to one over the support") {
  for (const auto& d : kGrid) {
    double total = testutil::integrate([&](double x) { return density(d, x); },
                                       support(d).lower, support(d).upper);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("cdf closed forms and quadrature oracle") {
  CHECK(cdf(Gpd{1.0, 1.0}, 0.5) == doctest::Approx(0.5));
  CHECK(cdf(InvPareto{2.0, 1.0}, 1.0) == doctest::Approx(1.0));
  // oracle: integrate the density
  double expected = testutil::integrate(
      [&](double x) { return density(Gpd{-0.5, 1.0}, x); }, 0.0, 1.0);
  CHECK(expected == doctest::Approx(1.0 - std::pow(1.5, -2.0)).epsilon(1e-10));
  CHECK(cdf(Gpd{-0.5, 1.0}, 1.0) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(cdf(Gpd{-0.5, 1.0}, 1.0) == doctest::Approx(0.5556).epsilon(1e-3));

  for (const auto& d : kGrid) {
    CHECK(cdf(d, support(d).lower - 1.0) == 0.0);
    double far = std::isfinite(support(d).upper) ? support(d).upper
                                                 : quantile(d, 1.0 - 1e-13);
    CHECK(cdf(d, far + 1.0) == doctest::Approx(1.0));
    // monotone
    double prev = -1.0;
    for (double p : {0.05, 0.3, 0.6, 0.9}) {
      double x = quantile(d, p);
      double c = cdf(d, x);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("quantile examples and bisection oracle") {
  CHECK(quantile(Uniform{4.0}, 0.25) == doctest::Approx(1.0));
  CHECK(quantile(Pareto{1.0, 1.0}, 0.5) == doctest::Approx(2.0));
  DistSpec d = Gpd{-0.4, 1.0};
  double oracle = testutil::invert_cdf([&](double x) { return cdf(d, x); },
                                       0.99, 0.0, 1e4);
  CHECK(quantile(d, 0.99) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK_THROWS_AS(quantile(d, 0.0), domain_error);
  CHECK_THROWS_AS(quantile(d, 1.0), domain_error);
}

TEST_CASE("quantile/cdf round trips") {
  for (const auto& d : kGrid) {
    // cdf(quantile(p)) = p to 1e-12
    for (double p = 0.001; p < 1.0; p += 0.0545) {
      CHECK(cdf(d, quantile(d, p)) == doctest::Approx(p).epsilon(1e-12));
    }
    // quantile(cdf(x)) = x to 1e-9 on a support grid
    for (double p : {0.02, 0.2, 0.5, 0.8, 0.98}) {
      double x = quantile(d, p);
      CHECK(quantile(d, cdf(d, x)) == doctest::Approx(x).epsilon(1e-9));
    }
  }
}

TEST_CASE("gpd branch is continuous at kappa = 0") {
  for (double k : {1e-9, -1e-9}) {
    for (double x : {0.1, 0.5, 1.0, 3.0}) {
      CHECK(density(Gpd{k, 2.0}, x) ==
            doctest::Approx(density(Gpd{0.0, 2.0}, x)).epsilon(1e-6));
      CHECK(cdf(Gpd{k, 2.0}, x) ==
            doctest::Approx(cdf(Gpd{0.0, 2.0}, x)).epsilon(1e-6));
    }
    for (double p : {0.05, 0.5, 0.95}) {
      CHECK(quantile(Gpd{k, 2.0}, p) ==
            doctest::Approx(quantile(Gpd{0.0, 2.0}, p)).epsilon(1e-6));
    }
  }
}

TEST_CASE("sampling is deterministic, in-support, and KS-close to the cdf") {
  DistSpec d = Gpd{-1.0 / 3.0, 4.0};
  RandomStream r1(42), r2(42);
  auto a = sample(d, 1000, r1);
  auto b = sample(d, 1000, r2);
  CHECK(a == b);

  RandomStream r3(7);
  auto big = sample(d, 100000, r3);
  CHECK(ks_statistic(big, [&](double x) { return cdf(d, x); }) < 0.01);

  RandomStream r4(9);
  auto par = sample(Pareto{3.0, 4.0}, 100000, r4);
  CHECK(*std::min_element(par.begin(), par.end()) >= 4.0);
}

TEST_CASE("transform: special cases and domain errors") {
  auto exp_map = transform_to(Gpd{0.0, 2.0}, Family::exponential);
  CHECK(std::get<Exponential>(exp_map.target).rate == doctest::Approx(0.5));

  auto uni_map = transform_to(InvPareto{1.0, 4.0}, Family::uniform);
  CHECK(std::get<Uniform>(uni_map.target).upper == doctest::Approx(4.0));

  CHECK_THROWS_AS(transform_to(Gpd{-0.5, 1.0}, Family::inv_pareto),
                  domain_error);
  CHECK_THROWS_AS(transform_to(Gpd{0.5, 1.0}, Family::pareto), domain_error);
  CHECK_THROWS_AS(transform(DistSpec{Uniform{1.0}}), domain_error);

  // the pair GPD(kappa>0) <-> InvPareto inverts exactly under its stated
  // variable change
  auto fwd = transform_to(Gpd{2.0, 3.0}, Family::inv_pareto);
  auto rev = transform_to(std::get<InvPareto>(fwd.target), Family::gpd);
  CHECK(std::get<Gpd>(rev.target).kappa == doctest::Approx(2.0));
  CHECK(std::get<Gpd>(rev.target).sigma == doctest::Approx(3.0));
  for (double x : {0.1, 0.7, 1.2}) {
    CHECK(rev.forward(fwd.forward(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("transform: pushed samples match the target law (KS)") {
  const std::vector<DistSpec> sources = {Gpd{2.0, 3.0},     Gpd{-0.429, 0.0216},
                                         Gpd{0.0, 2.0},     Pareto{2.33, 0.0503},
                                         InvPareto{2.5, 4.0}, InvPareto{1.0, 4.0}};
  std::uint64_t seed = 1;
  for (const auto& src : sources) {
    for (const auto& mapping : transform(src)) {
      RandomStream rng(seed++);
      auto draws = sample(src, 100000, rng);
      std::vector<double> pushed(draws.size());
      std::transform(draws.begin(), draws.end(), pushed.begin(),
                     mapping.forward);
      double ks = ks_statistic(
          pushed, [&](double x) { return cdf(mapping.target, x); });
      INFO("mapping ", family_name(family(src)), " -> ",
           family_name(family(mapping.target)), " (", mapping.description,
           "), ks=", ks);
      CHECK(ks < 0.01);
    }
  }
  // the derived numbers behind the Pareto -> GPD excess map
  auto m = transform_to(Pareto{2.33, 0.0503}, Family::gpd);
  CHECK(std::get<Gpd>(m.target).kappa == doctest::Approx(-0.429).epsilon(1e-3));
  CHECK(std::get<Gpd>(m.target).sigma == doctest::Approx(0.0216).epsilon(1e-2));
}

TEST_CASE("mean excess") {
  CHECK(mean_excess(Gpd{0.0, 2.0}, 5.0) == doctest::Approx(2.0));
  CHECK(mean_excess(Pareto{2.0, 1.0}, 3.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(mean_excess(Gpd{-1.0, 1.0}, 1.0), moment_error);
  CHECK_THROWS_AS(mean_excess(Pareto{1.0, 1.0}, 2.0), moment_error);
  CHECK_THROWS_AS(mean_excess(Gpd{0.5, 1.0}, 3.0), domain_error);

  // Monte Carlo oracle for the Pareto value
  RandomStream rng(11);
  auto draws = sample(Pareto{2.0, 1.0}, 1000000, rng);
  double sum = 0.0;
  std::size_t count = 0;
  for (double y : draws) {
    if (y > 3.0) {
      sum += y - 3.0;
      ++count;
    }
  }
  CHECK(sum / static_cast<double>(count) == doctest::Approx(3.0).epsilon(0.05));

  // GPD mean excess is affine in t with slope -kappa/(1+kappa)
  for (const auto& d : {Gpd{-0.4, 1.0}, Gpd{0.25, 2.0}, Gpd{0.0, 1.3}}) {
    double slope = -d.kappa / (1.0 + d.kappa);
    double t0 = 0.1, dt = 0.3;
    double m0 = mean_excess(d, t0);
    for (int i = 1; i <= 3; ++i) {
      double t = t0 + i * dt;
      CHECK(mean_excess(d, t) ==
            doctest::Approx(m0 + slope * (t - t0)).epsilon(1e-12));
    }
  }

  // inverted-Pareto closed form against the conditional-expectation integral
  InvPareto ip{2.5, 4.0};
  double t = 1.5;
  double num = testutil::integrate(
      [&](double y) { return (y - t) * density(ip, y); }, t, ip.beta);
  double den = 1.0 - cdf(ip, t);
  CHECK(mean_excess(ip, t) == doctest::Approx(num / den).epsilon(1e-9));

  CHECK(mean_excess(Uniform{4.0}, 1.0) == doctest::Approx(1.5));
  CHECK(mean_excess(LocExp{2.0, 1.0}, 5.0) == doctest::Approx(0.5));
}

TEST_CASE("pareto-gamma conjugate update") {
  // reference limit at n = 33, kappa_hat = 2.44
  SuffStats stats{std::exp(2.0 - 1.0 / 2.44), std::exp(2.0), 33};
  auto post = reference_posterior(stats);
  CHECK(post.shape == doctest::Approx(32.0));
  CHECK(post.rate == doctest::Approx(33.0 / 2.44).epsilon(1e-9));
  CHECK(post.mean() == doctest::Approx(2.3661).epsilon(1e-4));

  // posterior shape is n + c, continuous as c -> 0
  SuffStats s2{2.0, 5.0, 10};
  for (double c : {1.0, 0.1, 1e-6, 1e-12}) {
    auto g = pareto_gamma_update(ParetoGammaHyper{1.0, 1.0, c, 1.0}, s2);
    CHECK(g.shape == doctest::Approx(10.0 + c));
  }

  // smallest n with a proper reference posterior: Ga(1, 2) when
  // kappa_hat = 1 at n = 2
  SuffStats s3{1.0, std::exp(1.0), 2};
  auto g3 = reference_posterior(s3);
  CHECK(g3.shape == doctest::Approx(1.0));
  CHECK(g3.rate == doctest::Approx(2.0));

  SuffStats degenerate{3.0, 3.0, 5};
  CHECK_THROWS_AS(reference_posterior(degenerate), degenerate_sample_error);
  CHECK_THROWS_AS(
      pareto_gamma_update(ParetoGammaHyper{1.0, 1.0, 1.0, 1.0}, degenerate),
      degenerate_sample_error);

  // the conjugate rate reproduces the reference-limit likelihood algebra:
  // with b <= t2 the data contribution is n log(t2/t1) = n / kappa_hat
  SuffStats s4{std::exp(2.0 - 1.0 / 2.44), std::exp(2.0), 33};
  auto g4 = pareto_gamma_update(ParetoGammaHyper{1e-14, s4.t2, 1e-14, 1e-14}, s4);
  CHECK(g4.rate == doctest::Approx(33.0 / 2.44).epsilon(1e-9));

  // density of the posterior integrates to 1 and the mean is exact
  GammaPosterior g{32.0, 13.5246};
  double total = testutil::integrate([&](double x) { return pdf(g, x); }, 0.0,
                                     quantile(g, 1.0 - 1e-14));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g.mean() == doctest::Approx(32.0 / 13.5246));
}

TEST_CASE("sample rejects n = 0") {
  RandomStream rng(1);
  CHECK_THROWS_AS(sample(DistSpec{Gpd{0.0, 1.0}}, 0, rng), domain_error);
}
