#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "gpdcal/detail/optimize.hpp"
#include "gpdcal/errors.hpp"

namespace gpdcal::detail {

struct LevelSetRegion {
  double level = 0.0;
  double mass = 0.0;
  bool unimodal = true;
  /// Segments of {x : loss(x) <= level}, ascending and disjoint. A unimodal
  /// loss yields exactly one segment.
  std::vector<std::pair<double, double>> segments;

  double lower() const { return segments.front().first; }
  double upper() const { return segments.back().second; }
};

/// Region of lowest loss holding posterior mass p: finds the loss level
/// lambda such that {x : loss(x) <= lambda} has mass p under the law with
/// the given cdf/quantile, by bisection on lambda. The loss is probed on a
/// quantile grid; if it is not unimodal there, the region is assembled as a
/// union of intervals instead of a single one.
template <class Loss, class Cdf, class Quantile>
LevelSetRegion lowest_loss_region(Loss&& loss, Cdf&& cdf, Quantile&& quantile,
                                  double minimizer, double p,
                                  double mass_tol = 1e-6,
                                  std::size_t grid_size = 129) {
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("lowest_loss_region: p must lie in (0, 1)");
  }

  constexpr double q_eps = 1e-9;
  const double x_min = quantile(q_eps);
  const double x_max = quantile(1.0 - q_eps);

  // Probe the loss on a quantile-spaced grid plus the minimizer itself.
  std::vector<double> xs;
  xs.reserve(grid_size + 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    double u = q_eps + (1.0 - 2.0 * q_eps) * static_cast<double>(i) /
                           static_cast<double>(grid_size - 1);
    xs.push_back(quantile(u));
  }
  if (minimizer > x_min && minimizer < x_max) {
    auto it = std::lower_bound(xs.begin(), xs.end(), minimizer);
    xs.insert(it, minimizer);
  }
  std::vector<double> ls(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ls[i] = loss(xs[i]);

  std::size_t arg = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (ls[i] < ls[arg]) arg = i;
  }
  bool unimodal = true;
  const double slack = 1e-12 * (std::abs(ls[arg]) + 1.0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (i < arg && ls[i + 1] > ls[i] + slack) unimodal = false;
    if (i >= arg && ls[i + 1] < ls[i] - slack) unimodal = false;
  }

  const double d_min = std::min(ls[arg], loss(minimizer));
  const double x_tol = 1e-11 * (std::abs(x_max - x_min) + 1.0);

  auto region_at = [&](double lambda) {
    std::vector<std::pair<double, double>> segs;
    if (unimodal) {
      double center = xs[arg];
      double lo = x_min;
      if (loss(x_min) > lambda) {
        lo = bisect_root([&](double x) { return loss(x) - lambda; }, x_min,
                         center, x_tol);
      }
      double hi = x_max;
      if (loss(x_max) > lambda) {
        hi = bisect_root([&](double x) { return loss(x) - lambda; }, center,
                         x_max, x_tol);
      }
      segs.emplace_back(lo, hi);
    } else {
      // Scan grid cells for sign changes of loss - lambda and refine each.
      bool inside = ls.front() <= lambda;
      double start = inside ? x_min : 0.0;
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        bool next_inside = ls[i + 1] <= lambda;
        if (next_inside != inside) {
          double crossing =
              bisect_root([&](double x) { return loss(x) - lambda; }, xs[i],
                          xs[i + 1], x_tol);
          if (next_inside) {
            start = crossing;
          } else {
            segs.emplace_back(start, crossing);
          }
          inside = next_inside;
        }
      }
      if (inside) segs.emplace_back(start, x_max);
    }
    double mass = 0.0;
    for (auto& [a, b] : segs) mass += cdf(b) - cdf(a);
    return std::pair{segs, mass};
  };

  // Expand the level until the region holds at least mass p, then bisect.
  double lam_lo = d_min;
  double lam_hi = d_min + 1.0;
  double mass_hi = region_at(lam_hi).second;
  int guard = 0;
  while (mass_hi < p && guard++ < 200) {
    lam_hi = d_min + 2.0 * (lam_hi - d_min);
    mass_hi = region_at(lam_hi).second;
  }
  if (mass_hi < p) {
    throw domain_error("lowest_loss_region: level search failed to reach p");
  }

  LevelSetRegion out;
  out.unimodal = unimodal;
  for (int i = 0; i < 200; ++i) {
    double lam = 0.5 * (lam_lo + lam_hi);
    auto [segs, mass] = region_at(lam);
    if (std::abs(mass - p) <= mass_tol) {
      out.level = lam;
      out.mass = mass;
      out.segments = std::move(segs);
      return out;
    }
    if (mass < p) {
      lam_lo = lam;
    } else {
      lam_hi = lam;
    }
  }
  auto [segs, mass] = region_at(lam_hi);
  out.level = lam_hi;
  out.mass = mass;
  out.segments = std::move(segs);
  return out;
}

}  // namespace gpdcal::detail
