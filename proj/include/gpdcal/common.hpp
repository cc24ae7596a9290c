#pragma once

#include <string>

namespace gpdcal {

struct Interval {
  double lower;
  double upper;
  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

/// How a Bayes-rule point estimate is computed: full numeric minimization of
/// the expected loss, or the closed-form large-sample approximation.
enum class FitMode { numeric, approximation };

/// Calibration approaches handled by the tail pipeline and the study harness.
enum class Method { bri, mle, pwm, jeffreys };

std::string to_string(Method m);
std::string to_string(FitMode m);
Method method_from_string(const std::string& s);

}  // namespace gpdcal
