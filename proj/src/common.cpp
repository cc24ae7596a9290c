#include "gpdcal/common.hpp"

#include "gpdcal/errors.hpp"

namespace gpdcal {

std::string to_string(Method m) {
  switch (m) {
    case Method::bri: return "bri";
    case Method::mle: return "mle";
    case Method::pwm: return "pwm";
    case Method::jeffreys: return "jeffreys";
  }
  return "?";
}

std::string to_string(FitMode m) {
  return m == FitMode::numeric ? "numeric" : "approximation";
}

Method method_from_string(const std::string& s) {
  if (s == "bri") return Method::bri;
  if (s == "mle") return Method::mle;
  if (s == "pwm") return Method::pwm;
  if (s == "jeffreys") return Method::jeffreys;
  throw parameter_error("unknown method '" + s +
                        "' (expected bri, mle, pwm or jeffreys)");
}

}  // namespace gpdcal
