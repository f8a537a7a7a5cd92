#include "singzone/supervisor.hpp"

#include <cmath>

namespace singzone {

void ZoneSpec::validate() const {
  const bool finite = std::isfinite(theta_min) && std::isfinite(theta_max) &&
                      std::isfinite(phi_min) && std::isfinite(phi_max) && std::isfinite(hysteresis);
  if (!finite || !(theta_min < theta_max) || !(phi_min < phi_max) || hysteresis < 0.0) {
    throw ConfigError("zone needs finite bounds with min < max and hysteresis >= 0");
  }
}

Mode classify(double theta, double phi, const ZoneSpec& spec, Mode current) {
  const double h = current == Mode::AttitudeAltitude ? spec.hysteresis : 0.0;
  const bool inside = theta >= spec.theta_min - h && theta <= spec.theta_max + h &&
                      phi >= spec.phi_min - h && phi <= spec.phi_max + h;
  return inside ? Mode::AttitudeAltitude : Mode::YawPosition;
}

ModeDecision step_mode(const State14& s, const ZoneSpec& spec, Mode current) {
  const Mode next = classify(s(kTheta), s(kPhi), spec, current);
  return {next, next != current};
}

}  // namespace singzone
