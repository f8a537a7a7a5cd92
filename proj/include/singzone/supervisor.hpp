#ifndef SINGZONE_SUPERVISOR_HPP
#define SINGZONE_SUPERVISOR_HPP

#include "singzone/decoupling.hpp"
#include "singzone/model.hpp"

namespace singzone {

/// Closed attitude box handed to the attitude-altitude controller.
struct ZoneSpec {
  double theta_min = -0.5;
  double theta_max = 0.5;
  double phi_min = -kHalfPi + DomainMargins{}.phi;
  double phi_max = 0.2;
  /// Box expansion applied while the attitude-altitude controller is active.
  double hysteresis = 0.0;

  void validate() const;
};

Mode classify(double theta, double phi, const ZoneSpec& spec, Mode current);

struct ModeDecision {
  Mode mode;
  bool switched;
};

ModeDecision step_mode(const State14& s, const ZoneSpec& spec, Mode current);

}  // namespace singzone

#endif  // SINGZONE_SUPERVISOR_HPP
