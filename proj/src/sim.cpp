#include "singzone/sim.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace singzone {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Mode initial_mode(const Scenario& sc) {
  if (const auto* fixed = std::get_if<FixedMode>(&sc.policy)) return fixed->mode;
  const auto& zone = std::get<Switching>(sc.policy).zone;
  return classify(sc.initial(kTheta), sc.initial(kPhi), zone, Mode::YawPosition);
}

// Empty when the state is still acceptable.
std::optional<std::string> divergence_cause(const State14& s, const Scenario& sc) {
  if (!s.allFinite()) return "non-finite state";
  const double peak = s.cwiseAbs().maxCoeff();
  if (peak > sc.divergence_bound) {
    std::ostringstream os;
    os << "state magnitude " << peak << " exceeds " << sc.divergence_bound;
    return os.str();
  }
  if (!(std::abs(s(kTheta)) < kHalfPi - sc.margins.theta) ||
      !(std::abs(s(kPhi)) < kHalfPi - sc.margins.phi)) {
    std::ostringstream os;
    os << "attitude left the domain (theta = " << s(kTheta) << ", phi = " << s(kPhi) << ")";
    return os.str();
  }
  return std::nullopt;
}

bool outputs_settled(const State14& s, const Scenario& sc, Mode mode) {
  const OutputLayout& layout = output_layout(mode);
  const Eigen::Vector4d& ref = sc.refs.for_mode(mode);
  for (std::size_t i = 0; i < 4; ++i) {
    const LieChain chain =
        flow_taylor(layout.outputs[i], s, sc.params, layout.orders[i] - 1, sc.margins.theta);
    if (std::abs(chain[0] - ref(static_cast<Eigen::Index>(i))) > sc.convergence_tol) return false;
    for (int n = 1; n < chain.order() + 1; ++n) {
      if (std::abs(chain[n]) > sc.convergence_tol) return false;
    }
  }
  return true;
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Converged: return "CONVERGED";
    case Termination::TimeLimit: return "TIME_LIMIT";
    case Termination::Singular: return "SINGULAR";
    case Termination::Diverged: return "DIVERGED";
  }
  return "?";
}

void Scenario::validate() const {
  params.validate();
  if (!initial.allFinite()) throw ConfigError("initial state must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_final >= dt) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= dt");
  if (log_every < 1) throw ConfigError("log_every must be >= 1");
  if (initial(kZeta) == 0.0) {
    throw ConfigError("initial zeta must be nonzero: both controllers need zeta != 0");
  }
  if (!refs.yaw_position.allFinite() || !refs.attitude_altitude.allFinite()) {
    throw ConfigError("references must be finite");
  }
  if (const auto* sw = std::get_if<Switching>(&policy)) sw->zone.validate();
  if (!(divergence_bound > 0.0)) throw ConfigError("divergence bound must be positive");
}

State14 rk4_step(const State14& s, const VirtualInput& u, const QuadParams& p, double dt,
                 double theta_margin) {
  const State14 k1 = state_derivative(s, u, p, theta_margin);
  const State14 k2 = state_derivative(s + 0.5 * dt * k1, u, p, theta_margin);
  const State14 k3 = state_derivative(s + 0.5 * dt * k2, u, p, theta_margin);
  const State14 k4 = state_derivative(s + dt * k3, u, p, theta_margin);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

TimeSeries run_scenario(const Scenario& sc) {
  sc.validate();
  const auto* switching = std::get_if<Switching>(&sc.policy);
  const long steps = std::lround(sc.t_final / sc.dt);

  TimeSeries ts;
  State14 s = sc.initial;
  Mode mode = initial_mode(sc);

  auto finish = [&](double t, Termination cause, const std::string& detail) {
    ts.termination = cause;
    ts.final_time = t;
    ts.final_state = s;
    ts.final_mode = mode;
    ts.events.push_back({t, "termination", std::string(termination_name(cause)) +
                                               (detail.empty() ? "" : ": " + detail)});
  };

  for (long n = 0;; ++n) {
    const double t = static_cast<double>(n) * sc.dt;
    const bool last = n == steps;
    const bool log_row = last || n % sc.log_every == 0;

    if (auto cause = divergence_cause(s, sc)) {
      ts.rows.push_back({t, s, mode, VirtualInput::Constant(kNaN), kNaN, kNaN});
      finish(t, Termination::Diverged, *cause);
      return ts;
    }

    if (switching != nullptr) {
      const ModeDecision decision = step_mode(s, switching->zone, mode);
      if (decision.switched) {
        ts.events.push_back({t, "switch", std::string(mode_name(mode)) + "->" +
                                              mode_name(decision.mode)});
        ++ts.switch_count;
        mode = decision.mode;
      }
    }

    ControlOutput ctl;
    try {
      ctl = control_step(s, sc.params, sc.refs, sc.gains, mode, sc.margins, sc.threshold,
                         sc.yaw_position_coefficients);
    } catch (const SingularMatrix& e) {
      ts.rows.push_back({t, s, mode, VirtualInput::Constant(kNaN), e.det(), e.cond()});
      finish(t, Termination::Singular, e.what());
      return ts;
    } catch (const DomainError& e) {
      ts.rows.push_back({t, s, mode, VirtualInput::Constant(kNaN), kNaN, kNaN});
      finish(t, Termination::Diverged, e.what());
      return ts;
    }

    if (log_row) ts.rows.push_back({t, s, mode, ctl.u, ctl.system.det, ctl.system.cond});

    if (last) {
      const bool settled = outputs_settled(s, sc, mode);
      finish(t, settled ? Termination::Converged : Termination::TimeLimit, "");
      return ts;
    }

    try {
      s = rk4_step(s, ctl.u, sc.params, sc.dt, sc.margins.theta);
    } catch (const DomainError& e) {
      finish(t, Termination::Diverged, e.what());
      return ts;
    }
  }
}

}  // namespace singzone
