#ifndef SINGZONE_SIM_HPP
#define SINGZONE_SIM_HPP

// Fixed-step RK4 closed-loop simulation. The controller runs once per step and
// its output is held over the step (zero-order hold).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "singzone/control.hpp"
#include "singzone/decoupling.hpp"
#include "singzone/model.hpp"
#include "singzone/supervisor.hpp"

namespace singzone {

struct FixedMode {
  Mode mode = Mode::YawPosition;
};

struct Switching {
  ZoneSpec zone;
};

using ModePolicy = std::variant<FixedMode, Switching>;

struct Scenario {
  std::string name;
  QuadParams params;
  State14 initial = State14::Zero();
  ModePolicy policy = FixedMode{};
  ReferenceSet refs;
  GainSet gains = GainSet::from_poles(-2.0);
  double dt = 1e-3;
  double t_final = 10.0;
  int log_every = 1;
  DomainMargins margins;
  SingularityThreshold threshold;
  /// Coefficient set behind the yaw-position decoupling matrix.
  CoefficientVariant yaw_position_coefficients = CoefficientVariant::ChainRule;
  double divergence_bound = 1e6;
  /// Active outputs and their chain derivatives must all be within this of
  /// the setpoint at t_final for the run to count as converged.
  double convergence_tol = 1e-3;

  /// Throws ConfigError.
  void validate() const;
};

enum class Termination { Converged, TimeLimit, Singular, Diverged };

const char* termination_name(Termination t);

struct TimeSeriesRow {
  double t = 0.0;
  State14 state = State14::Zero();
  Mode mode = Mode::YawPosition;
  VirtualInput u = VirtualInput::Zero();
  double det = 0.0;
  double cond = 0.0;
};

struct Event {
  double t = 0.0;
  std::string kind;
  std::string detail;
};

struct TimeSeries {
  std::vector<TimeSeriesRow> rows;
  std::vector<Event> events;
  Termination termination = Termination::TimeLimit;
  int switch_count = 0;
  double final_time = 0.0;
  State14 final_state = State14::Zero();
  Mode final_mode = Mode::YawPosition;
};

State14 rk4_step(const State14& s, const VirtualInput& u, const QuadParams& p, double dt,
                 double theta_margin = DomainMargins{}.theta);

TimeSeries run_scenario(const Scenario& sc);

}  // namespace singzone

#endif  // SINGZONE_SIM_HPP
