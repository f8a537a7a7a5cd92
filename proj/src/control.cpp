#include "singzone/control.hpp"

#include <string>

#include <Eigen/Eigenvalues>

namespace singzone {

const OutputLayout& output_layout(Mode mode) {
  static const OutputLayout yaw_position{
      {OutputSelector::X, OutputSelector::Y, OutputSelector::Z, OutputSelector::Psi},
      {4, 4, 4, 2}};
  static const OutputLayout attitude_altitude{
      {OutputSelector::Z, OutputSelector::Phi, OutputSelector::Theta, OutputSelector::Psi},
      {4, 2, 2, 2}};
  return mode == Mode::YawPosition ? yaw_position : attitude_altitude;
}

Eigen::VectorXd gains_from_repeated_pole(int degree, double pole) {
  // Expand (s - pole)^k; poly(n) is the coefficient of s^n.
  Eigen::VectorXd poly = Eigen::VectorXd::Zero(degree + 1);
  poly(0) = 1.0;
  for (int k = 0; k < degree; ++k) {
    for (int n = k + 1; n >= 1; --n) poly(n) = poly(n - 1) - pole * poly(n);
    poly(0) = -pole * poly(0);
  }
  return poly.head(degree);
}

bool is_hurwitz(const Eigen::VectorXd& gains) {
  const Eigen::Index k = gains.size();
  if (k == 0 || !gains.allFinite()) return false;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  companion.topRightCorner(k - 1, k - 1).setIdentity();
  companion.row(k - 1) = -gains.transpose();
  const Eigen::VectorXcd roots = companion.eigenvalues();
  return (roots.real().array() < 0.0).all();
}

GainSet GainSet::from_poles(double pole) {
  return from_poles({pole, pole, pole, pole}, {pole, pole, pole, pole});
}

GainSet GainSet::from_poles(const std::array<double, 4>& yaw_position,
                            const std::array<double, 4>& attitude_altitude) {
  ModeGains yp, aa;
  for (std::size_t i = 0; i < 4; ++i) {
    yp[i] = gains_from_repeated_pole(output_layout(Mode::YawPosition).orders[i], yaw_position[i]);
    aa[i] = gains_from_repeated_pole(output_layout(Mode::AttitudeAltitude).orders[i],
                                     attitude_altitude[i]);
  }
  return GainSet(std::move(yp), std::move(aa));
}

GainSet::GainSet(ModeGains yaw_position, ModeGains attitude_altitude)
    : yaw_position_(std::move(yaw_position)), attitude_altitude_(std::move(attitude_altitude)) {
  for (Mode mode : {Mode::YawPosition, Mode::AttitudeAltitude}) {
    const OutputLayout& layout = output_layout(mode);
    const ModeGains& g = for_mode(mode);
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string where = std::string(mode_name(mode)) + " output " +
                                output_name(layout.outputs[i]);
      if (g[i].size() != layout.orders[i]) {
        throw ConfigError(where + " needs " + std::to_string(layout.orders[i]) + " gains");
      }
      if (!is_hurwitz(g[i])) throw ConfigError(where + " gains are not Hurwitz");
    }
  }
}

Eigen::Vector4d outer_loop_v(const State14& s, const QuadParams& p, const ReferenceSet& refs,
                             const GainSet& gains, Mode mode, const DomainMargins& margins) {
  const OutputLayout& layout = output_layout(mode);
  const Eigen::Vector4d& ref = refs.for_mode(mode);
  const GainSet::ModeGains& g = gains.for_mode(mode);
  Eigen::Vector4d v;
  for (std::size_t i = 0; i < 4; ++i) {
    const int k = layout.orders[i];
    const LieChain chain = flow_taylor(layout.outputs[i], s, p, k - 1, margins.theta);
    double vi = g[i](0) * (ref(static_cast<Eigen::Index>(i)) - chain[0]);
    for (int n = 1; n < k; ++n) vi -= g[i](n) * chain[n];
    v(static_cast<Eigen::Index>(i)) = vi;
  }
  return v;
}

DecouplingSystem delta_altatt(const State14& s, const QuadParams& p,
                              const DomainMargins& margins) {
  check_attitude_domain(s, margins);
  const OutputLayout& layout = output_layout(Mode::AttitudeAltitude);
  DecouplingSystem sys;
  sys.mode = Mode::AttitudeAltitude;
  Eigen::Vector4d ma;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const NumericRow row = numeric_row(layout.outputs[static_cast<std::size_t>(i)], s, p,
                                       layout.orders[static_cast<std::size_t>(i)], margins.theta);
    ma(i) = row.ma;
    sys.delta.row(i) = row.coefficients.transpose();
  }
  sys.ma = ma;
  update_diagnostics(sys);
  return sys;
}

DecouplingSystem decoupling_system(Mode mode, const State14& s, const QuadParams& p,
                                   const DomainMargins& margins, CoefficientVariant variant) {
  return mode == Mode::YawPosition ? yaw_position_system(s, p, margins, variant)
                                   : delta_altatt(s, p, margins);
}

ControlOutput control_step(const State14& s, const QuadParams& p, const ReferenceSet& refs,
                           const GainSet& gains, Mode mode, const DomainMargins& margins,
                           const SingularityThreshold& threshold,
                           CoefficientVariant variant) {
  ControlOutput out;
  out.system = decoupling_system(mode, s, p, margins, variant);
  out.v = outer_loop_v(s, p, refs, gains, mode, margins);
  out.u = invert_delta(out.system, out.v, threshold);
  return out;
}

VirtualInput fl_law(const State14& s, const QuadParams& p, const ReferenceSet& refs,
                    const GainSet& gains, Mode mode, const DomainMargins& margins,
                    const SingularityThreshold& threshold) {
  return control_step(s, p, refs, gains, mode, margins, threshold).u;
}

}  // namespace singzone
