#ifndef SINGZONE_CONTROL_HPP
#define SINGZONE_CONTROL_HPP

// Feedback-linearizing control laws for the two output sets and the linear
// tracking law on the resulting integrator chains.

#include <array>

#include <Eigen/Core>

#include "singzone/decoupling.hpp"
#include "singzone/liederiv.hpp"
#include "singzone/model.hpp"

namespace singzone {

/// Outputs and chain lengths of a mode: (x, y, z, psi) with (4, 4, 4, 2) or
/// (z, phi, theta, psi) with (4, 2, 2, 2).
struct OutputLayout {
  std::array<OutputSelector, 4> outputs;
  std::array<int, 4> orders;
};

const OutputLayout& output_layout(Mode mode);

/// Coefficients (g0, ..., g_{k-1}) of (s - pole)^k without the leading s^k.
Eigen::VectorXd gains_from_repeated_pole(int degree, double pole);

/// True iff s^k + g_{k-1} s^{k-1} + ... + g0 has all roots in the open left half plane.
bool is_hurwitz(const Eigen::VectorXd& gains);

class GainSet {
 public:
  using ModeGains = std::array<Eigen::VectorXd, 4>;

  /// All chains with every pole at `pole`.
  static GainSet from_poles(double pole = -2.0);
  /// One repeated pole per output, in output_layout order.
  static GainSet from_poles(const std::array<double, 4>& yaw_position,
                            const std::array<double, 4>& attitude_altitude);

  /// Throws ConfigError on wrong chain lengths or non-Hurwitz gains.
  GainSet(ModeGains yaw_position, ModeGains attitude_altitude);

  const ModeGains& for_mode(Mode mode) const {
    return mode == Mode::YawPosition ? yaw_position_ : attitude_altitude_;
  }

 private:
  ModeGains yaw_position_;
  ModeGains attitude_altitude_;
};

/// Setpoints per mode: (x, y, z, psi) and (z, phi, theta, psi).
struct ReferenceSet {
  Eigen::Vector4d yaw_position = Eigen::Vector4d::Zero();
  Eigen::Vector4d attitude_altitude = Eigen::Vector4d::Zero();

  const Eigen::Vector4d& for_mode(Mode mode) const {
    return mode == Mode::YawPosition ? yaw_position : attitude_altitude;
  }
};

/// v_i = sum_n g_n (ref^(n) - y^(n)) with reference derivatives zero.
Eigen::Vector4d outer_loop_v(const State14& s, const QuadParams& p, const ReferenceSet& refs,
                             const GainSet& gains, Mode mode,
                             const DomainMargins& margins = {});

/// Decoupling system for outputs (z, phi, theta, psi), rows from the jet engine.
DecouplingSystem delta_altatt(const State14& s, const QuadParams& p,
                              const DomainMargins& margins = {});

/// Full (Delta, Ma) for a mode; `variant` only affects YawPosition.
DecouplingSystem decoupling_system(Mode mode, const State14& s, const QuadParams& p,
                                   const DomainMargins& margins = {},
                                   CoefficientVariant variant = CoefficientVariant::ChainRule);

struct ControlOutput {
  VirtualInput u = VirtualInput::Zero();
  Eigen::Vector4d v = Eigen::Vector4d::Zero();
  DecouplingSystem system;
};

/// Outer loop and inversion in one call; exposes the decoupling system for logging.
ControlOutput control_step(const State14& s, const QuadParams& p, const ReferenceSet& refs,
                           const GainSet& gains, Mode mode, const DomainMargins& margins = {},
                           const SingularityThreshold& threshold = {},
                           CoefficientVariant variant = CoefficientVariant::ChainRule);

/// u = Delta^-1 (v - Ma).
VirtualInput fl_law(const State14& s, const QuadParams& p, const ReferenceSet& refs,
                    const GainSet& gains, Mode mode, const DomainMargins& margins = {},
                    const SingularityThreshold& threshold = {});

}  // namespace singzone

#endif  // SINGZONE_CONTROL_HPP
