#ifndef SINGZONE_MODEL_HPP
#define SINGZONE_MODEL_HPP

// Augmented quadrotor dynamics with the thrust double integrator
// (u1 = zeta, zeta' = xi, xi' = u1b). Frame convention: vz' = g - A3 zeta / m,
// i.e. z grows under zero thrust.

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "singzone/errors.hpp"
#include "singzone/jet.hpp"

namespace singzone {

inline constexpr int kStateDim = 14;

/// Field order of the augmented state vector.
enum StateIndex : Eigen::Index {
  kX = 0,
  kY,
  kZ,
  kPsi,
  kTheta,
  kPhi,
  kVx,
  kVy,
  kVz,
  kZeta,
  kXi,
  kP,
  kQ,
  kR
};

template <typename Scalar>
using StateVector = Eigen::Matrix<Scalar, kStateDim, 1>;

using State14 = StateVector<double>;
using StateDerivative = StateVector<double>;

/// Virtual inputs (u1b, u2b, u3b, u4b).
using VirtualInput = Eigen::Vector4d;

struct QuadParams {
  double m = 1.0;
  double d = 0.3;
  double ix = 0.02;
  double iy = 0.02;
  double iz = 0.04;
  double g = 9.81;

  /// Throws ConfigError unless every constant is strictly positive and finite.
  void validate() const;
};

/// Angular margins that keep evaluation away from theta, phi = +-pi/2.
struct DomainMargins {
  double theta = 1e-6;
  double phi = 1e-6;
};

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Hover equilibrium at the origin: level attitude, zeta = m g.
State14 hover_state(const QuadParams& p);

/// Zero state (so zero thrust).
State14 rest_state();

/// Throws DomainError if any component is non-finite.
void require_finite(const State14& s, const char* what);

/// Field names in serialization order.
const char* state_field_name(Eigen::Index i);

/// Thrust-axis coefficients (A1, A2, A3): the third column of the body-to-earth rotation.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> thrust_axis(const Scalar& psi, const Scalar& theta,
                                        const Scalar& phi) {
  using std::cos;
  using std::sin;
  const Scalar spsi = sin(psi), cpsi = cos(psi);
  const Scalar sth = sin(theta), cth = cos(theta);
  const Scalar sphi = sin(phi), cphi = cos(phi);
  Eigen::Matrix<Scalar, 3, 1> a;
  a(0) = cphi * cpsi * sth + sphi * spsi;
  a(1) = cphi * spsi * sth - sphi * cpsi;
  a(2) = cth * cphi;
  return a;
}

inline void check_theta_domain(double theta, double margin) {
  if (!(std::abs(theta) < kHalfPi - margin)) {
    throw DomainError("pitch " + std::to_string(theta) +
                      " outside the Euler-kinematics domain |theta| < pi/2 - " +
                      std::to_string(margin));
  }
}

/// Drift field f of the input-affine dynamics x' = f(x) + sum_i g_i u_i.
template <typename Scalar>
StateVector<Scalar> drift_field(const StateVector<Scalar>& s, const QuadParams& p,
                                double theta_margin = DomainMargins{}.theta) {
  using std::cos;
  using std::sin;
  check_theta_domain(scalar_value(s(kTheta)), theta_margin);

  const Scalar& theta = s(kTheta);
  const Scalar& phi = s(kPhi);
  const Scalar& zeta = s(kZeta);
  const Scalar& pr = s(kP);
  const Scalar& qr = s(kQ);
  const Scalar& rr = s(kR);

  const Scalar sth = sin(theta), cth = cos(theta);
  const Scalar sphi = sin(phi), cphi = cos(phi);
  const Scalar tth = sth / cth;
  const Eigen::Matrix<Scalar, 3, 1> a = thrust_axis<Scalar>(s(kPsi), theta, phi);

  StateVector<Scalar> f;
  f(kX) = s(kVx);
  f(kY) = s(kVy);
  f(kZ) = s(kVz);
  f(kPsi) = sphi / cth * qr + cphi / cth * rr;
  f(kTheta) = cphi * qr - sphi * rr;
  f(kPhi) = pr + sphi * tth * qr + cphi * tth * rr;
  f(kVx) = -(a(0) * zeta) / p.m;
  f(kVy) = -(a(1) * zeta) / p.m;
  f(kVz) = p.g - (a(2) * zeta) / p.m;
  f(kZeta) = s(kXi);
  f(kXi) = Scalar(0.0);
  f(kP) = (p.iy - p.iz) / p.ix * (qr * rr);
  f(kQ) = (p.iz - p.ix) / p.iy * (pr * rr);
  f(kR) = (p.ix - p.iy) / p.iz * (pr * qr);
  return f;
}

/// Index of the single nonzero entry of the constant input field g_j (j = 0..3).
Eigen::Index input_field_index(int j);

/// Gain of the constant input field g_j: 1, d/Ix, d/Iy, d/Iz.
double input_field_gain(int j, const QuadParams& p);

/// x' = f(x) + sum_j g_j u_j.
StateDerivative state_derivative(const State14& s, const VirtualInput& u, const QuadParams& p,
                                 double theta_margin = DomainMargins{}.theta);

}  // namespace singzone

#endif  // SINGZONE_MODEL_HPP
