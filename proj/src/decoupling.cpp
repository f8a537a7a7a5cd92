#include "singzone/decoupling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "singzone/liederiv.hpp"

namespace singzone {

const char* mode_name(Mode mode) {
  return mode == Mode::YawPosition ? "YawPosition" : "AttitudeAltitude";
}

Mode parse_mode(const std::string& text) {
  if (text == "YawPosition" || text == "yawpos" || text == "yaw_position") {
    return Mode::YawPosition;
  }
  if (text == "AttitudeAltitude" || text == "altatt" || text == "attitude_altitude") {
    return Mode::AttitudeAltitude;
  }
  throw ConfigError("unknown mode '" + text + "'");
}

const char* coefficient_variant_name(CoefficientVariant v) {
  return v == CoefficientVariant::ChainRule ? "chain_rule" : "sphi_variant";
}

CoefficientVariant parse_coefficient_variant(const std::string& text) {
  if (text == "chain_rule") return CoefficientVariant::ChainRule;
  if (text == "sphi_variant") return CoefficientVariant::SphiVariant;
  throw ConfigError("coefficient variant must be 'chain_rule' or 'sphi_variant', got '" + text + "'");
}

CoefficientSet mno_coefficients(double psi, double theta, double phi) {
  const double spsi = std::sin(psi), cpsi = std::cos(psi);
  const double sth = std::sin(theta), cth = std::cos(theta);
  const double sphi = std::sin(phi), cphi = std::cos(phi);

  CoefficientSet c;
  c.a1 = cphi * cpsi * sth + sphi * spsi;
  c.a2 = cphi * spsi * sth - sphi * cpsi;
  c.a3 = cth * cphi;

  c.m1 = cpsi * sphi - spsi * sth * cphi;
  c.n1 = spsi * cphi - cpsi * sth * sphi;
  c.o1 = cpsi * cth * cphi;

  c.m2 = spsi * sphi + cpsi * sth * cphi;
  c.n2 = -cpsi * cphi - spsi * sth * sphi;
  c.o2 = spsi * cth * cphi;

  c.n3 = -cth * sphi;
  c.o3 = -sth * cphi;
  return c;
}

CoefficientSet mno_coefficients_sphi_variant(double psi, double theta, double phi) {
  CoefficientSet c = mno_coefficients(psi, theta, phi);
  const double spsi = std::sin(psi), cpsi = std::cos(psi);
  const double sth = std::sin(theta), sphi = std::sin(phi);
  c.m1 = cpsi * sphi - spsi * sth * sphi;
  c.m2 = spsi * sphi + cpsi * sth * sphi;
  return c;
}

bool DecouplingSystem::is_singular(const SingularityThreshold& threshold) const {
  if (!std::isfinite(cond) || cond > threshold.max_cond) return true;
  return std::abs(det) < threshold.min_relative_det * row_norm_product;
}

void update_diagnostics(DecouplingSystem& sys) {
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(sys.delta);
  sys.det = lu.determinant();
  sys.row_norm_product = sys.delta.rowwise().norm().prod();
  const double rcond = lu.rcond();
  sys.cond = (sys.det == 0.0 || !(rcond > 0.0)) ? std::numeric_limits<double>::infinity()
                                                : 1.0 / rcond;
}

void check_attitude_domain(const State14& s, const DomainMargins& margins) {
  check_theta_domain(s(kTheta), margins.theta);
  if (!(std::abs(s(kPhi)) < kHalfPi - margins.phi)) {
    throw DomainError("roll " + std::to_string(s(kPhi)) +
                      " outside the domain |phi| < pi/2 - " + std::to_string(margins.phi));
  }
}

Eigen::Matrix4d delta_from_coefficients(const CoefficientSet& c, const State14& s,
                                        const QuadParams& p) {
  const double theta = s(kTheta), phi = s(kPhi), zeta = s(kZeta);
  const double sphi = std::sin(phi), cphi = std::cos(phi);
  const double cth = std::cos(theta), tth = std::tan(theta);
  const double kx = p.d / p.ix, ky = p.d / p.iy, kz = p.d / p.iz;
  const double zm = zeta / p.m;

  // Coefficients of q' and r' in A'' for each thrust-axis row.
  const double q1 = c.m1 * sphi / cth + c.n1 * sphi * tth + c.o1 * cphi;
  const double r1 = c.m1 * cphi / cth + c.n1 * cphi * tth - c.o1 * sphi;
  const double q2 = c.m2 * sphi / cth + c.n2 * sphi * tth + c.o2 * cphi;
  const double r2 = c.m2 * cphi / cth + c.n2 * cphi * tth - c.o2 * sphi;
  const double q3 = c.n3 * sphi * tth + c.o3 * cphi;
  const double r3 = c.n3 * cphi * tth - c.o3 * sphi;

  Eigen::Matrix4d delta;
  delta << -c.a1 / p.m, -zm * c.n1 * kx, -zm * q1 * ky, -zm * r1 * kz,
           -c.a2 / p.m, -zm * c.n2 * kx, -zm * q2 * ky, -zm * r2 * kz,
           -c.a3 / p.m, -zm * c.n3 * kx, -zm * q3 * ky, -zm * r3 * kz,
           0.0,          0.0,             sphi / cth * ky, cphi / cth * kz;
  return delta;
}

DecouplingSystem delta_yawpos(const State14& s, const QuadParams& p,
                              const DomainMargins& margins, CoefficientVariant variant) {
  check_attitude_domain(s, margins);
  DecouplingSystem sys;
  sys.mode = Mode::YawPosition;
  const CoefficientSet c = variant == CoefficientVariant::ChainRule
                               ? mno_coefficients(s(kPsi), s(kTheta), s(kPhi))
                               : mno_coefficients_sphi_variant(s(kPsi), s(kTheta), s(kPhi));
  sys.delta = delta_from_coefficients(c, s, p);
  update_diagnostics(sys);
  return sys;
}

Eigen::Vector4d ma_yawpos(const State14& s, const QuadParams& p, const DomainMargins& margins) {
  check_attitude_domain(s, margins);
  return {flow_taylor(OutputSelector::X, s, p, 4, margins.theta)[4],
          flow_taylor(OutputSelector::Y, s, p, 4, margins.theta)[4],
          flow_taylor(OutputSelector::Z, s, p, 4, margins.theta)[4],
          flow_taylor(OutputSelector::Psi, s, p, 2, margins.theta)[2]};
}

DecouplingSystem yaw_position_system(const State14& s, const QuadParams& p,
                                     const DomainMargins& margins, CoefficientVariant variant) {
  DecouplingSystem sys = delta_yawpos(s, p, margins, variant);
  sys.ma = ma_yawpos(s, p, margins);
  return sys;
}

VirtualInput invert_delta(const DecouplingSystem& sys, const Eigen::Vector4d& v,
                          const SingularityThreshold& threshold) {
  if (sys.is_singular(threshold)) {
    throw SingularMatrix(std::string(mode_name(sys.mode)) +
                             " decoupling matrix is singular (det = " + std::to_string(sys.det) +
                             ", cond = " + std::to_string(sys.cond) + ")",
                         sys.det, sys.cond);
  }
  const Eigen::Vector4d rhs = sys.ma ? Eigen::Vector4d(v - *sys.ma) : v;
  return sys.delta.partialPivLu().solve(rhs);
}

}  // namespace singzone
