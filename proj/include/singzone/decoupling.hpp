#ifndef SINGZONE_DECOUPLING_HPP
#define SINGZONE_DECOUPLING_HPP

// Closed-form yaw-position decoupling matrix and guarded inversion of the
// linearizing form y^(k) = Ma(x) + Delta(x) u.

#include <optional>

#include <Eigen/Core>

#include "singzone/model.hpp"

namespace singzone {

enum class Mode { YawPosition, AttitudeAltitude };

const char* mode_name(Mode mode);
/// Accepts "YawPosition"/"yawpos"/"yaw_position" and the attitude-altitude equivalents.
Mode parse_mode(const std::string& text);

/// Thrust-axis coefficients and their partial derivatives with respect to
/// psi (m), phi (n) and theta (o).
struct CoefficientSet {
  double a1 = 0, a2 = 0, a3 = 0;
  double m1 = 0, n1 = 0, o1 = 0;
  double m2 = 0, n2 = 0, o2 = 0;
  double n3 = 0, o3 = 0;
};

/// Coefficients consistent with differentiating A1..A3: m1 = dA1/dpsi, n1 = dA1/dphi, ...
CoefficientSet mno_coefficients(double psi, double theta, double phi);

/// Alternate m1, m2 with sphi in place of cphi in the stheta term
/// (m1 = cpsi sphi - spsi stheta sphi, m2 = spsi sphi + cpsi stheta sphi).
/// These differ from dA/dpsi whenever spsi stheta or cpsi stheta is nonzero.
CoefficientSet mno_coefficients_sphi_variant(double psi, double theta, double phi);

/// Which coefficient set the closed-form Delta is assembled from.
enum class CoefficientVariant { ChainRule, SphiVariant };

const char* coefficient_variant_name(CoefficientVariant v);
CoefficientVariant parse_coefficient_variant(const std::string& text);

struct SingularityThreshold {
  double max_cond = 1e8;
  /// Relative to the product of the row 2-norms.
  double min_relative_det = 1e-12;
};

struct DecouplingSystem {
  Mode mode = Mode::YawPosition;
  Eigen::Matrix4d delta = Eigen::Matrix4d::Zero();
  std::optional<Eigen::Vector4d> ma;
  double det = 0.0;
  /// 1-norm condition estimate from the LU factorization; +inf when exactly singular.
  double cond = 0.0;
  double row_norm_product = 0.0;

  bool is_singular(const SingularityThreshold& threshold = {}) const;
};

/// Fills det, cond and row_norm_product from delta.
void update_diagnostics(DecouplingSystem& sys);

/// Delta assembled entry by entry from a coefficient set.
Eigen::Matrix4d delta_from_coefficients(const CoefficientSet& c, const State14& s,
                                        const QuadParams& p);

void check_attitude_domain(const State14& s, const DomainMargins& margins);

/// Closed-form Delta for outputs (x, y, z, psi); ma left empty.
DecouplingSystem delta_yawpos(const State14& s, const QuadParams& p,
                              const DomainMargins& margins = {},
                              CoefficientVariant variant = CoefficientVariant::ChainRule);

/// Drift vector (L_f^4 x, L_f^4 y, L_f^4 z, L_f^2 psi) from the jet engine.
Eigen::Vector4d ma_yawpos(const State14& s, const QuadParams& p,
                          const DomainMargins& margins = {});

/// delta_yawpos with ma filled.
DecouplingSystem yaw_position_system(const State14& s, const QuadParams& p,
                                     const DomainMargins& margins = {},
                                     CoefficientVariant variant = CoefficientVariant::ChainRule);

/// Solves Delta u = v - Ma. Throws SingularMatrix when the threshold rejects Delta.
VirtualInput invert_delta(const DecouplingSystem& sys, const Eigen::Vector4d& v,
                          const SingularityThreshold& threshold = {});

}  // namespace singzone

#endif  // SINGZONE_DECOUPLING_HPP
