#ifndef SINGZONE_LIEDERIV_HPP
#define SINGZONE_LIEDERIV_HPP

// Lie derivatives of state-component outputs along the drift field, computed
// by propagating truncated Taylor jets through the dynamics. Input couplings
// L_{g_j} L_f^{k-1} h ride along as dual-number tangents seeded with the
// constant input fields g_j.

#include <Eigen/Core>

#include "singzone/model.hpp"

namespace singzone {

inline constexpr int kMaxLieOrder = 4;

enum class OutputSelector { X, Y, Z, Psi, Theta, Phi };

Eigen::Index output_index(OutputSelector h);
const char* output_name(OutputSelector h);

/// [h, L_f h, ..., L_f^k h].
struct LieChain {
  Eigen::VectorXd values;

  int order() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int j) const { return values(j); }
};

/// One row of y^(k) = Ma + Delta u.
struct NumericRow {
  double ma = 0.0;
  Eigen::Vector4d coefficients = Eigen::Vector4d::Zero();
};

LieChain flow_taylor(OutputSelector h, const State14& s, const QuadParams& p, int k,
                     double theta_margin = DomainMargins{}.theta);

/// L_{g_j} L_f^{k-1} h with j in 0..3 (input u1b..u4b).
double input_coupling(OutputSelector h, const State14& s, const QuadParams& p, int k, int j,
                      double theta_margin = DomainMargins{}.theta);

NumericRow numeric_row(OutputSelector h, const State14& s, const QuadParams& p, int k,
                       double theta_margin = DomainMargins{}.theta);

/// Normalized Taylor coefficients of the drift flow through s: column n holds x^(n)(0)/n!.
Eigen::Matrix<double, kStateDim, kMaxLieOrder + 1> drift_taylor_coefficients(
    const State14& s, const QuadParams& p, int k, double theta_margin = DomainMargins{}.theta);

}  // namespace singzone

#endif  // SINGZONE_LIEDERIV_HPP
