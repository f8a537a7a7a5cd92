#include "singzone/liederiv.hpp"

#include <string>

#include "singzone/jet.hpp"

namespace singzone {

namespace {

constexpr double kFactorial[kMaxLieOrder + 1] = {1.0, 1.0, 2.0, 6.0, 24.0};

void check_order(int k, int min_order) {
  if (k < min_order || k > kMaxLieOrder) {
    throw OrderError("Lie derivative order " + std::to_string(k) + " outside [" +
                     std::to_string(min_order) + ", " + std::to_string(kMaxLieOrder) + "]");
  }
}

// Picard-style coefficient sweep: coefficient n of f(x(t)) only needs x_0..x_n,
// so x_{n+1} = f_n / (n + 1) can be filled one degree at a time.
template <typename T>
std::array<StateVector<T>, kMaxLieOrder + 1> taylor_sweep(const StateVector<T>& x0,
                                                          const QuadParams& p, int k,
                                                          double theta_margin) {
  using J = Jet<T, kMaxLieOrder>;
  std::array<StateVector<T>, kMaxLieOrder + 1> coeff;
  for (auto& c : coeff) c.setConstant(T(0.0));
  coeff[0] = x0;

  StateVector<J> xj;
  for (Eigen::Index i = 0; i < kStateDim; ++i) xj(i) = J(x0(i));

  for (int n = 0; n < k; ++n) {
    const StateVector<J> f = drift_field<J>(xj, p, theta_margin);
    for (Eigen::Index i = 0; i < kStateDim; ++i) {
      coeff[n + 1](i) = f(i).c[n] / static_cast<double>(n + 1);
      xj(i).c[n + 1] = coeff[n + 1](i);
    }
  }
  return coeff;
}

}  // namespace

Eigen::Index output_index(OutputSelector h) {
  switch (h) {
    case OutputSelector::X: return kX;
    case OutputSelector::Y: return kY;
    case OutputSelector::Z: return kZ;
    case OutputSelector::Psi: return kPsi;
    case OutputSelector::Theta: return kTheta;
    case OutputSelector::Phi: return kPhi;
  }
  throw std::invalid_argument("unknown output selector");
}

const char* output_name(OutputSelector h) { return state_field_name(output_index(h)); }

Eigen::Matrix<double, kStateDim, kMaxLieOrder + 1> drift_taylor_coefficients(
    const State14& s, const QuadParams& p, int k, double theta_margin) {
  check_order(k, 0);
  const auto coeff = taylor_sweep<double>(s, p, k, theta_margin);
  Eigen::Matrix<double, kStateDim, kMaxLieOrder + 1> out;
  for (int n = 0; n <= kMaxLieOrder; ++n) out.col(n) = coeff[n];
  return out;
}

LieChain flow_taylor(OutputSelector h, const State14& s, const QuadParams& p, int k,
                     double theta_margin) {
  check_order(k, 0);
  const auto coeff = taylor_sweep<double>(s, p, k, theta_margin);
  const Eigen::Index idx = output_index(h);
  LieChain chain;
  chain.values.resize(k + 1);
  for (int n = 0; n <= k; ++n) chain.values(n) = kFactorial[n] * coeff[n](idx);
  return chain;
}

double input_coupling(OutputSelector h, const State14& s, const QuadParams& p, int k, int j,
                      double theta_margin) {
  check_order(k, 1);
  using D = Dual<1>;
  StateVector<D> x0;
  for (Eigen::Index i = 0; i < kStateDim; ++i) x0(i) = D(s(i));
  x0(input_field_index(j)).d[0] = input_field_gain(j, p);

  const auto coeff = taylor_sweep<D>(x0, p, k - 1, theta_margin);
  return kFactorial[k - 1] * coeff[k - 1](output_index(h)).d[0];
}

NumericRow numeric_row(OutputSelector h, const State14& s, const QuadParams& p, int k,
                       double theta_margin) {
  check_order(k, 1);
  using D = Dual<4>;
  StateVector<D> x0;
  for (Eigen::Index i = 0; i < kStateDim; ++i) x0(i) = D(s(i));
  for (int j = 0; j < 4; ++j) x0(input_field_index(j)).d[j] = input_field_gain(j, p);

  const auto coeff = taylor_sweep<D>(x0, p, k, theta_margin);
  const Eigen::Index idx = output_index(h);
  NumericRow row;
  row.ma = kFactorial[k] * coeff[k](idx).v;
  for (int j = 0; j < 4; ++j) row.coefficients(j) = kFactorial[k - 1] * coeff[k - 1](idx).d[j];
  return row;
}

}  // namespace singzone
