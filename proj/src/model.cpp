#include "singzone/model.hpp"

#include <array>
#include <stdexcept>

namespace singzone {

void QuadParams::validate() const {
  const std::array<std::pair<const char*, double>, 6> fields{
      {{"m", m}, {"d", d}, {"ix", ix}, {"iy", iy}, {"iz", iz}, {"g", g}}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw ConfigError(std::string("parameter ") + name + " must be positive and finite");
    }
  }
}

State14 hover_state(const QuadParams& p) {
  State14 s = State14::Zero();
  s(kZeta) = p.m * p.g;
  return s;
}

State14 rest_state() { return State14::Zero(); }

void require_finite(const State14& s, const char* what) {
  if (!s.allFinite()) throw DomainError(std::string(what) + " has non-finite components");
}

const char* state_field_name(Eigen::Index i) {
  static constexpr std::array<const char*, kStateDim> names{
      "x", "y", "z", "psi", "theta", "phi", "vx", "vy", "vz", "zeta", "xi", "p", "q", "r"};
  return names.at(static_cast<std::size_t>(i));
}

Eigen::Index input_field_index(int j) {
  switch (j) {
    case 0: return kXi;
    case 1: return kP;
    case 2: return kQ;
    case 3: return kR;
    default: throw std::out_of_range("input index must be in 0..3");
  }
}

double input_field_gain(int j, const QuadParams& p) {
  switch (j) {
    case 0: return 1.0;
    case 1: return p.d / p.ix;
    case 2: return p.d / p.iy;
    case 3: return p.d / p.iz;
    default: throw std::out_of_range("input index must be in 0..3");
  }
}

StateDerivative state_derivative(const State14& s, const VirtualInput& u, const QuadParams& p,
                                 double theta_margin) {
  StateDerivative dx = drift_field<double>(s, p, theta_margin);
  for (int j = 0; j < 4; ++j) dx(input_field_index(j)) += input_field_gain(j, p) * u(j);
  return dx;
}

}  // namespace singzone
