#ifndef SINGZONE_JET_HPP
#define SINGZONE_JET_HPP

// Truncated Taylor series in time (Jet) and forward-mode dual numbers (Dual).
//
// A Jet<T, K> holds the normalized Taylor coefficients c[0..K] of a scalar
// function of time, c[n] = x^(n)(0) / n!. Coefficient n of every result only
// depends on coefficients 0..n of the operands, so propagating a jet through
// an ODE right-hand side yields exact time derivatives up to rounding.
//
// Dual<N> carries N first-order perturbation directions; Jet<Dual<N>, K> is
// used to differentiate Lie derivatives along constant input fields.

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>

namespace singzone {

template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Dual(double value, const std::array<double, N>& tangent) : v(value), d(tangent) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double q = v / o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - q * o.d[i]) / o.v;
    v = q;
    return *this;
  }
};

template <int N> Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <int N> Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <int N> Dual<N> operator*(Dual<N> a, const Dual<N>& b) { return a *= b; }
template <int N> Dual<N> operator/(Dual<N> a, const Dual<N>& b) { return a /= b; }
template <int N> Dual<N> operator+(Dual<N> a, double b) { return a += Dual<N>(b); }
template <int N> Dual<N> operator-(Dual<N> a, double b) { return a -= Dual<N>(b); }
template <int N> Dual<N> operator*(Dual<N> a, double b) {
  a.v *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
template <int N> Dual<N> operator/(Dual<N> a, double b) {
  a.v /= b;
  for (auto& x : a.d) x /= b;
  return a;
}
template <int N> Dual<N> operator+(double a, const Dual<N>& b) { return Dual<N>(a) + b; }
template <int N> Dual<N> operator-(double a, const Dual<N>& b) { return Dual<N>(a) - b; }
template <int N> Dual<N> operator*(double a, const Dual<N>& b) { return b * a; }
template <int N> Dual<N> operator/(double a, const Dual<N>& b) { return Dual<N>(a) / b; }
template <int N> Dual<N> operator-(Dual<N> a) {
  a.v = -a.v;
  for (auto& x : a.d) x = -x;
  return a;
}

template <int N>
Dual<N> sin(const Dual<N>& a) {
  Dual<N> r(std::sin(a.v));
  const double c = std::cos(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = c * a.d[i];
  return r;
}

template <int N>
Dual<N> cos(const Dual<N>& a) {
  Dual<N> r(std::cos(a.v));
  const double s = -std::sin(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = s * a.d[i];
  return r;
}

template <typename T, int K>
struct Jet {
  static constexpr int kDegree = K;
  std::array<T, K + 1> c{};

  Jet() = default;
  Jet(double constant) { c[0] = T(constant); }  // NOLINT(google-explicit-constructor)
  template <typename U = T, typename = std::enable_if_t<!std::is_same_v<U, double>>>
  Jet(const T& constant) { c[0] = constant; }  // NOLINT(google-explicit-constructor)

  Jet& operator+=(const Jet& o) {
    for (int n = 0; n <= K; ++n) c[n] += o.c[n];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int n = 0; n <= K; ++n) c[n] -= o.c[n];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c) x = -x;
    return a;
  }

  // Cauchy product, truncated at degree K.
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int n = 0; n <= K; ++n) {
      T acc = a.c[0] * b.c[n];
      for (int k = 1; k <= n; ++k) acc += a.c[k] * b.c[n - k];
      r.c[n] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (int n = 0; n <= K; ++n) {
      T acc = a.c[n];
      for (int k = 1; k <= n; ++k) acc -= b.c[k] * q.c[n - k];
      q.c[n] = acc / b.c[0];
    }
    return q;
  }

  friend Jet operator*(Jet a, double s) {
    for (auto& x : a.c) x = x * s;
    return a;
  }
  friend Jet operator*(double s, Jet a) { return a * s; }
  friend Jet operator/(Jet a, double s) {
    for (auto& x : a.c) x = x / s;
    return a;
  }
  friend Jet operator+(Jet a, double s) {
    a.c[0] = a.c[0] + s;
    return a;
  }
  friend Jet operator+(double s, Jet a) { return a + s; }
  friend Jet operator-(Jet a, double s) {
    a.c[0] = a.c[0] - s;
    return a;
  }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }
  friend Jet operator/(double s, const Jet& a) { return Jet(s) / a; }
};

// sin and cos share one recurrence: s' = c u', c' = -s u'.
template <typename T, int K>
void sincos(const Jet<T, K>& u, Jet<T, K>& s, Jet<T, K>& c) {
  using std::cos;
  using std::sin;
  s.c[0] = sin(u.c[0]);
  c.c[0] = cos(u.c[0]);
  for (int n = 1; n <= K; ++n) {
    T sn = u.c[1] * c.c[n - 1];
    T cn = u.c[1] * s.c[n - 1];
    for (int k = 2; k <= n; ++k) {
      sn += (u.c[k] * c.c[n - k]) * static_cast<double>(k);
      cn += (u.c[k] * s.c[n - k]) * static_cast<double>(k);
    }
    s.c[n] = sn / static_cast<double>(n);
    c.c[n] = -cn / static_cast<double>(n);
  }
}

template <typename T, int K>
Jet<T, K> sin(const Jet<T, K>& u) {
  Jet<T, K> s, c;
  sincos(u, s, c);
  return s;
}

template <typename T, int K>
Jet<T, K> cos(const Jet<T, K>& u) {
  Jet<T, K> s, c;
  sincos(u, s, c);
  return c;
}

/// Leading double value of a (possibly nested) scalar.
inline double scalar_value(double x) { return x; }
template <int N>
double scalar_value(const Dual<N>& x) { return x.v; }
template <typename T, int K>
double scalar_value(const Jet<T, K>& x) { return scalar_value(x.c[0]); }

}  // namespace singzone

namespace Eigen {

template <int N>
struct NumTraits<singzone::Dual<N>> : GenericNumTraits<singzone::Dual<N>> {
  using Real = singzone::Dual<N>;
  using NonInteger = singzone::Dual<N>;
  using Nested = singzone::Dual<N>;
  using Literal = singzone::Dual<N>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = N + 1,
    MulCost = 2 * N + 1
  };
};

template <typename T, int K>
struct NumTraits<singzone::Jet<T, K>> : GenericNumTraits<singzone::Jet<T, K>> {
  using Real = singzone::Jet<T, K>;
  using NonInteger = singzone::Jet<T, K>;
  using Nested = singzone::Jet<T, K>;
  using Literal = singzone::Jet<T, K>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = K + 1,
    AddCost = K + 1,
    MulCost = (K + 1) * (K + 1)
  };
};

}  // namespace Eigen

#endif  // SINGZONE_JET_HPP
