#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "singzone/control.hpp"
#include "singzone/verify.hpp"

using namespace singzone;

TEST(Gains, RepeatedPoleExpansion) {
  const Eigen::VectorXd g4 = gains_from_repeated_pole(4, -2.0);
  ASSERT_EQ(g4.size(), 4);
  EXPECT_EQ(g4, Eigen::Vector4d(16, 32, 24, 8));
  const Eigen::VectorXd g2 = gains_from_repeated_pole(2, -2.0);
  EXPECT_EQ(g2, Eigen::Vector2d(4, 4));
}

TEST(Gains, HurwitzCheck) {
  EXPECT_TRUE(is_hurwitz(Eigen::Vector4d(16, 32, 24, 8)));
  EXPECT_FALSE(is_hurwitz(Eigen::Vector2d(-1, 1)));
  // s^2 + 1: roots on the imaginary axis.
  EXPECT_FALSE(is_hurwitz(Eigen::Vector2d(1, 0)));
  EXPECT_FALSE(is_hurwitz(gains_from_repeated_pole(4, 1.0)));
}

TEST(Gains, ConstructorRejectsBadChains) {
  GainSet::ModeGains yp{Eigen::Vector4d(16, 32, 24, 8), Eigen::Vector4d(16, 32, 24, 8),
                        Eigen::Vector4d(16, 32, 24, 8), Eigen::Vector2d(4, 4)};
  GainSet::ModeGains aa{Eigen::Vector4d(16, 32, 24, 8), Eigen::Vector2d(4, 4),
                        Eigen::Vector2d(4, 4), Eigen::Vector2d(4, 4)};
  EXPECT_NO_THROW(GainSet(yp, aa));
  GainSet::ModeGains short_chain = yp;
  short_chain[0] = Eigen::Vector2d(4, 4);
  EXPECT_THROW(GainSet(short_chain, aa), ConfigError);
  GainSet::ModeGains unstable = aa;
  unstable[1] = Eigen::Vector2d(4, -1);
  EXPECT_THROW(GainSet(yp, unstable), ConfigError);
  EXPECT_THROW(GainSet::from_poles(0.5), ConfigError);
}

TEST(OuterLoop, ZeroAtReference) {
  const QuadParams p;
  State14 s = hover_state(p);
  s(kX) = 1.0;
  s(kY) = -2.0;
  s(kZ) = 0.5;
  s(kPsi) = 0.3;
  ReferenceSet refs;
  refs.yaw_position << 1.0, -2.0, 0.5, 0.3;
  const GainSet gains = GainSet::from_poles(-2.0);
  EXPECT_EQ(outer_loop_v(s, p, refs, gains, Mode::YawPosition), Eigen::Vector4d::Zero());
}

TEST(FlLaw, HoverAtReferenceNeedsNoInput) {
  const QuadParams p;
  const State14 s = hover_state(p);
  const VirtualInput u = fl_law(s, p, {}, GainSet::from_poles(-2.0), Mode::YawPosition);
  EXPECT_EQ(u, VirtualInput::Zero());
}

TEST(FlLaw, ZeroThrustIsSingular) {
  const QuadParams p;
  State14 s = hover_state(p);
  s(kZeta) = 0.0;
  EXPECT_THROW(fl_law(s, p, {}, GainSet::from_poles(-2.0), Mode::YawPosition), SingularMatrix);
}

TEST(FlLaw, AltitudeStepUsesThrustOnly) {
  const QuadParams p;
  const State14 s = hover_state(p);
  ReferenceSet refs;
  refs.yaw_position << 0.0, 0.0, 1.0, 0.0;
  const VirtualInput u = fl_law(s, p, refs, GainSet::from_poles(-2.0), Mode::YawPosition);
  const double v3 = 16.0 * 1.0;
  EXPECT_NEAR(u(0), -p.m * v3, 1e-12);
  EXPECT_EQ(u(1), 0.0);
  EXPECT_EQ(u(2), 0.0);
  EXPECT_EQ(u(3), 0.0);
}

TEST(DeltaAltAtt, HoverDeterminantAndRows) {
  const QuadParams p;
  const DecouplingSystem sys = delta_altatt(hover_state(p), p);
  EXPECT_NEAR(std::abs(sys.det), 1687.5, 1e-9 * 1687.5);
  EXPECT_NEAR((sys.delta.row(1).transpose() - Eigen::Vector4d(0, p.d / p.ix, 0, 0)).norm(), 0.0,
              1e-14);
  ASSERT_TRUE(sys.ma.has_value());
  EXPECT_EQ(*sys.ma, Eigen::Vector4d::Zero());
}

TEST(DeltaAltAtt, DeterminantLaw) {
  const QuadParams p;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(-1.4, 1.4), any(-5, 5), zeta(-20, 20);
  const double k = p.d * p.d * p.d / (p.m * p.ix * p.iy * p.iz);
  for (int n = 0; n < 2000; ++n) {
    State14 s;
    for (Eigen::Index i = 0; i < kStateDim; ++i) s(i) = any(rng);
    s(kPsi) = ang(rng);
    s(kTheta) = ang(rng);
    s(kPhi) = ang(rng);
    s(kZeta) = zeta(rng);
    const double det = delta_altatt(s, p).det;
    EXPECT_LE(relative_error(std::abs(det), std::abs(std::cos(s(kPhi))) * k), 1e-9);
  }
}

TEST(DeltaAltAtt, LevelRollNonsingularForAnyPitch) {
  const QuadParams p;
  State14 s = hover_state(p);
  for (double th : {-1.4, -0.7, 0.0, 0.9, 1.4}) {
    s(kTheta) = th;
    EXPECT_FALSE(delta_altatt(s, p).is_singular());
  }
}

TEST(ControlStep, ClosesLinearizingForm) {
  const QuadParams p;
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ang(-1.0, 1.0), any(-1, 1);
  ReferenceSet refs;
  refs.yaw_position << 1, 2, 3, 0.5;
  refs.attitude_altitude << 0.2, 0.1, -0.1, 0.3;
  const GainSet gains = GainSet::from_poles(-2.0);
  for (Mode mode : {Mode::YawPosition, Mode::AttitudeAltitude}) {
    for (int n = 0; n < 50; ++n) {
      State14 s;
      for (Eigen::Index i = 0; i < kStateDim; ++i) s(i) = any(rng);
      s(kTheta) = ang(rng);
      s(kPhi) = ang(rng);
      s(kZeta) = 9.81 + any(rng);
      const ControlOutput out = control_step(s, p, refs, gains, mode);
      EXPECT_LE((*out.system.ma + out.system.delta * out.u - out.v).norm(),
                1e-8 * (1 + out.v.norm()));
    }
  }
}
