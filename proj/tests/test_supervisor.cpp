#include <gtest/gtest.h>

#include "singzone/supervisor.hpp"

using namespace singzone;

namespace {

State14 attitude(double theta, double phi) {
  State14 s = hover_state(QuadParams{});
  s(kTheta) = theta;
  s(kPhi) = phi;
  return s;
}

}  // namespace

TEST(Classify, DefaultBox) {
  const ZoneSpec z;
  EXPECT_EQ(classify(0.0, 0.0, z, Mode::YawPosition), Mode::AttitudeAltitude);
  EXPECT_EQ(classify(0.6, 0.0, z, Mode::YawPosition), Mode::YawPosition);
  EXPECT_EQ(classify(0.0, 0.3, z, Mode::YawPosition), Mode::YawPosition);
  EXPECT_EQ(classify(-0.5, -1.5, z, Mode::YawPosition), Mode::AttitudeAltitude);
}

TEST(Classify, BoundsAreClosed) {
  const ZoneSpec z;
  EXPECT_EQ(classify(0.5, 0.0, z, Mode::YawPosition), Mode::AttitudeAltitude);
  EXPECT_EQ(classify(-0.5, 0.2, z, Mode::YawPosition), Mode::AttitudeAltitude);
  EXPECT_EQ(classify(0.0, z.phi_min, z, Mode::YawPosition), Mode::AttitudeAltitude);
  EXPECT_EQ(classify(0.5000001, 0.0, z, Mode::YawPosition), Mode::YawPosition);
}

TEST(Classify, NoHysteresisIgnoresCurrentMode) {
  const ZoneSpec z;
  for (double th : {-0.7, -0.5, 0.0, 0.5, 0.7})
    for (double ph : {-1.0, 0.0, 0.2, 0.25})
      EXPECT_EQ(classify(th, ph, z, Mode::YawPosition), classify(th, ph, z, Mode::AttitudeAltitude));
}

TEST(Classify, HysteresisHoldsAttitudeAltitude) {
  ZoneSpec z;
  z.hysteresis = 0.05;
  EXPECT_EQ(classify(0.53, 0.0, z, Mode::AttitudeAltitude), Mode::AttitudeAltitude);
  EXPECT_EQ(classify(0.53, 0.0, z, Mode::YawPosition), Mode::YawPosition);
  EXPECT_EQ(classify(0.56, 0.0, z, Mode::AttitudeAltitude), Mode::YawPosition);
}

TEST(ZoneSpec, Validate) {
  ZoneSpec z;
  EXPECT_NO_THROW(z.validate());
  z.theta_min = 0.6;
  EXPECT_THROW(z.validate(), ConfigError);
  z = ZoneSpec{};
  z.hysteresis = -0.1;
  EXPECT_THROW(z.validate(), ConfigError);
}

TEST(StepMode, SwitchFlag) {
  const ZoneSpec z;
  ModeDecision d = step_mode(attitude(0.5, 0.5), z, Mode::YawPosition);
  EXPECT_EQ(d.mode, Mode::YawPosition);
  EXPECT_FALSE(d.switched);

  d = step_mode(attitude(0.0, 0.1), z, Mode::YawPosition);
  EXPECT_EQ(d.mode, Mode::AttitudeAltitude);
  EXPECT_TRUE(d.switched);

  d = step_mode(attitude(0.5, 0.0), z, Mode::AttitudeAltitude);
  EXPECT_EQ(d.mode, Mode::AttitudeAltitude);
  EXPECT_FALSE(d.switched);
}
