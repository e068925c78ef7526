#pragma once

#include "gvp/battery.h"

// Frozen thresholds shared by unit and acceptance tests.
namespace fixtures {

// Operator round trips: tol = kRoundTripC / sqrt(n), C calibrated once on the
// fBm power pair (c = x^{-0.8}, H = 0.7) at n = 256 and frozen.
inline constexpr double kRoundTripC = 3e-3;  // fBm power pair, n = 256: 4.8e-5 * sqrt(256) = 7.7e-4, x4

// fraccalc battery thresholds (the library defaults used by frac-test)
inline constexpr gvp::BatteryThresholds kBattery{};
inline constexpr double kSemigroupC = kBattery.semigroup_c;
inline constexpr double kReflectionTol = kBattery.reflection;
inline constexpr double kIbpTol = kBattery.ibp;
inline constexpr double kNormSlack = kBattery.norm_slack;
inline constexpr double kAbelRoundTripC = kBattery.abel_c;

// fBm constants d_H = (H - 1/2) c_H, derived once and frozen here.
inline constexpr double kCH07 = 1.0918091308839126;
inline constexpr double kDH07 = 0.21836182617678252;

}  // namespace fixtures
