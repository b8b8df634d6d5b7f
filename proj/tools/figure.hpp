#pragma once

#include "axrel/kinematics/kinematics.hpp"

#include <string>

namespace axrel::cli {

/// The moving ship: at rest with synchronized clocks, and as the observer
/// sees it at one instant, contracted, with the rear clock ahead of the nose
/// clock and both running slow. Drawn from the report's values.
std::string ship_figure(const EffectReport& r);

}  // namespace axrel::cli
