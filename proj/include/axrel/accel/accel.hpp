#pragma once

// Accelerated observers: proper time, co-moving inertial observers, the twin
// paradox and gravitational time dilation in a uniformly accelerated ship.

#include "axrel/field/approx_real.hpp"
#include "axrel/kinematics/lorentz.hpp"
#include "axrel/model/structure.hpp"
#include "axrel/semantics/verdict.hpp"
#include "axrel/util/rng.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace axrel {

/// Exact for straight segments, an enclosure otherwise.
using ProperTime = std::variant<ExactReal, ApproxReal>;

bool is_exact(const ProperTime& p);
double to_double(const ProperTime& p);
std::string to_string(const ProperTime& p);
ProperTime operator+(const ProperTime& a, const ProperTime& b);

/// Proper time along w between reference times t0 <= t1. Throws DomainError
/// when the interval leaves w's domain (or t0 > t1), SuperluminalSegment
/// for a part of w at speed >= 1.
ProperTime proper_time(const Worldline& w, const ExactReal& t0, const ExactReal& t1);

struct Comoving {
    Vec3 velocity;
    Coord4 event;
    bool exact = true;
};

/// The inertial observer tangent to w at reference time t. Throws
/// NotDifferentiable at a velocity change of a piecewise line, DomainError
/// outside the domain.
Comoving comoving_inertial(const Worldline& w, const ExactReal& t);

/// 1/2^k for k = 3..12.
std::vector<ExactReal> default_ladder();

struct AxcmvOptions {
    /// |chart(x0 + d) - tangent(d)| <= |d|^exponent on the ladder
    double exponent = 1.5;
    /// least slope of log residual/|d| against log |d|
    double min_slope = 0.9;
};

/// Co-moving check at the observer's own time t: the chart of o agrees to
/// first order at (0,0,0,t) with an inertial chart whose linear part is a
/// Lorentz map tangent to o's worldline. Affine charts are decided exactly;
/// smooth charts are probed on the ladder. Throws NotAnObserver,
/// NotDifferentiable (kink of the chart or of o's worldline), DomainError
/// when o is not at its spatial origin at time t.
Verdict check_axcmv(const Structure& s, const std::string& o, const ExactReal& t,
                    const std::vector<ExactReal>& ladder = default_ladder(), const AxcmvOptions& opt = {});

struct AcceleratedScenario {
    std::string name;
    Body home;
    Body traveler;
    Coord4 departure;
    Coord4 reunion;
};

struct TwinResult {
    ProperTime home;
    ProperTime traveler;
    /// The traveler changes velocity between the meetings.
    bool accelerated = false;
};

/// Proper times of both twins between the meeting events. Throws NoReunion
/// unless both worldlines pass both events (departure first),
/// NotInertialObserver when home is not inertial.
TwinResult twin_paradox(const AcceleratedScenario& sc);

/// Out and back along +x at speed v, home at rest at the origin, reunion at
/// home time `duration`.
AcceleratedScenario round_trip(const ExactReal& v, const ExactReal& duration);
/// Distance L each way at the speed that makes each leg last `subjective`
/// traveler time: v = L / sqrt(L^2 + subjective^2).
AcceleratedScenario galaxy_journey(const ExactReal& distance, const ExactReal& subjective);

/// The scenario in other inertial coordinates: every event e becomes w(e).
/// Throws Error for numeric worldlines or non-orthochronous maps.
AcceleratedScenario rechart(const AcceleratedScenario& sc, const PoincareMap& w);
Worldline transform(const Worldline& line, const PoincareMap& w);

/// A piecewise-inertial worldline from `from` to `to` (timelike separated)
/// through 1 to 3 seeded intermediate events off the straight line.
Worldline random_competitor(Rng& rng, const Coord4& from, const Coord4& to);

struct CompetitorSweep {
    std::size_t competitors = 0;
    std::size_t not_shorter = 0;  // violations of strict maximality
    ExactReal inertial;
};
CompetitorSweep maximal_aging_sweep(const Coord4& from, const Coord4& to, std::size_t count, std::uint64_t seed);

/// Rear proper acceleration g (>= 0) and proper length h (> 0).
struct ShipConfig {
    ExactReal g;
    ExactReal h;
};

/// Rate of a nose clock over the rear clock, from the Rindler ship: rear on
/// the hyperbola of radius 1/g, nose on the one of radius 1/g + h, both
/// about the same center, so that between two simultaneity lines their
/// proper times are in the ratio of the radii. Exactly 1 + g h; 1 for g = 0.
/// Throws InvalidConfig for g < 0 or h <= 0.
ExactReal gtd_clock_ratio(const ShipConfig& cfg);

/// Structure with the ship: "rear" (observer, Rindler chart) and "nose",
/// and an inertial "home" observer at rest. Both families on. Needs g > 0.
Structure rindler_ship(const ShipConfig& cfg);

// Scenario files: JSON with field literals, see docs/scenario-format.md.

struct ScenarioFile {
    std::optional<AcceleratedScenario> twin;
    std::optional<ShipConfig> ship;
};
/// Throws FormatError / LiteralError.
ScenarioFile parse_scenario(std::string_view json_text);
ScenarioFile load_scenario(const std::string& path);
std::string print_scenario(const AcceleratedScenario& sc);

/// Rows t, x, y, z, vx, vy, vz, tau sampled at `steps` + 1 equally spaced
/// reference times; exact columns for straight segments.
std::string trajectory_csv(const Worldline& w, const ExactReal& t0, const ExactReal& t1, std::size_t steps);

}  // namespace axrel
