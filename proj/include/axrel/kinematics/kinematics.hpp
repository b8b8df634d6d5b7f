#pragma once

// Special-relativistic computations on exact models: worldview
// transformations, the three effects of a moving ship, the light-speed bound
// and mu-invariance.

#include "axrel/kinematics/lorentz.hpp"
#include "axrel/model/structure.hpp"
#include "axrel/semantics/verdict.hpp"
#include "axrel/util/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace axrel {

/// Map from o-coordinates to o2-coordinates of the same event. Throws
/// NotInertialObserver unless both are inertial observers with Poincare
/// charts.
PoincareMap worldview_transform(const Structure& s, const std::string& o, const std::string& o2);

/// (u + v) / (1 + u v); throws SuperluminalVelocity unless |u|, |v| < 1.
ExactReal velocity_addition(const ExactReal& u, const ExactReal& v);

struct EffectReport {
    ExactReal v;  // relative speed
    ExactReal ship_length;
    ExactReal time_dilation;       // moving clock rate
    ExactReal length_contraction;  // measured length / proper length
    ExactReal clock_asynchrony;    // rear clock minus nose clock, simultaneous for the observer
};

/// The three effects of a ship at rest for the observer of the target
/// coordinates of w, seen from the observer of its source coordinates. The
/// ship points in its direction of motion; rear at its spatial origin.
EffectReport effects_between(const PoincareMap& w, const ExactReal& ship_length);
/// Ship moving with velocity v along x. Negative v moves along -x, nose
/// first. Throws SuperluminalVelocity for |v| >= 1, InvalidConfig for a
/// non-positive length.
EffectReport effects(const ExactReal& v, const ExactReal& ship_length = ExactReal(1));

std::string effects_csv(const std::vector<EffectReport>& rows);

/// Image of a straight reference worldline (inertial or photon) in an affine
/// chart, as point + s * direction with direction[3] = 1.
struct ChartLine {
    Coord4 point;
    Coord4 direction;
};
std::optional<ChartLine> line_in_chart(const Structure& s, const std::string& observer, const Body& b);

/// Light-speed bound for k leaving location `from` together with photon p and
/// arriving at `to`, both as seen by m: Holds iff the photon is there strictly
/// before k. Throws NotInertialObserver, or ConfigurationUnrealizable when k
/// and p do not both pass the locations, do not meet at `from`, or k does not
/// travel from `from` to `to`.
Verdict check_noftl(const Structure& s, const std::string& m, const std::string& k, const std::string& p,
                    const Vec3& from, const Vec3& to);

bool check_mu_invariance(const PoincareMap& w, const Coord4& x, const Coord4& y);

// Random instances for sweeps. All are exact and rational unless noted.

/// Unit vector with rational coordinates.
Vec3 random_rational_direction(Rng& rng);
/// Sub-light velocity; rational gamma when `rational_gamma`, else generic.
Vec3 random_velocity(Rng& rng, bool rational_gamma);
std::array<long, 4> random_quaternion(Rng& rng);
Coord4 random_event(Rng& rng, long bound = 10);
/// rotation * boost * translation with random parameters; every other map
/// has an irrational Lorentz factor.
PoincareMap random_poincare(Rng& rng, bool rational_gamma);

struct NoftlCase {
    Structure model;
    std::string m, k, p;
    Vec3 from, to;
};
/// Realizable configuration in a standard model.
NoftlCase random_noftl_case(Rng& rng);

struct SweepSummary {
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::vector<std::string> failures;  // first few, for reports
};
SweepSummary noftl_sweep(std::size_t count, std::uint64_t seed);
SweepSummary mu_invariance_sweep(std::size_t maps, std::size_t pairs, std::uint64_t seed);

}  // namespace axrel
