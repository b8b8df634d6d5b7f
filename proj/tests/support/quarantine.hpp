#pragma once

// Test-only builders for structures that violate production invariants.
// Nothing outside tests links this library.

#include "axrel/model/structure.hpp"

namespace axrel::testing {

struct QuarantineAccess {
    /// Inertial line and body with arbitrary speed, e.g. v = 2.
    static Worldline superluminal_line(const Coord4& point, const Vec3& velocity);
    static Body superluminal_body(const std::string& id, const Coord4& point, const Vec3& velocity);
};

/// Minkowski structure {rest} plus an inertial body "ftl" moving at speed 2
/// along x through the origin, charted like a boost would be if it existed:
/// its chart is the Galilean map x' = x - 2t, t' = t.
Structure superluminal_model();

}  // namespace axrel::testing
