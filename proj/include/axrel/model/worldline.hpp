#pragma once

// Worldlines in the reference chart and the bodies that travel them.

#include "axrel/model/coord.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace axrel {

enum class Truth { False, True, Unknown };

inline Truth truth(bool b) { return b ? Truth::True : Truth::False; }
Truth truth_not(Truth a);
Truth truth_and(Truth a, Truth b);
Truth truth_or(Truth a, Truth b);
const char* truth_name(Truth t);

/// point + s (v, 1)
struct InertialLine {
    Coord4 point;
    Vec3 velocity;
};

/// point + s (d, 1) with |d| = 1
struct PhotonLine {
    Coord4 point;
    Vec3 direction;
};

/// Straight segments joining successive events; time strictly increasing.
struct PiecewiseInertial {
    std::vector<Coord4> events;
};

/// Uniform proper acceleration 1/rho along `direction` (unit):
/// space(t) = center + direction * sqrt(rho^2 + (t - t_center)^2).
struct HyperbolicLine {
    Vec3 center;
    ExactReal t_center;
    Vec3 direction;
    ExactReal rho;
};

/// Numerically given curve t -> space(t), differentiable of the declared order.
struct SmoothNumeric {
    std::function<std::array<double, 3>(double)> position;
    int order = 1;
    double t_min = 0;
    double t_max = 0;
    double tolerance = 1e-9;
    std::string label;
};

namespace testing {
struct QuarantineAccess;
}

/// Passkey for building lines that break the production invariants.
class QuarantineKey {
    QuarantineKey() = default;
    friend struct testing::QuarantineAccess;
};

class Worldline {
public:
    using Data = std::variant<InertialLine, PhotonLine, PiecewiseInertial, HyperbolicLine, SmoothNumeric>;

    /// Throws SuperluminalVelocity unless |v| < 1.
    static Worldline inertial(Coord4 point, Vec3 velocity);
    /// Throws InvalidWorldline unless |d| = 1 exactly.
    static Worldline photon(Coord4 point, Vec3 direction);
    /// Throws InvalidWorldline for fewer than two events or non-increasing time.
    static Worldline piecewise(std::vector<Coord4> events);
    /// Throws InvalidWorldline unless rho > 0 and |direction| = 1.
    static Worldline hyperbolic(Vec3 center, ExactReal t_center, Vec3 direction, ExactReal rho);
    /// Throws InvalidWorldline for order < 1 or an empty domain.
    static Worldline smooth(SmoothNumeric curve);
    /// Inertial line of any speed; only reachable through the quarantine.
    static Worldline inertial_unchecked(QuarantineKey, Coord4 point, Vec3 velocity);

    /// Restricts the line to reference times lo <= t <= hi.
    Worldline with_domain(std::optional<ExactReal> lo, std::optional<ExactReal> hi) const;

    const Data& data() const { return data_; }
    const char* kind_name() const;
    bool is_exact() const { return !std::holds_alternative<SmoothNumeric>(data_); }
    const std::optional<ExactReal>& t_lo() const { return lo_; }
    const std::optional<ExactReal>& t_hi() const { return hi_; }
    bool in_domain(const ExactReal& t) const;

    /// Membership. Exact kinds answer True/False; SmoothNumeric answers True
    /// within its tolerance, False beyond ten times it, Unknown in between.
    Truth contains(const Coord4& x) const;
    /// Numeric membership at given reference coordinates with tolerance.
    Truth contains_numeric(const std::array<double, 4>& x, double tol) const;

    /// Exact position at reference time t; nullopt outside the domain or for
    /// numeric lines.
    std::optional<Coord4> at_time(const ExactReal& t) const;
    std::optional<std::array<double, 3>> at_time_numeric(double t) const;

private:
    explicit Worldline(Data d) : data_(std::move(d)) {}
    Data data_;
    std::optional<ExactReal> lo_, hi_;
};

struct Body {
    std::string id;
    bool inertial = false;
    bool photon = false;
    Worldline worldline;

    /// Throws InvalidWorldline when the flags disagree with the worldline
    /// kind (photons travel PhotonLines, inertial bodies InertialLines).
    Body(std::string id, bool inertial, bool photon, Worldline wl);
};

Body inertial_body(std::string id, Coord4 point, Vec3 velocity);
Body photon_body(std::string id, Coord4 point, Vec3 direction);
Body plain_body(std::string id, Worldline wl);

/// Finite family of parallel inertial bodies: an extended body as a cloud of
/// test particles, one for each spatial offset from `base`.
std::vector<Body> cloud(const std::string& prefix, const InertialLine& base, const std::vector<Vec3>& offsets);

}  // namespace axrel
