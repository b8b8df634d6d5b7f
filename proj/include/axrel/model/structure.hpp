#pragma once

// Structures for the two-sorted language.
//
// A structure has one distinguished reference chart. Bodies carry worldlines
// in it; each observer carries a chart map from reference coordinates to its
// own. W(o, b, x) holds iff x lies in o's chart domain and the reference
// event with o-coordinates x lies on b's worldline. Besides the named bodies
// a structure may contain two implicit families: every photon line (all
// unit-speed lines) and every inertial line (all sub-light lines). Members of
// the families are materialized by the semantics module on demand.

#include "axrel/kinematics/lorentz.hpp"
#include "axrel/model/worldline.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace axrel {

/// Open box lo < x_i < hi; absent bounds are infinite.
struct DomainBox {
    std::array<std::optional<ExactReal>, 4> lo, hi;
    bool contains(const Coord4& x) const;
    bool contains(const std::array<double, 4>& x) const;
};

/// Parameters of a standard inertial observer chart.
struct ObserverParams {
    Vec3 velocity;
    std::array<long, 4> quaternion{1, 0, 0, 0};
    Coord4 origin;
};

struct AffineChart {
    AffineMap to_observer;
    AffineMap to_reference;
    std::optional<DomainBox> domain;  // in observer coordinates
    std::optional<ObserverParams> params;

    /// Throws DivisionByZero for a singular linear part.
    explicit AffineChart(AffineMap to_obs, std::optional<DomainBox> dom = std::nullopt);
    explicit AffineChart(const ObserverParams& p);
    bool is_poincare() const { return is_lorentz(to_observer.linear()); }
};

struct SmoothChart {
    using Map = std::function<std::array<double, 4>(const std::array<double, 4>&)>;
    Map to_observer;
    Map to_reference;
    int order = 1;
    /// Observer-coordinate domain, open.
    std::array<double, 4> lo{-INFINITY, -INFINITY, -INFINITY, -INFINITY};
    std::array<double, 4> hi{INFINITY, INFINITY, INFINITY, INFINITY};
    double tolerance = 1e-9;
    /// Serializable description, e.g. {"kind":"rindler","g":"1"}; JSON text.
    std::string descriptor;
};

using Chart = std::variant<AffineChart, SmoothChart>;

/// Observer chart of a ship with uniform proper acceleration g along +x whose
/// rear passes the reference origin at rest at time 0: observer coordinates
/// (xi, y, z, T) with x = (1/g + xi) cosh(g T), t = (1/g + xi) sinh(g T).
SmoothChart rindler_chart(const ExactReal& g);
/// Worldline of the point at ship coordinate xi in that chart.
Worldline rindler_worldline(const ExactReal& g, const ExactReal& xi);

struct EventContent {
    std::vector<std::string> named;
    bool photons = false;   // family photons through the event exist
    bool inertial = false;  // family inertial bodies through the event exist
    std::string describe() const;
};

class Structure {
public:
    explicit Structure(std::string name = "") : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Throws Error on duplicate ids.
    void add_body(Body b);
    /// Attaches a chart, making the body an observer.
    void set_chart(const std::string& observer, Chart chart);
    void set_families(bool photons, bool inertial);
    void add_constant(ExactReal c) { constants_.push_back(std::move(c)); }

    bool photon_family() const { return photon_family_; }
    bool inertial_family() const { return inertial_family_; }
    const std::vector<Body>& bodies() const { return bodies_; }
    const std::vector<ExactReal>& constants() const { return constants_; }
    const Body* find(const std::string& id) const;
    /// Throws Error for unknown ids.
    const Body& body(const std::string& id) const;

    bool is_observer(const std::string& id) const { return charts_.count(id) != 0; }
    bool is_inertial_observer(const std::string& id) const;
    std::vector<std::string> observers() const;
    const Chart* chart(const std::string& observer) const;
    /// True when every chart is affine, so all W queries are exact.
    bool all_affine() const;

    /// Throws NotAnObserver.
    Truth holds_W(const std::string& observer, const Body& b, const Coord4& x) const;
    Truth holds_W(const std::string& observer, const std::string& body, const Coord4& x) const;

    /// Reference event of observer coordinates x; nullopt outside the chart
    /// domain. Exact for affine charts only (throws Error otherwise).
    std::optional<Coord4> to_reference(const std::string& observer, const Coord4& x) const;
    std::optional<Coord4> from_reference(const std::string& observer, const Coord4& r) const;

    /// Named bodies at x, plus which families pass through it.
    EventContent event_at(const std::string& observer, const Coord4& x) const;
    /// The x' of o' seeing the same event as x of o. Throws NotAnObserver, or
    /// Error when either chart is not affine or x' leaves o''s domain.
    Coord4 event_correspondence(const std::string& o, const std::string& o2, const Coord4& x) const;

private:
    std::string name_;
    std::vector<Body> bodies_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, Chart> charts_;
    bool photon_family_ = false;
    bool inertial_family_ = false;
    std::vector<ExactReal> constants_;
};

struct ObserverSpec {
    std::string name;
    Vec3 velocity;
    std::array<long, 4> quaternion{1, 0, 0, 0};
    Coord4 origin;
};

/// Minkowski structure with both families on and one inertial observer per
/// spec, charted by its Poincare map. Throws SuperluminalObserver.
Structure standard_minkowski(const std::vector<ObserverSpec>& observers);

/// The four-observer model used by the SpecRel suite: rest, boost 3/5 along
/// x, boost 4/5 along y, and one rotated and translated observer.
Structure reference_minkowski();

/// Same inventory with Galilean charts x' = x - v t, t' = t.
Structure galilean_model(const std::vector<ObserverSpec>& observers);

}  // namespace axrel
