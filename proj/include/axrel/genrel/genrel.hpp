#pragma once

// Localized axioms on metric charts and timelike geodesics.
//
// A metric chart is one coordinate box with a metric g(x) of signature
// (+,+,+,-) in the same convention as mu. Everything here is numeric and
// every verdict carries its tolerance; the exact path is the flat-chart
// cross-check against the Minkowski structures.

#include "axrel/genrel/expr.hpp"
#include "axrel/kinematics/lorentz.hpp"
#include "axrel/semantics/verdict.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace axrel::genrel {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Coordinate box; each bound may be open (default) or closed.
struct Box {
    std::array<double, 4> lo{-INFINITY, -INFINITY, -INFINITY, -INFINITY};
    std::array<double, 4> hi{INFINITY, INFINITY, INFINITY, INFINITY};
    std::array<bool, 4> lo_closed{}, hi_closed{};

    bool contains(const Vec4& x) const;
};

struct MetricChart {
    std::string name;
    Box domain;
    /// Declared differentiability order of g.
    int order = 1;
    std::function<Mat4(const Vec4&)> g;
    /// Optional exact partials: dg(x)[k] = d g / d x_k.
    std::function<std::array<Mat4, 4>(const Vec4&)> dg;
    /// Component expressions when the chart came from text (row-major).
    std::optional<std::array<Expr, 16>> components;
};

/// g = eta everywhere, analytic.
MetricChart flat_chart();
/// dx^2 + dy^2 + dz^2 - x^2 dt^2 on x > 0.
MetricChart rindler_metric_chart();
/// Chart from component expressions (row-major, symmetric); partials are
/// taken symbolically. Throws DegenerateMetric for an asymmetric matrix.
MetricChart expression_chart(std::string name, const std::array<Expr, 16>& g, Box domain, int order = 1000);
/// The pulled-back chart g'(y) = J(y)^T g(phi(y)) J(y) for a smooth
/// invertible phi from `domain` into c's domain. J by central differences.
MetricChart pullback(const MetricChart& c, std::function<Vec4(const Vec4&)> phi, Box domain, int order);

/// Chart files: {"format": "axrel-chart/1", "name", "domain": {"lo", "hi",
/// "closed_lo", "closed_hi"}, "order", "metric": {"diag": [4 exprs]} or
/// [[4 exprs] x 4]}. Throws FormatError, SyntaxError.
MetricChart parse_chart(std::string_view json_text);
MetricChart load_chart(const std::string& path);
std::string print_chart(const MetricChart& c);

/// Partials of g at x, from c.dg or central differences with step h.
std::array<Mat4, 4> metric_partials(const MetricChart& c, const Vec4& x, double h = 1e-4);
/// Christoffel symbols gamma[a](b, c).
std::array<Mat4, 4> christoffel(const MetricChart& c, const Vec4& x, double h = 1e-4);

/// Columns are a g(p)-orthonormal frame, time column last: M^T g(p) M = eta.
/// Gram-Schmidt from the coordinate axes with the time axis first; falls
/// back to the ordered eigenbasis when an axis is null or of the wrong
/// type. Throws DegenerateMetric unless g(p) has signature (+,+,+,-), and
/// LeftDomain when p is outside the chart.
Mat4 normal_frame(const MetricChart& c, const Vec4& p);

struct Sampling {
    std::size_t samples = 64;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
};

/// In the normal frame at p, null vectors of g(p) have unit speed, and
/// every spatial direction extends to a null vector.
Verdict check_axph_minus(const MetricChart& c, const Vec4& p, const Sampling& s = {});

/// A curve in chart coordinates, parameterized by chart time t = x4.
struct ChartCurve {
    std::string name;
    std::function<Vec4(double)> at;
};

/// Clock rate of `observed` as read by `observer` (unit or not) at metric g.
using RateOracle = std::function<double(const Mat4& g, const Vec4& observer, const Vec4& observed)>;
/// 1 / gamma with gamma = -g(u, w) for unit tangents u, w.
double metric_rate(const Mat4& g, const Vec4& observer, const Vec4& observed);

/// At the meeting event (chart time t) each observer sees the other's clock
/// at the same rate. Throws NoMeeting, NotTimelike.
Verdict check_axsymt_minus(const MetricChart& c, const ChartCurve& a, const ChartCurve& b, double t,
                           const RateOracle& rate = metric_rate, const Sampling& s = {});

/// An observer's chart over the metric chart's coordinates: to_observer
/// maps chart coordinates to the observer's coordinates, `domain` is in the
/// observer's coordinates, `self` is the observer's worldline.
struct ObserverView {
    std::string name;
    std::function<Vec4(const Vec4&)> to_observer;
    std::function<Vec4(const Vec4&)> to_chart;
    Box domain;
    ChartCurve self;
};

/// The inertial observer with Poincare chart w (reference -> observer)
/// over a flat chart; its worldline is the preimage of the time axis.
ObserverView inertial_view(std::string name, const PoincareMap& w);

/// Sampled self points of the observer lie on its time axis.
Verdict check_axself_minus(const MetricChart& c, const ObserverView& o, const Sampling& s = {});
/// Domains are open (probed on a radius ladder, boundary points of closed
/// faces included in the samples) and events one observer sees inside
/// another's domain round-trip through that observer's chart.
Verdict check_axev_minus(const MetricChart& c, const std::vector<ObserverView>& observers, const Sampling& s = {});

/// Declared order >= n and difference quotients up to order min(n, 3)
/// converge on the probe grid. Unknown when the declared order is < n.
Verdict check_axdiff(const MetricChart& c, int n, const Sampling& s = {});

struct GeodesicOptions {
    double span = 1;        // affine parameter length
    double step = 1.0 / 64;  // initial RK4 step
    double min_step = 1e-6;
    double tolerance = 1e-11;  // per-step position error, step halving
    double fd_step = 1e-4;     // Christoffel differences
    bool normalize = true;     // rescale u0 to g(u0, u0) = -1
    std::size_t max_steps = 1'000'000;
};

struct GeodesicResult {
    std::vector<double> s;
    std::vector<Vec4> x;
    std::vector<Vec4> u;
    /// max |g(u,u) - g(u,u)_0|
    double drift = 0;
    std::size_t steps = 0;
    std::size_t halvings = 0;
    /// The curve left the chart before the end of the span.
    bool truncated = false;

    Vec4 position(double s) const;  // cubic Hermite in between
};

/// Throws NotTimelike unless g(u0, u0) < 0, LeftDomain when x0 is outside.
GeodesicResult geodesic(const MetricChart& c, const Vec4& x0, const Vec4& u0, const GeodesicOptions& opt = {});
/// Rows s, x, y, z, t, g(u,u).
std::string geodesic_csv(const MetricChart& c, const GeodesicResult& r);

/// (x cosh t, y, z, x sinh t): the Rindler chart in Minkowski coordinates.
Vec4 rindler_to_minkowski(const Vec4& p);

}  // namespace axrel::genrel
