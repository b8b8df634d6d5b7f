#pragma once

#include <gmpxx.h>

#include <string>

namespace axrel {

/// Closed rational interval [lower, upper] known to contain a real value.
///
/// Produced from exact values by outward-rounded dyadic evaluation, and by
/// numeric routines (quadrature, closed forms in double precision) that widen
/// their result by an error estimate.
class ApproxReal {
public:
    ApproxReal() = default;
    ApproxReal(mpq_class lower, mpq_class upper);
    static ApproxReal point(const mpq_class& v) { return ApproxReal(v, v); }
    /// Interval around a double, widened by `abs_err` on both sides.
    static ApproxReal from_double(double value, double abs_err);

    const mpq_class& lower() const { return lower_; }
    const mpq_class& upper() const { return upper_; }
    mpq_class width() const { return upper_ - lower_; }
    double midpoint() const;
    double width_double() const;

    bool contains(const mpq_class& v) const { return lower_ <= v && v <= upper_; }
    bool contains(const ApproxReal& other) const {
        return lower_ <= other.lower_ && other.upper_ <= upper_;
    }
    bool overlaps(const ApproxReal& other) const {
        return !(upper_ < other.lower_ || other.upper_ < lower_);
    }

    friend ApproxReal operator+(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator-(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator*(const ApproxReal& a, const ApproxReal& b);

    std::string to_string() const;

private:
    mpq_class lower_;
    mpq_class upper_;
};

}  // namespace axrel
