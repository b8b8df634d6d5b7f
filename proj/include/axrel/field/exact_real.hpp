#pragma once

// Exact ordered-field arithmetic over towers of real square roots.
//
// An ExactReal lives in a tower Q(sqrt d1)(sqrt d2)...(sqrt dk) where each
// radicand d_i is a positive element of the tower below it that is not a
// square there. Elements carry rational coordinates in the multiplicative
// basis {prod_{i in S} sqrt d_i : S subset of {1..k}}; coordinate index bit
// i-1 selects sqrt d_i. Because every step is a genuine quadratic extension
// the coordinates are unique, so zero-testing is exact and the order is the
// one induced by the real embedding with every sqrt d_i taken positive.
//
// Operands living in different towers are lifted into a merged tower; a
// radicand already a square in the target tower is not adjoined again.
// Results are compressed: generators no coordinate (and no later radicand)
// depends on are dropped, so rational results always live over Q.

#include "axrel/field/approx_real.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace axrel {

namespace detail {
struct TowerNode;
}

enum class ArithOp { add, sub, mul, div };
enum class Ordering { less, equal, greater };

class ExactReal {
public:
    ExactReal() : coords_{mpq_class(0)} {}
    ExactReal(long v) : coords_{mpq_class(v)} {}  // NOLINT(google-explicit-constructor)
    ExactReal(int v) : coords_{mpq_class(v)} {}   // NOLINT(google-explicit-constructor)
    explicit ExactReal(const mpq_class& q);
    static ExactReal rational(long num, long den);

    /// Parses the field literal syntax: rationals `p/q`, decimals, `sqrt(E)`,
    /// `+ - * /`, unary minus and parentheses.
    static ExactReal parse(std::string_view text);

    /// Non-negative square root. Throws NegativeRadicand for a < 0.
    ExactReal sqrt() const;

    int sign() const;
    bool is_zero() const;
    bool is_rational() const { return tower_ == nullptr; }
    std::optional<mpq_class> as_rational() const;

    /// Number of adjoined square roots in this value's tower.
    std::size_t tower_depth() const;
    /// Radicands of the tower, innermost first.
    std::vector<ExactReal> radicands() const;
    /// Coordinates in the multiplicative basis of the tower.
    const std::vector<mpq_class>& coords() const { return coords_; }

    /// Outward-rounded enclosure with width at most about 2^-200 * magnitude.
    ApproxReal approx() const;
    double to_double() const;

    /// Re-parseable literal, e.g. `3/5`, `1/2*sqrt(2)`, `sqrt(1 + sqrt(2))`.
    std::string to_string() const;
    /// `12` significant decimal digits.
    std::string to_decimal(int digits = 12) const;

    ExactReal operator-() const;
    ExactReal& operator+=(const ExactReal& b) { return *this = *this + b; }
    ExactReal& operator-=(const ExactReal& b) { return *this = *this - b; }
    ExactReal& operator*=(const ExactReal& b) { return *this = *this * b; }
    ExactReal& operator/=(const ExactReal& b) { return *this = *this / b; }

    friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator/(const ExactReal& a, const ExactReal& b);

    friend bool operator==(const ExactReal& a, const ExactReal& b);
    friend std::strong_ordering operator<=>(const ExactReal& a, const ExactReal& b);

private:
    using TowerPtr = std::shared_ptr<const detail::TowerNode>;
    ExactReal(TowerPtr tower, std::vector<mpq_class> coords);
    static ExactReal make(TowerPtr tower, std::vector<mpq_class> coords);

    friend struct detail::TowerNode;
    friend class TowerOps;

    TowerPtr tower_;  // null: the element is rational
    std::vector<mpq_class> coords_;
};

ExactReal arith(const ExactReal& a, const ExactReal& b, ArithOp op);
Ordering compare(const ExactReal& a, const ExactReal& b);
inline ExactReal sqrt(const ExactReal& a) { return a.sqrt(); }
ExactReal abs(const ExactReal& a);
inline ExactReal square(const ExactReal& a) { return a * a; }
const ExactReal& min(const ExactReal& a, const ExactReal& b);
const ExactReal& max(const ExactReal& a, const ExactReal& b);

/// Exact rational value of a finite double.
ExactReal from_double(double v);

std::ostream& operator<<(std::ostream& os, const ExactReal& v);

}  // namespace axrel
