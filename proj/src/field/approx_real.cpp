#include "axrel/field/approx_real.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace axrel {

ApproxReal::ApproxReal(mpq_class lower, mpq_class upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (upper_ < lower_) std::swap(lower_, upper_);
}

ApproxReal ApproxReal::from_double(double value, double abs_err) {
    double err = std::abs(abs_err) + std::abs(value) * 4e-16;
    mpq_class v(value);
    mpq_class e(err);
    return ApproxReal(v - e, v + e);
}

double ApproxReal::midpoint() const {
    mpq_class m = (lower_ + upper_) / 2;
    return m.get_d();
}

double ApproxReal::width_double() const {
    mpq_class w = upper_ - lower_;
    return w.get_d();
}

ApproxReal operator+(const ApproxReal& a, const ApproxReal& b) {
    return ApproxReal(a.lower_ + b.lower_, a.upper_ + b.upper_);
}

ApproxReal operator-(const ApproxReal& a, const ApproxReal& b) {
    return ApproxReal(a.lower_ - b.upper_, a.upper_ - b.lower_);
}

ApproxReal operator*(const ApproxReal& a, const ApproxReal& b) {
    mpq_class c[4] = {a.lower_ * b.lower_, a.lower_ * b.upper_, a.upper_ * b.lower_,
                      a.upper_ * b.upper_};
    mpq_class lo = c[0], hi = c[0];
    for (const auto& x : c) {
        if (x < lo) lo = x;
        if (x > hi) hi = x;
    }
    return ApproxReal(lo, hi);
}

std::string ApproxReal::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lower_.get_d() << ", " << upper_.get_d() << "]";
    return os.str();
}

}  // namespace axrel
