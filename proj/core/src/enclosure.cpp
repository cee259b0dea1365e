#include "sievebound/enclosure.hpp"

#include <algorithm>
#include <limits>

namespace sievebound {

namespace {

double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// glibc's log is not correctly rounded; its worst-case error is below
// 2 ulp, so 2 outward steps per endpoint are a certified cover.
double down2(double x) { return down(down(x)); }
double up2(double x) { return up(up(x)); }

}  // namespace

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Enclosure Enclosure::ratio(long long num, long long den) {
    if (den == 0) throw enclosure_error("ratio: zero denominator");
    return Enclosure(static_cast<double>(num)) / Enclosure(static_cast<double>(den));
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return {down(a.lo() + b.lo()), up(a.hi() + b.hi())};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return {down(a.lo() - b.hi()), up(a.hi() - b.lo())};
}

Enclosure operator-(const Enclosure& a) { return {-a.hi(), -a.lo()}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    const double p1 = a.lo() * b.lo(), p2 = a.lo() * b.hi();
    const double p3 = a.hi() * b.lo(), p4 = a.hi() * b.hi();
    return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains(0.0)) throw enclosure_error("division by enclosure containing 0");
    const double q1 = a.lo() / b.lo(), q2 = a.lo() / b.hi();
    const double q3 = a.hi() / b.lo(), q4 = a.hi() / b.hi();
    return {down(std::min({q1, q2, q3, q4})), up(std::max({q1, q2, q3, q4}))};
}

Enclosure enc_log(const Enclosure& a) {
    if (!(a.lo() > 0.0)) throw enclosure_error("log of nonpositive enclosure");
    return {down2(std::log(a.lo())), up2(std::log(a.hi()))};
}

Enclosure enc_sqrt(const Enclosure& a) {
    if (a.lo() < 0.0) throw enclosure_error("sqrt of negative enclosure");
    // IEEE sqrt is correctly rounded; one outward step covers it.
    return {down(std::sqrt(a.lo())), up(std::sqrt(a.hi()))};
}

double enc_width(const Enclosure& a) { return up(a.hi() - a.lo()); }

double enc_mag(const Enclosure& a) { return std::max(std::fabs(a.lo()), std::fabs(a.hi())); }

Enclosure enc_intersect(const Enclosure& a, const Enclosure& b) {
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) throw enclosure_error("intersection of disjoint enclosures");
    return {lo, hi};
}

}  // namespace sievebound
