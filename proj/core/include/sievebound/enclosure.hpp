#ifndef SIEVEBOUND_ENCLOSURE_HPP
#define SIEVEBOUND_ENCLOSURE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace sievebound {

struct enclosure_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Certified real interval [lo, hi]. Every operation returns an interval
/// containing the exact mathematical image of its operands, with endpoints
/// widened outward (next representable value) instead of relying on
/// hardware directed rounding.
class Enclosure {
  public:
    Enclosure() : lo_(0.0), hi_(0.0) {}
    explicit Enclosure(double point) : lo_(point), hi_(point) { check(); }
    Enclosure(double lo, double hi) : lo_(lo), hi_(hi) { check(); }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Enclosure& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const Enclosure& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    static Enclosure hull(const Enclosure& a, const Enclosure& b);
    /// Exact ratio of integers, outward rounded. The route for all rational
    /// constants (7/6, 17/16, 29/72, ...) so no decimal parsing is involved.
    static Enclosure ratio(long long num, long long den);

  private:
    void check() const {
        if (!(lo_ <= hi_) || !std::isfinite(lo_) || !std::isfinite(hi_))
            throw enclosure_error("invalid enclosure endpoints");
    }
    double lo_, hi_;
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Enclosure& b);

Enclosure enc_log(const Enclosure& a);
Enclosure enc_sqrt(const Enclosure& a);

/// hi - lo rounded up.
double enc_width(const Enclosure& a);
/// Largest absolute value of any contained point.
double enc_mag(const Enclosure& a);
/// Intersection; throws if disjoint.
Enclosure enc_intersect(const Enclosure& a, const Enclosure& b);

inline Enclosure enc_hull(const Enclosure& a, const Enclosure& b) { return Enclosure::hull(a, b); }

}  // namespace sievebound

#endif
