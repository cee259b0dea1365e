#include "sievebound/buchstab.hpp"

#include <algorithm>
#include <cmath>

namespace sievebound {

namespace {

const Enclosure kOne(1.0);
const Enclosure kTwo(2.0);
const Enclosure kThree(3.0);

Enclosure omega_piece1(const Enclosure& u) { return kOne / u; }

Enclosure omega_piece2(const Enclosure& u) {
    return (kOne + enc_log(u - kOne)) / u;
}

}  // namespace

Enclosure omega_closed(const Enclosure& u) {
    if (u.lo() < 1.0 - 1e-12 || u.hi() > 3.0 + 1e-12)
        throw enclosure_error("omega_closed: argument outside [1,3]");
    const Enclosure uc(std::max(u.lo(), 1.0), std::min(u.hi(), 3.0));
    if (uc.hi() <= 2.0) return omega_piece1(uc);
    if (uc.lo() >= 2.0) return omega_piece2(uc);
    const Enclosure left(uc.lo(), 2.0);
    const Enclosure right(2.0, uc.hi());
    return enc_hull(omega_piece1(left), omega_piece2(right));
}

BuchstabTable build_table(double u_max, double h) {
    if (!(u_max >= 9.0) || !(h > 0.0) || !(h <= 1e-3))
        throw config_error("build_table: need u_max >= 9 and 0 < h <= 1e-3");

    BuchstabTable t;
    t.u_max_ = u_max;
    t.h_ = h;
    const int N = static_cast<int>(std::llround(1.0 / h));
    t.per_unit_ = N;
    t.units_ = static_cast<int>(std::ceil(u_max - 1.0 - 1e-12));
    const std::size_t n_nodes = static_cast<std::size_t>(t.units_) * N + 1;

    t.grid_.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
        t.grid_.push_back(Enclosure::ratio(static_cast<long long>(N) + static_cast<long long>(i), N));

    t.nodes_.resize(n_nodes);
    t.cells_.resize(n_nodes - 1);
    t.d1cells_.resize(n_nodes - 1);
    t.d2mag_.resize(n_nodes - 1);
    // prefix ranges over [1, u_max - 1]; everything above only ever feeds
    // omega itself, never the integral.
    const std::size_t n_prefix = static_cast<std::size_t>(t.units_ - 1) * N + 1;
    t.prefix_.resize(n_prefix);

    // Segment by segment; segment k covers [k, k+1] and only depends on
    // values one unit lower.
    for (int k = 1; k <= t.units_; ++k) {
        const std::size_t base = static_cast<std::size_t>(k - 1) * N;
        for (int m = (k == 1 ? 0 : 1); m <= N; ++m) {
            const std::size_t i = base + m;
            const Enclosure& g = t.grid_[i];
            if (k <= 2) {
                t.nodes_[i] = omega_closed(g);
            } else {
                // u*omega(u) = 1 + Int_2^u omega(s-1) ds = 1 + Omega(u-1)
                t.nodes_[i] = (kOne + t.prefix_[i - N]) / g;
            }
        }
        for (int m = 0; m < N; ++m) {
            const std::size_t i = base + m;
            const Enclosure cu = enc_hull(t.grid_[i], t.grid_[i + 1]);
            const Enclosure step = t.grid_[i + 1] - t.grid_[i];
            if (k == 1) {
                t.cells_[i] = omega_piece1(cu);
                t.d1cells_[i] = -(kOne / (cu * cu));
                t.d2mag_[i] = enc_mag(Enclosure(2.0) / (cu * cu * cu));
            } else {
                const Enclosure om_below = t.cells_[i - N];
                Enclosure range = enc_hull(t.nodes_[i], t.nodes_[i + 1]);
                // preliminary range with the global |omega'| <= 2 bound,
                // refined below with the recurrence derivative
                const double slack = 2.0 * step.hi();
                Enclosure prelim(range.lo() - slack, range.hi() + slack);
                const Enclosure d1 = (om_below - prelim) / cu;
                const double w = enc_mag(d1) * step.hi();
                t.d1cells_[i] = (om_below - Enclosure(range.lo() - w, range.hi() + w)) / cu;
                const double lip = enc_mag(t.d1cells_[i]) * step.hi();
                t.cells_[i] = Enclosure(range.lo() - lip, range.hi() + lip);
                if (k == 2) t.cells_[i] = enc_intersect(t.cells_[i], omega_piece2(cu));
                // omega''(u) = (omega'(u-1) - 2 omega'(u)) / u
                t.d2mag_[i] = enc_mag((t.d1cells_[i - N] - Enclosure(2.0) * t.d1cells_[i]) / cu);
            }
        }
        // accumulate the prefix integral over this segment (trapezoid with a
        // certified curvature remainder; cells never straddle a kink)
        if (k <= t.units_ - 1) {
            if (k == 1) t.prefix_[0] = Enclosure(0.0);
            for (int m = 0; m < N; ++m) {
                const std::size_t i = base + m;
                const Enclosure step = t.grid_[i + 1] - t.grid_[i];
                const Enclosure trap = step * (t.nodes_[i] + t.nodes_[i + 1]) / kTwo;
                const double r = (step.hi() * step.hi() * step.hi()) * t.d2mag_[i] / 12.0;
                t.prefix_[i + 1] = t.prefix_[i] + trap + Enclosure(-r, r);
            }
        }
    }
    return t;
}

std::size_t BuchstabTable::cell_index_below(double x) const {
    double idx = std::floor((x - 1.0) * per_unit_);
    long long j = static_cast<long long>(idx);
    j = std::max<long long>(0, std::min<long long>(j, static_cast<long long>(cells_.size()) - 1));
    while (j > 0 && grid_[static_cast<std::size_t>(j)].hi() > x) --j;
    while (j + 1 < static_cast<long long>(cells_.size()) &&
           grid_[static_cast<std::size_t>(j) + 1].hi() <= x)
        ++j;
    return static_cast<std::size_t>(j);
}

Enclosure BuchstabTable::hull_cells(double lo, double hi) const {
    std::size_t jlo = cell_index_below(lo);
    std::size_t jhi = cell_index_below(hi);
    Enclosure r = cells_[jlo];
    for (std::size_t j = jlo + 1; j <= jhi; ++j) r = enc_hull(r, cells_[j]);
    return r;
}

Enclosure BuchstabTable::omega(const Enclosure& u) const {
    if (u.hi() > u_max_ + 1e-12)
        throw buchstab_range_error("omega: argument above u_max");
    if (u.hi() < 1.0) {
        guard_fires_.fetch_add(1, std::memory_order_relaxed);
        return Enclosure(0.0);
    }
    const bool below_one = u.lo() < 1.0;
    if (below_one) guard_fires_.fetch_add(1, std::memory_order_relaxed);
    const double lo = std::max(u.lo(), 1.0);
    const double hi = std::min(u.hi(), u_max_);

    Enclosure r = hull_cells(lo, hi);
    if (hi <= 3.0) r = enc_intersect(r, omega_closed(Enclosure(lo, hi)));
    if (below_one) r = enc_hull(r, Enclosure(0.0));
    return r;
}

Enclosure BuchstabTable::omega_prime(const Enclosure& u) const {
    if (u.lo() < 1.0 || u.hi() > u_max_ + 1e-12)
        throw buchstab_range_error("omega_prime: argument outside [1, u_max]");
    const double hi = std::min(u.hi(), u_max_);
    std::size_t jlo = cell_index_below(u.lo());
    std::size_t jhi = cell_index_below(hi);
    Enclosure r = d1cells_[jlo];
    for (std::size_t j = jlo + 1; j <= jhi; ++j) r = enc_hull(r, d1cells_[j]);
    return r;
}

double BuchstabTable::omega_approx(double u) const {
    if (u < 1.0) return 0.0;
    if (u <= 2.0) return 1.0 / u;
    if (u > u_max_)
        throw buchstab_range_error("omega_approx: argument above u_max");
    const double pos = (u - 1.0) * per_unit_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= nodes_.size()) i = nodes_.size() - 2;
    const double t = pos - static_cast<double>(i);
    const double a = 0.5 * (nodes_[i].lo() + nodes_[i].hi());
    const double b = 0.5 * (nodes_[i + 1].lo() + nodes_[i + 1].hi());
    return a + t * (b - a);
}

double BuchstabTable::omega_integral_approx(double v) const {
    if (v <= 1.0) return 0.0;
    if (v <= 2.0) return std::log(v);
    if (v > u_max_ - 1.0)
        throw buchstab_range_error("omega_integral_approx: argument above u_max - 1");
    const double pos = (v - 1.0) * per_unit_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= prefix_.size()) i = prefix_.size() - 2;
    const double t = pos - static_cast<double>(i);
    const double a = 0.5 * (prefix_[i].lo() + prefix_[i].hi());
    const double b = 0.5 * (prefix_[i + 1].lo() + prefix_[i + 1].hi());
    return a + t * (b - a);
}

Enclosure BuchstabTable::omega_point(double x) const {
    if (x < 1.0) return Enclosure(0.0);
    if (x <= 2.0) return omega_piece1(Enclosure(x));
    if (x <= 3.0) return omega_piece2(Enclosure(x));
    const Enclosure xm1 = Enclosure(x) - kOne;
    const Enclosure om_int = enc_hull(omega_integral_at(xm1.lo()), omega_integral_at(xm1.hi()));
    return (kOne + om_int) / Enclosure(x);
}

Enclosure BuchstabTable::omega_integral_at(double x) const {
    if (x <= 1.0) return Enclosure(0.0);
    if (x <= 2.0) return enc_log(Enclosure(x));
    if (x > u_max_ - 1.0 + 1e-12)
        throw buchstab_range_error("omega_integral: argument above u_max - 1");
    std::size_t j = cell_index_below(std::min(x, u_max_ - 1.0));
    const std::size_t max_prefix_cell = prefix_.size() - 2;
    j = std::min(j, max_prefix_cell);
    const Enclosure delta = Enclosure(x) - grid_[j];
    const Enclosure om_x = omega_point(x);
    const Enclosure trap = delta * (nodes_[j] + om_x) / kTwo;
    double d2 = d2mag_[j];
    if (j + 1 < d2mag_.size()) d2 = std::max(d2, d2mag_[j + 1]);
    const double dh = std::max(delta.hi(), 0.0);
    // 1e-18 absolute slack covers a sub-ulp spill of [g_j, x] into the
    // neighbouring cell across a kink, where the curvature bound would not apply
    const double r = dh * dh * dh * d2 / 12.0 + 1e-18;
    return prefix_[j] + trap + Enclosure(-r, r);
}

Enclosure BuchstabTable::omega_integral(const Enclosure& v) const {
    // Omega is nondecreasing (omega >= 0), so endpoint evaluation is exact.
    return Enclosure(omega_integral_at(v.lo()).lo(), omega_integral_at(v.hi()).hi());
}

Enclosure BuchstabTable::integral_prefix(const Enclosure& u) const {
    return omega_integral(u - kOne);
}

Enclosure BuchstabTable::omega_tight(const Enclosure& u) const {
    if (u.hi() > u_max_ + 1e-12)
        throw buchstab_range_error("omega_tight: argument above u_max");
    if (u.hi() < 1.0) {
        guard_fires_.fetch_add(1, std::memory_order_relaxed);
        return Enclosure(0.0);
    }
    const double lo = std::max(u.lo(), 1.0);
    const double hi = std::min(u.hi(), u_max_);
    Enclosure r = enc_hull(omega_point(lo), omega_point(hi));
    // |omega'| <= 2 covers interior extrema of narrow inputs
    const double w = 2.0 * (hi - lo);
    r = enc_intersect(Enclosure(r.lo() - w, r.hi() + w), hull_cells(lo, hi));
    if (hi <= 3.0) r = enc_intersect(r, omega_closed(Enclosure(lo, hi)));
    if (u.lo() < 1.0) {
        guard_fires_.fetch_add(1, std::memory_order_relaxed);
        r = enc_hull(r, Enclosure(0.0));
    }
    return r;
}

}  // namespace sievebound
