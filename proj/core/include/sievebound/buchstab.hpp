#ifndef SIEVEBOUND_BUCHSTAB_HPP
#define SIEVEBOUND_BUCHSTAB_HPP

#include <atomic>
#include <cstdint>
#include <vector>

#include "sievebound/enclosure.hpp"

namespace sievebound {

struct buchstab_range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Certified piecewise representation of the Buchstab function omega(u) on
/// [1, u_max], built segment by segment from omega(u)=1/u on [1,2] and the
/// delay equation (u omega(u))' = omega(u-1).
///
/// Grid points are the exact rationals 1 + i/N with N = round(1/h), so unit
/// boundaries (where omega loses a derivative) always fall on nodes and no
/// cell straddles a kink.
class BuchstabTable {
  public:
    BuchstabTable() = default;
    BuchstabTable(BuchstabTable&& o) noexcept
        : u_max_(o.u_max_), h_(o.h_), per_unit_(o.per_unit_), units_(o.units_),
          grid_(std::move(o.grid_)), nodes_(std::move(o.nodes_)), cells_(std::move(o.cells_)),
          d1cells_(std::move(o.d1cells_)), d2mag_(std::move(o.d2mag_)),
          prefix_(std::move(o.prefix_)), guard_fires_(o.guard_fires_.load()) {}
    BuchstabTable& operator=(BuchstabTable&& o) noexcept {
        u_max_ = o.u_max_; h_ = o.h_; per_unit_ = o.per_unit_; units_ = o.units_;
        grid_ = std::move(o.grid_); nodes_ = std::move(o.nodes_); cells_ = std::move(o.cells_);
        d1cells_ = std::move(o.d1cells_); d2mag_ = std::move(o.d2mag_);
        prefix_ = std::move(o.prefix_); guard_fires_.store(o.guard_fires_.load());
        return *this;
    }

    double u_max() const { return u_max_; }
    double h() const { return h_; }
    int per_unit() const { return per_unit_; }

    std::size_t cell_count() const { return cells_.size(); }
    const Enclosure& cell(std::size_t i) const { return cells_[i]; }
    const Enclosure& node(std::size_t i) const { return nodes_[i]; }
    const Enclosure& grid_point(std::size_t i) const { return grid_[i]; }

    /// Enclosure of omega over u. Hull of intersecting cells, sharpened by
    /// the closed form where u lies in [1,3]. Inputs straddling 1 hull with
    /// the omega(u)=0 convention below 1 and bump the guard counter; inputs
    /// above u_max raise, never extrapolate.
    Enclosure omega(const Enclosure& u) const;

    /// Enclosure of omega'(u) over u, from the recurrence
    /// omega'(u) = (omega(u-1) - omega(u))/u. At the unit kinks the one-sided
    /// derivatives are hulled, so the result is a valid a.e. bound.
    Enclosure omega_prime(const Enclosure& u) const;

    /// Enclosure of the prefix integral  Omega(v) = Int_1^v omega(t) dt,
    /// clamped to 0 below v = 1. Requires v.hi <= u_max - 1.
    Enclosure omega_integral(const Enclosure& v) const;

    /// Convenience accessor: Int_2^u omega(t-1) dt = Omega(u-1).
    Enclosure integral_prefix(const Enclosure& u) const;

    /// Tight point-style evaluation of omega (used by the quadrature layer);
    /// goes through the closed forms and the prefix integral instead of cell
    /// hulls, so its width is independent of h for narrow inputs.
    Enclosure omega_tight(const Enclosure& u) const;

    /// Cheap non-certified double evaluation: closed form on [1,2], linear
    /// interpolation between node midpoints above. Returns 0 below u = 1.
    /// Used by the fast-quadrature and Monte-Carlo paths only.
    double omega_approx(double u) const;

    /// Non-certified double evaluation of Omega(v) = Int_1^v omega: exact
    /// log on [1,2], linear interpolation of the node prefix sums above.
    double omega_integral_approx(double v) const;

    std::uint64_t guard_fires() const { return guard_fires_.load(); }
    void reset_guard_fires() const { guard_fires_.store(0); }

    friend BuchstabTable build_table(double u_max, double h);

  private:
    Enclosure omega_integral_at(double x) const;  // exact-point Omega(x)
    Enclosure omega_point(double x) const;
    Enclosure hull_cells(double lo, double hi) const;
    std::size_t cell_index_below(double x) const;

    double u_max_ = 0.0;
    double h_ = 0.0;
    int per_unit_ = 0;
    int units_ = 0;
    std::vector<Enclosure> grid_;     // exact node coordinates 1 + i/N
    std::vector<Enclosure> nodes_;    // omega at nodes
    std::vector<Enclosure> cells_;    // omega range over [g_i, g_{i+1}]
    std::vector<Enclosure> d1cells_;  // omega' over cell (one-sided at kinks)
    std::vector<double> d2mag_;       // bound on |omega''| over cell interior
    std::vector<Enclosure> prefix_;   // Omega at nodes, up to u_max - 1
    mutable std::atomic<std::uint64_t> guard_fires_{0};
};

/// Closed-form omega on [1,3]: 1/u on [1,2], (1+log(u-1))/u on [2,3],
/// hull of both pieces on straddling inputs. Domain error outside [1,3].
Enclosure omega_closed(const Enclosure& u);

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Method-of-steps construction. Requires u_max >= 9 and 0 < h <= 1e-3.
BuchstabTable build_table(double u_max = 10.0, double h = 1e-4);

}  // namespace sievebound

#endif
