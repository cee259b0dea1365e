#ifndef SIEVEBOUND_AGGREGATE_HPP
#define SIEVEBOUND_AGGREGATE_HPP

#include <map>
#include <optional>
#include <stdexcept>

#include "sievebound/enclosure.hpp"
#include "sievebound/terms.hpp"

namespace sievebound {

struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TermBound {
    double value;
    bool is_lower;  // lower bounds must be cleared from below (G6, G6p)
};

/// Per-term target bound, or the older reference values when legacy is set
/// (unprimed terms only). Terms with exact closed forms have no bound.
std::optional<TermBound> reference_bound(TermId id, bool legacy = false);

/// G0 + ... + G5 - G6 (the tau-independent part of the aggregate).
Enclosure fixed_sum(const std::map<TermId, Enclosure>& results);

/// fixed_sum + G7(tau) = G0+...+G5 - G6 + 2(tau^2 - 25/16).
Enclosure total_S(double tau, const std::map<TermId, Enclosure>& results);

/// Largest admissible exponent: tau* = sqrt(25/16 + (1 - F)/2) evaluated at
/// the fixed-sum's upper endpoint, so total_S(tau*) <= 1 is certified.
/// Throws infeasible_error when the fixed-sum upper endpoint reaches 1.
Enclosure solve_tau(const std::map<TermId, Enclosure>& results);

/// G0p + ... + G5p - G6p + 4(tau - 5/4).
Enclosure rho_coefficient(double tau, const std::map<TermId, Enclosure>& results);

/// tau quoted to 4 decimals, truncated toward the feasible side.
double truncate4(double x);

/// The older reference values (closed forms exact, bounds as quoted)
/// for G0..G6, used as a regression anchor for the legacy aggregate.
std::map<TermId, Enclosure> legacy_bound_values();

}  // namespace sievebound

#endif
