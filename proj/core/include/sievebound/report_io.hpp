#ifndef SIEVEBOUND_REPORT_IO_HPP
#define SIEVEBOUND_REPORT_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sievebound/aggregate.hpp"
#include "sievebound/quadrature.hpp"

namespace sievebound {

/// Enclosure endpoints as decimal strings at 12 significant digits, rounded
/// outward (lo down, hi up) so that a text round-trip never tightens an
/// enclosure.
std::string dec_lo(double v);
std::string dec_hi(double v);

struct ReportEntry {
    TermId id = TermId::G0;
    std::string lo_str, hi_str;  // outward decimal endpoints
    double lo = 0.0, hi = 0.0;   // the strings parsed back
    std::optional<TermBound> bound;
    bool pass = true;
    bool certified = false;
    bool budget_exceeded = false;
    std::uint64_t cells = 0;
    double seconds = 0.0;
    std::uint64_t u_guard_fires = 0;
};

/// One self-contained report document. All aggregates are derived from the
/// parsed per-term decimal endpoints, so re-reading an emitted report and
/// re-deriving them reproduces the emitted aggregate endpoints exactly.
struct BoundsReport {
    int schema_version = 1;
    double tau = 1.317;
    bool legacy_bounds = false;
    std::vector<ReportEntry> entries;

    Enclosure fixed{0.0};       // G0+...+G5-G6 from entry values
    Enclosure total{0.0};       // fixed + G7 entry
    Enclosure solved_tau{0.0};  // from the fixed-sum upper endpoint
    Enclosure rho{0.0};         // primed sum + G7p entry
    double admissible_tau = 0.0;

    double total_target = 0.9993;  // 0.998 with legacy bounds
    double rho_target = 0.838;
    bool all_bounds_pass = false;
    bool total_below_target = false;
    bool total_below_one = false;
    bool rho_below_target = false;
    bool any_budget_exceeded = false;
};

BoundsReport build_report(const std::map<TermId, TermResult>& results, double tau,
                          bool legacy_bounds);

std::string report_to_json(const BoundsReport& r);
BoundsReport report_from_json(const std::string& text);
std::string report_to_human(const BoundsReport& r);

}  // namespace sievebound

#endif
