#ifndef SIEVEBOUND_QUADRATURE_HPP
#define SIEVEBOUND_QUADRATURE_HPP

#include <cstdint>
#include <string>

#include "sievebound/buchstab.hpp"
#include "sievebound/enclosure.hpp"
#include "sievebound/terms.hpp"

namespace sievebound {

enum class QuadMode { rigorous, fast };

struct QuadratureConfig {
    QuadMode mode = QuadMode::rigorous;
    /// Target enclosure width; 0 picks the per-term default.
    double target_width = 0.0;
    std::uint64_t max_cells = 50'000'000;
    bool seeded_breakpoints = true;
    /// Worker threads; 0 reads SIEVEBOUND_THREADS, falling back to 1.
    int parallelism = 0;
    /// Evaluate G4/G4p without the f4 indicator (diagnostic only).
    bool ignore_f4 = false;
    /// Fast-mode grid points per dimension; 0 picks a per-dimension default.
    int fast_grid = 0;
    /// tau for G7/G7p.
    double tau = 1.317;
};

struct TermResult {
    TermId id;
    Enclosure value{0.0};
    bool certified = false;       // false in fast mode
    bool budget_exceeded = false; // max_cells hit before target width
    std::uint64_t cells = 0;      // integration cells evaluated
    double wall_seconds = 0.0;
    std::uint64_t u_guard_fires = 0;  // omega(u) evaluations that dipped below 1
    QuadratureConfig config;
};

double default_target_width(TermId id);

/// Compute one term's enclosure (rigorous mode) or midpoint estimate
/// (fast mode, returned as a degenerate enclosure).
TermResult compute_term(TermId id, const QuadratureConfig& cfg, const BuchstabTable& table);

/// Same engine driven by an explicit TermSpec (e.g. with reordered parts);
/// used by compute_term(TermId, ...) and by property tests.
TermResult compute_term(const TermSpec& spec, const QuadratureConfig& cfg,
                        const BuchstabTable& table);

int resolve_threads(int requested);

}  // namespace sievebound

#endif
