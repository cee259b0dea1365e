#ifndef SIEVEBOUND_ORACLE_HPP
#define SIEVEBOUND_ORACLE_HPP

#include <cstdint>

#include "sievebound/buchstab.hpp"
#include "sievebound/terms.hpp"

namespace sievebound {

/// Non-certified cross-check estimators for the rigorous engine.

struct OracleEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    bool degenerate = false;  // no sample landed inside the domain
};

struct PrimitiveCount {
    std::uint64_t x_max = 0;
    std::uint64_t count = 0;
    double ratio = 0.0;  // count / (x_max - 1)
};

/// Seeded Monte-Carlo estimate of a term: uniform samples over the term's
/// bounding box, zero outside the nested limits / where f4 = 0, scaled by the
/// box volume. Deterministic for fixed (seed, samples) regardless of how the
/// sample range is partitioned across workers (fixed 65536-sample chunks,
/// counter-based generator). Requires samples >= 10^4.
OracleEstimate mc_term(TermId id, std::int64_t samples, std::uint64_t seed,
                       const BuchstabTable& table, double tau = 1.317, int threads = 0);

/// Midpoint-rule estimate on a uniform grid (>= 10 points per dimension)
/// respecting the nested limits; 1-dim closed forms are integrated
/// numerically as well.
double riemann_fast(TermId id, int grid, const BuchstabTable& table, double tau = 1.317);

/// Counts n in [2, x_max] whose n^2+1 has a primitive divisor, via the
/// criterion P+(n^2+1) > 2n with full factorization (quadratic-residue sieve
/// over primes up to 2*x_max). Requires 2 <= x_max <= 10^7.
PrimitiveCount empirical_rho(std::uint64_t x_max);

/// Definition-level oracle: a primitive divisor exists iff some prime factor
/// of n^2+1 never divided m^2+1 for any m < n. Requires 2 <= x_max <= 10^4.
PrimitiveCount empirical_rho_by_definition(std::uint64_t x_max);

}  // namespace sievebound

#endif
