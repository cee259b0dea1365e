#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sievebound/oracle.hpp"
#include "sievebound/quadrature.hpp"

using namespace sievebound;

namespace {
const BuchstabTable& table() {
    static BuchstabTable t = build_table(10.0, 1e-4);
    return t;
}
}  // namespace

TEST_CASE("monte-carlo is deterministic for fixed seed and sample count") {
    OracleEstimate a = mc_term(TermId::G2, 100000, 42, table());
    OracleEstimate b = mc_term(TermId::G2, 100000, 42, table());
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    // and independent of the thread count
    OracleEstimate c = mc_term(TermId::G2, 100000, 42, table(), 1.317, 1);
    OracleEstimate d = mc_term(TermId::G2, 100000, 42, table(), 1.317, 8);
    CHECK(c.mean == d.mean);
    CHECK(a.mean == c.mean);
    // different seed moves the estimate
    OracleEstimate e = mc_term(TermId::G2, 100000, 43, table());
    CHECK(e.mean != a.mean);
}

TEST_CASE("monte-carlo sample-count guard") {
    CHECK_THROWS_AS(mc_term(TermId::G2, 100, 1, table()), config_error);
}

TEST_CASE("monte-carlo agrees with the rigorous enclosure within 4 sigma") {
    QuadratureConfig cfg;  // per-term default widths keep the midpoints sharp
    for (TermId id : kAllTerms) {
        TermResult rig = compute_term(id, cfg, table());
        OracleEstimate est = mc_term(id, 1'000'000, 7, table());
        CHECK(!est.degenerate);
        const double mid = 0.5 * (rig.value.lo() + rig.value.hi());
        // 1e-9 absolute slack: constant integrands have stderr exactly 0
        CHECK(std::fabs(est.mean - mid) <= 4.0 * est.stderr_ + 1e-9);
    }
}

TEST_CASE("riemann_fast agrees with rigorous enclosures") {
    for (TermId id : {TermId::G1, TermId::G2, TermId::G3, TermId::G6, TermId::G2p}) {
        QuadratureConfig cfg;
        TermResult rig = compute_term(id, cfg, table());
        const double est = riemann_fast(id, 20000, table());
        CHECK(est >= rig.value.lo() - 1e-11);
        CHECK(est <= rig.value.hi() + 1e-11);
    }
    CHECK_THROWS_AS(riemann_fast(TermId::G2, 5, table()), config_error);
}

TEST_CASE("empirical primitive-divisor counts") {
    PrimitiveCount p7 = empirical_rho(7);
    CHECK(p7.x_max == 7);
    CHECK(p7.count == 4);

    PrimitiveCount p2 = empirical_rho(2);
    CHECK(p2.count == 1);  // 2^2+1 = 5 > 4

    CHECK_THROWS_AS(empirical_rho(1), config_error);
    CHECK_THROWS_AS(empirical_rho_by_definition(100000), config_error);
}

TEST_CASE("criterion-based count equals definition-based count up to 1e3") {
    PrimitiveCount crit = empirical_rho(1000);
    PrimitiveCount defn = empirical_rho_by_definition(1000);
    CHECK(crit.count == defn.count);
    CHECK(crit.x_max == defn.x_max);
}

TEST_CASE("empirical count is monotone in x_max") {
    std::uint64_t prev = 0;
    for (std::uint64_t x : {10u, 100u, 1000u, 10000u}) {
        PrimitiveCount p = empirical_rho(x);
        CHECK(p.count >= prev);
        CHECK(p.count <= x - 1);
        prev = p.count;
    }
}

TEST_CASE("ratio field is count over x_max - 1") {
    PrimitiveCount p = empirical_rho(1000);
    CHECK(p.ratio == doctest::Approx(static_cast<double>(p.count) / 999.0));
}
