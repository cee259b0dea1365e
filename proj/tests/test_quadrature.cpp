#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sievebound/aggregate.hpp"
#include "sievebound/quadrature.hpp"

using namespace sievebound;

namespace {
const BuchstabTable& table() {
    static BuchstabTable t = build_table(10.0, 1e-4);
    return t;
}

QuadratureConfig rig() {
    QuadratureConfig c;
    c.mode = QuadMode::rigorous;
    return c;
}
}  // namespace

TEST_CASE("two-dim terms meet their reference bounds at default widths") {
    for (TermId id : {TermId::G1, TermId::G2, TermId::G3, TermId::G6, TermId::G1p,
                      TermId::G2p, TermId::G3p, TermId::G6p}) {
        TermResult r = compute_term(id, rig(), table());
        CHECK(r.certified);
        CHECK(!r.budget_exceeded);
        CHECK(enc_width(r.value) <= 1e-5);
        auto b = reference_bound(id);
        REQUIRE(b.has_value());
        if (b->is_lower) {
            CHECK(r.value.lo() >= b->value);
        } else {
            CHECK(r.value.hi() <= b->value);
        }
    }
}

TEST_CASE("four-dim terms meet their reference bounds") {
    for (TermId id : {TermId::G4, TermId::G4p}) {
        TermResult r = compute_term(id, rig(), table());
        CHECK(r.certified);
        CHECK(!r.budget_exceeded);
        CHECK(enc_width(r.value) <= 5e-5);
        auto b = reference_bound(id);
        REQUIRE(b.has_value());
        CHECK(r.value.hi() <= b->value);
        CHECK(r.value.lo() >= 0.0);
    }
}

TEST_CASE("closed-form terms are exact and cheap") {
    QuadratureConfig c = rig();
    c.tau = 1.317;
    for (TermId id : {TermId::G0, TermId::G5, TermId::G7, TermId::G0p, TermId::G5p,
                      TermId::G7p}) {
        TermResult r = compute_term(id, c, table());
        CHECK(r.certified);
        CHECK(enc_width(r.value) <= 1e-9);
    }
    CHECK(compute_term(TermId::G0, c, table()).value.contains(1.0 / 6.0));
    CHECK(compute_term(TermId::G5, c, table()).value.contains(29.0 / 72.0));
    CHECK(compute_term(TermId::G5p, c, table()).value.contains(1.0 / 3.0));
}

TEST_CASE("empty alpha-slice integrates to zero") {
    // G1 over a degenerate alpha range: shrink via target spec manipulation
    TermSpec s = term_spec(TermId::G1);
    s.alpha_hi = s.alpha_lo;
    TermResult r = compute_term(s, rig(), table());
    CHECK(r.value.lo() <= 0.0);
    CHECK(r.value.hi() >= 0.0);
    CHECK(enc_width(r.value) <= 1e-12);
}

TEST_CASE("starved budget sets the flag and still returns a valid enclosure") {
    QuadratureConfig c = rig();
    c.max_cells = 10;
    TermResult r = compute_term(TermId::G2, c, table());
    CHECK(r.budget_exceeded);
    // enclosure must still contain the converged value
    TermResult full = compute_term(TermId::G2, rig(), table());
    CHECK(r.value.lo() <= full.value.lo() + 1e-15);
    CHECK(r.value.hi() >= full.value.hi() - 1e-15);
}

TEST_CASE("bit-reproducibility across parallelism degrees 1, 4, 8") {
    for (TermId id : {TermId::G2, TermId::G6, TermId::G4}) {
        QuadratureConfig c = rig();
        if (id == TermId::G4) c.target_width = 2e-4;  // keep the matrix quick
        c.parallelism = 1;
        TermResult r1 = compute_term(id, c, table());
        c.parallelism = 4;
        TermResult r4 = compute_term(id, c, table());
        c.parallelism = 8;
        TermResult r8 = compute_term(id, c, table());
        CHECK(r1.value.lo() == r4.value.lo());
        CHECK(r1.value.hi() == r4.value.hi());
        CHECK(r1.value.lo() == r8.value.lo());
        CHECK(r1.value.hi() == r8.value.hi());
        CHECK(r1.cells == r4.cells);
        CHECK(r1.cells == r8.cells);
    }
}

TEST_CASE("refinement nesting: tighter target stays inside looser enclosure") {
    for (TermId id : {TermId::G1, TermId::G2, TermId::G3, TermId::G6, TermId::G1p,
                      TermId::G2p, TermId::G3p, TermId::G6p}) {
        QuadratureConfig loose = rig();
        loose.target_width = 1e-4;
        QuadratureConfig tight = rig();
        tight.target_width = 1e-6;
        TermResult a = compute_term(id, loose, table());
        TermResult b = compute_term(id, tight, table());
        // nesting up to summation drift of a few ulps per cell
        CHECK(b.value.lo() >= a.value.lo() - 1e-13);
        CHECK(b.value.hi() <= a.value.hi() + 1e-13);
        CHECK(enc_width(b.value) <= enc_width(a.value) + 1e-13);
    }
}

TEST_CASE("G1 parts are order-independent bit-for-bit") {
    TermSpec s = term_spec(TermId::G1);
    REQUIRE(s.parts.size() == 2);
    TermResult fwd = compute_term(s, rig(), table());
    std::swap(s.parts[0], s.parts[1]);
    TermResult rev = compute_term(s, rig(), table());
    CHECK(fwd.value.lo() == rev.value.lo());
    CHECK(fwd.value.hi() == rev.value.hi());
}

TEST_CASE("G4 is bounded by its unconstrained companion") {
    QuadratureConfig c = rig();
    c.target_width = 5e-4;  // the unconstrained integral is much larger
    TermResult with_f4 = compute_term(TermId::G4, c, table());
    QuadratureConfig nc = c;
    nc.ignore_f4 = true;
    TermResult without = compute_term(TermId::G4, nc, table());
    CHECK(with_f4.value.hi() <= without.value.hi());
}

TEST_CASE("primed/unprimed sandwich: G >= alpha_min * G' and G <= alpha_max * G'") {
    for (int base : {1, 2, 3, 4, 6}) {
        TermId un = kAllTerms[base];
        TermId pr = kAllTerms[8 + base];
        QuadratureConfig c = rig();
        if (base == 4) c.target_width = 2e-4;
        TermResult g = compute_term(un, c, table());
        TermResult gp = compute_term(pr, c, table());
        const TermSpec& s = term_spec(un);
        const double alo = s.alpha_lo.approx(), ahi = s.alpha_hi.approx();
        CHECK(g.value.hi() >= alo * gp.value.lo() - 1e-12);
        CHECK(g.value.lo() <= ahi * gp.value.hi() + 1e-12);
    }
}

TEST_CASE("fast mode returns an uncertified point estimate inside the enclosure") {
    for (TermId id : {TermId::G1, TermId::G2, TermId::G6p}) {
        QuadratureConfig f = rig();
        f.mode = QuadMode::fast;
        TermResult fr = compute_term(id, f, table());
        CHECK(!fr.certified);
        TermResult rr = compute_term(id, rig(), table());
        CHECK(fr.value.lo() >= rr.value.lo());
        CHECK(fr.value.hi() <= rr.value.hi());
    }
}

TEST_CASE("default target widths are positive and within the acceptance caps") {
    for (TermId id : kAllTerms) {
        const double w = default_target_width(id);
        CHECK(w > 0.0);
        const TermSpec& s = term_spec(id);
        if (s.dimension == 2) CHECK(w <= 1e-5);
        if (s.dimension == 4) CHECK(w <= 5e-5);
    }
}

TEST_CASE("resolve_threads honors explicit request") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(1) == 1);
    CHECK(resolve_threads(0) >= 1);
}
