#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "sievebound/report_io.hpp"

using namespace sievebound;

namespace {
const BuchstabTable& table() {
    static BuchstabTable t = build_table(10.0, 1e-4);
    return t;
}

const std::map<TermId, TermResult>& all_results() {
    static std::map<TermId, TermResult> m = [] {
        std::map<TermId, TermResult> r;
        QuadratureConfig cfg;
        for (TermId id : kAllTerms) r.emplace(id, compute_term(id, cfg, table()));
        return r;
    }();
    return m;
}
}  // namespace

TEST_CASE("decimal endpoints round outward") {
    for (double v : {1.0 / 3.0, 0.028610926086728, 0.9992824768, -0.269, 1e-30, 0.0}) {
        const std::string lo = dec_lo(v), hi = dec_hi(v);
        CHECK(std::strtod(lo.c_str(), nullptr) <= v);
        CHECK(std::strtod(hi.c_str(), nullptr) >= v);
        // 12 significant digits keep the loss below 1 part in 1e11
        if (v != 0.0) {
            CHECK(std::fabs(std::strtod(lo.c_str(), nullptr) - v) <= std::fabs(v) * 1e-10);
            CHECK(std::fabs(std::strtod(hi.c_str(), nullptr) - v) <= std::fabs(v) * 1e-10);
        }
    }
}

TEST_CASE("report carries all sixteen terms in canonical order with pass flags") {
    BoundsReport r = build_report(all_results(), 1.317, false);
    REQUIRE(r.entries.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) CHECK(r.entries[i].id == kAllTerms[i]);
    CHECK(r.all_bounds_pass);
    CHECK(r.total_below_target);
    CHECK(r.total_below_one);
    CHECK(r.rho_below_target);
    CHECK(!r.any_budget_exceeded);
    CHECK(r.total.hi() < 0.9993);
    CHECK(r.rho.hi() < 0.838);
    CHECK(r.admissible_tau == doctest::Approx(1.3171));
    CHECK(r.total_target == doctest::Approx(0.9993));
}

TEST_CASE("json round-trip reproduces aggregates exactly") {
    BoundsReport r = build_report(all_results(), 1.317, false);
    const std::string text = report_to_json(r);
    BoundsReport back = report_from_json(text);
    REQUIRE(back.entries.size() == r.entries.size());
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        CHECK(back.entries[i].lo_str == r.entries[i].lo_str);
        CHECK(back.entries[i].hi_str == r.entries[i].hi_str);
        CHECK(back.entries[i].lo == r.entries[i].lo);
        CHECK(back.entries[i].hi == r.entries[i].hi);
        CHECK(back.entries[i].pass == r.entries[i].pass);
    }
    // aggregates re-derived from the parsed entries must match bit for bit
    CHECK(back.total.lo() == r.total.lo());
    CHECK(back.total.hi() == r.total.hi());
    CHECK(back.fixed.lo() == r.fixed.lo());
    CHECK(back.fixed.hi() == r.fixed.hi());
    CHECK(back.rho.lo() == r.rho.lo());
    CHECK(back.rho.hi() == r.rho.hi());
    CHECK(back.admissible_tau == r.admissible_tau);
    // a second emission is byte-identical (wall-times aside, which are
    // carried verbatim through the round-trip)
    CHECK(report_to_json(back) == text);
}

TEST_CASE("entry decimals never tighten the computed enclosure") {
    BoundsReport r = build_report(all_results(), 1.317, false);
    const auto& res = all_results();
    for (const auto& e : r.entries) {
        const Enclosure& v = res.at(e.id).value;
        CHECK(e.lo <= v.lo());
        CHECK(e.hi >= v.hi());
    }
}

TEST_CASE("budget-exceeded entry fails and taints the report") {
    std::map<TermId, TermResult> res = all_results();
    QuadratureConfig starved;
    starved.max_cells = 10;
    res.at(TermId::G4) = compute_term(TermId::G4, starved, table());
    REQUIRE(res.at(TermId::G4).budget_exceeded);
    BoundsReport r = build_report(res, 1.317, false);
    CHECK(r.any_budget_exceeded);
    for (const auto& e : r.entries) {
        if (e.id == TermId::G4) {
            CHECK(e.budget_exceeded);
            CHECK(!e.pass);
        }
    }
    CHECK(!r.all_bounds_pass);
}

TEST_CASE("legacy report compares against the older targets") {
    std::map<TermId, TermResult> res = all_results();
    QuadratureConfig cfg;
    cfg.tau = 1.312;  // tau-dependent entries must match the report's tau
    res.at(TermId::G7) = compute_term(TermId::G7, cfg, table());
    res.at(TermId::G7p) = compute_term(TermId::G7p, cfg, table());
    BoundsReport r = build_report(res, 1.312, true);
    CHECK(r.legacy_bounds);
    CHECK(r.total_target == doctest::Approx(0.998));
    CHECK(r.total.hi() < 0.998);
    CHECK(r.all_bounds_pass);
}

TEST_CASE("human rendering mentions every term and the verdict") {
    BoundsReport r = build_report(all_results(), 1.317, false);
    const std::string text = report_to_human(r);
    for (TermId id : kAllTerms) CHECK(text.find(term_name(id)) != std::string::npos);
    CHECK(text.find("total") != std::string::npos);
}
