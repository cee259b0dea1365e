#include "sievebound/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace sievebound {

namespace {

std::string dec_dir(double v, bool down) {
    char buf[64];
    double x = v;
    for (;;) {
        std::snprintf(buf, sizeof buf, "%.11e", x);
        const double back = std::strtod(buf, nullptr);
        if (down ? back <= v : back >= v) return buf;
        x = std::nextafter(x, down ? -HUGE_VAL : HUGE_VAL);
    }
}

/// Rebuild every aggregate from the parsed per-term endpoints. Shared by
/// build_report and report_from_json so a round-trip is exact.
void finalize(BoundsReport& r) {
    std::map<TermId, Enclosure> vals;
    for (const ReportEntry& e : r.entries) vals.emplace(e.id, Enclosure(e.lo, e.hi));
    r.fixed = fixed_sum(vals);
    r.total = r.fixed + vals.at(TermId::G7);
    Enclosure rho(0.0);
    for (TermId id :
         {TermId::G0p, TermId::G1p, TermId::G2p, TermId::G3p, TermId::G4p, TermId::G5p})
        rho = rho + vals.at(id);
    r.rho = rho - vals.at(TermId::G6p) + vals.at(TermId::G7p);
    try {
        r.solved_tau = solve_tau(vals);
        r.admissible_tau = truncate4(r.solved_tau.lo());
    } catch (const infeasible_error&) {
        r.solved_tau = Enclosure(0.0);
        r.admissible_tau = 0.0;
    }
    r.total_target = r.legacy_bounds ? 0.998 : 0.9993;
    r.rho_target = 0.838;
    r.all_bounds_pass = true;
    r.any_budget_exceeded = false;
    for (const ReportEntry& e : r.entries) {
        if (!e.pass) r.all_bounds_pass = false;
        if (e.budget_exceeded) r.any_budget_exceeded = true;
    }
    r.total_below_target = r.total.hi() < r.total_target;
    r.total_below_one = r.total.hi() < 1.0;
    r.rho_below_target = r.rho.hi() < r.rho_target;
}

}  // namespace

std::string dec_lo(double v) { return dec_dir(v, true); }
std::string dec_hi(double v) { return dec_dir(v, false); }

BoundsReport build_report(const std::map<TermId, TermResult>& results, double tau,
                          bool legacy_bounds) {
    BoundsReport r;
    r.tau = tau;
    r.legacy_bounds = legacy_bounds;
    for (TermId id : kAllTerms) {
        const auto it = results.find(id);
        if (it == results.end())
            throw config_error("build_report: missing term " + term_name(id));
        const TermResult& t = it->second;
        ReportEntry e;
        e.id = id;
        e.lo_str = dec_lo(t.value.lo());
        e.hi_str = dec_hi(t.value.hi());
        e.lo = std::strtod(e.lo_str.c_str(), nullptr);
        e.hi = std::strtod(e.hi_str.c_str(), nullptr);
        e.bound = reference_bound(id, legacy_bounds);
        e.pass = !e.bound ||
                 (e.bound->is_lower ? e.lo >= e.bound->value : e.hi <= e.bound->value);
        if (t.budget_exceeded) e.pass = false;
        e.certified = t.certified;
        e.budget_exceeded = t.budget_exceeded;
        e.cells = t.cells;
        e.seconds = t.wall_seconds;
        e.u_guard_fires = t.u_guard_fires;
        r.entries.push_back(e);
    }
    finalize(r);
    return r;
}

std::string report_to_json(const BoundsReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["tau"] = r.tau;
    j["legacy_bounds"] = r.legacy_bounds;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const ReportEntry& e : r.entries) {
        nlohmann::ordered_json t;
        t["id"] = term_name(e.id);
        t["lo"] = e.lo_str;
        t["hi"] = e.hi_str;
        if (e.bound) {
            t["reference_bound"] = {{"value", e.bound->value},
                                {"direction", e.bound->is_lower ? "lower" : "upper"}};
        } else {
            t["reference_bound"] = nullptr;
        }
        t["pass"] = e.pass;
        t["certified"] = e.certified;
        t["budget_exceeded"] = e.budget_exceeded;
        t["cells"] = e.cells;
        t["seconds"] = e.seconds;
        t["u_guard_fires"] = e.u_guard_fires;
        terms.push_back(t);
    }
    j["terms"] = terms;
    nlohmann::ordered_json agg;
    agg["fixed_sum"] = {{"lo", dec_lo(r.fixed.lo())}, {"hi", dec_hi(r.fixed.hi())}};
    agg["total"] = {{"lo", dec_lo(r.total.lo())}, {"hi", dec_hi(r.total.hi())}};
    agg["solved_tau"] = {{"lo", dec_lo(r.solved_tau.lo())}, {"hi", dec_hi(r.solved_tau.hi())}};
    agg["rho"] = {{"lo", dec_lo(r.rho.lo())}, {"hi", dec_hi(r.rho.hi())}};
    char tau4[16];
    std::snprintf(tau4, sizeof tau4, "%.4f", r.admissible_tau);
    agg["admissible_tau"] = tau4;
    agg["targets"] = {{"total", r.total_target}, {"rho", r.rho_target}};
    agg["flags"] = {{"all_bounds_pass", r.all_bounds_pass},
                    {"total_below_target", r.total_below_target},
                    {"total_below_one", r.total_below_one},
                    {"rho_below_target", r.rho_below_target},
                    {"any_budget_exceeded", r.any_budget_exceeded}};
    j["aggregates"] = agg;
    return j.dump(2) + "\n";
}

BoundsReport report_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    BoundsReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.tau = j.at("tau").get<double>();
    r.legacy_bounds = j.at("legacy_bounds").get<bool>();
    for (const auto& t : j.at("terms")) {
        ReportEntry e;
        const auto id = parse_term(t.at("id").get<std::string>());
        if (!id) throw config_error("report_from_json: unknown term id");
        e.id = *id;
        e.lo_str = t.at("lo").get<std::string>();
        e.hi_str = t.at("hi").get<std::string>();
        e.lo = std::strtod(e.lo_str.c_str(), nullptr);
        e.hi = std::strtod(e.hi_str.c_str(), nullptr);
        if (!t.at("reference_bound").is_null()) {
            e.bound = TermBound{t.at("reference_bound").at("value").get<double>(),
                                t.at("reference_bound").at("direction").get<std::string>() ==
                                    "lower"};
        }
        e.pass = t.at("pass").get<bool>();
        e.certified = t.at("certified").get<bool>();
        e.budget_exceeded = t.at("budget_exceeded").get<bool>();
        e.cells = t.at("cells").get<std::uint64_t>();
        e.seconds = t.at("seconds").get<double>();
        e.u_guard_fires = t.at("u_guard_fires").get<std::uint64_t>();
        r.entries.push_back(e);
    }
    finalize(r);
    return r;
}

std::string report_to_human(const BoundsReport& r) {
    std::ostringstream os;
    os << "tau = " << r.tau << (r.legacy_bounds ? "  (legacy bounds)" : "") << "\n";
    os << "term      lo              hi              bound        pass cells\n";
    for (const ReportEntry& e : r.entries) {
        char line[160];
        std::string bound = "-";
        if (e.bound) {
            char b[32];
            std::snprintf(b, sizeof b, "%s%.6g", e.bound->is_lower ? ">=" : "<=",
                          e.bound->value);
            bound = b;
        }
        std::snprintf(line, sizeof line, "%-8s %-15s %-15s %-12s %-4s %llu\n",
                      term_name(e.id).c_str(), e.lo_str.c_str(), e.hi_str.c_str(),
                      bound.c_str(), e.pass ? "yes" : "NO",
                      static_cast<unsigned long long>(e.cells));
        os << line;
    }
    os << "fixed sum  [" << dec_lo(r.fixed.lo()) << ", " << dec_hi(r.fixed.hi()) << "]\n";
    os << "total      [" << dec_lo(r.total.lo()) << ", " << dec_hi(r.total.hi())
       << "]  target < " << r.total_target
       << (r.total_below_target ? "  ok" : "  MISSED") << "\n";
    os << "rho coeff  [" << dec_lo(r.rho.lo()) << ", " << dec_hi(r.rho.hi())
       << "]  target < " << r.rho_target << (r.rho_below_target ? "  ok" : "  MISSED")
       << "\n";
    char tau4[16];
    std::snprintf(tau4, sizeof tau4, "%.4f", r.admissible_tau);
    os << "admissible tau = " << tau4 << "\n";
    return os.str();
}

}  // namespace sievebound
