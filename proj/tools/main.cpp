// sievebound: command-line front end for the verified sieve-integral engine.
//
// Exit codes: 0 = all requested bounds reproduced, 1 = computed but a bound
// or budget failed, 2 = invalid configuration.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sievebound/aggregate.hpp"
#include "sievebound/buchstab.hpp"
#include "sievebound/oracle.hpp"
#include "sievebound/quadrature.hpp"
#include "sievebound/report_io.hpp"
#include "sievebound/terms.hpp"

namespace {

using namespace sievebound;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct CommonOpts {
    std::string mode = "rigorous";
    double width = 0.0;
    std::uint64_t max_cells = 50'000'000;
    double tau = 1.317;
    double umax = 10.0;
    double h = 1e-4;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "human";
    bool legacy_bounds = false;
};

void add_table_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--umax", o.umax, "Buchstab table upper limit (>= 9)");
    // long-only help below frees the name "h" for the step size
    cmd->add_option("--h", o.h, "Buchstab table step (0 < h <= 1e-3)");
}

void add_quad_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--mode", o.mode, "Quadrature mode: rigorous | fast")
        ->check(CLI::IsMember({"rigorous", "fast"}));
    cmd->add_option("--width", o.width, "Target enclosure width (0 = per-term default)");
    cmd->add_option("--max-cells", o.max_cells, "Cell budget for the adaptive engine");
    cmd->add_option("--tau", o.tau, "Exponent tau for G7/G7p");
}

QuadratureConfig make_config(const CommonOpts& o) {
    QuadratureConfig cfg;
    cfg.mode = o.mode == "fast" ? QuadMode::fast : QuadMode::rigorous;
    cfg.target_width = o.width;
    cfg.max_cells = o.max_cells;
    cfg.tau = o.tau;
    return cfg;
}

/// Writes to --out when given, stdout otherwise.
int emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitPass;
    }
    std::ofstream f(out_path);
    if (!f) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return kExitConfig;
    }
    f << text;
    return kExitPass;
}

std::string term_result_text(const TermResult& r, const std::optional<TermBound>& bound,
                             bool pass) {
    std::ostringstream os;
    os << term_name(r.id) << " in [" << dec_lo(r.value.lo()) << ", " << dec_hi(r.value.hi())
       << "]  width=" << (r.value.hi() - r.value.lo())
       << "  mode=" << (r.certified ? "rigorous" : "fast") << "  cells=" << r.cells
       << "  seconds=" << r.wall_seconds << "  guard_fires=" << r.u_guard_fires << "\n";
    if (bound) {
        os << "  reference bound: " << (bound->is_lower ? ">= " : "<= ") << bound->value << "  "
           << (pass ? "PASS" : "FAIL") << "\n";
    }
    if (r.budget_exceeded) os << "  budget exceeded (max_cells=" << r.config.max_cells << ")\n";
    return os.str();
}

int cmd_omega(const CommonOpts& o, std::optional<double> u, std::optional<double> from,
              std::optional<double> to, std::optional<double> step) {
    const bool single = u.has_value();
    const bool range = from.has_value() || to.has_value() || step.has_value();
    if (single == range || (range && !(from && to && step))) {
        std::cerr << "error: pass either --u or all of --from/--to/--step\n";
        return kExitConfig;
    }
    BuchstabTable table;
    try {
        table = build_table(o.umax, o.h);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::ostringstream csv;
    csv << "u,lo,hi\n";
    auto row = [&](double x) -> bool {
        if (!(x >= 1.0 && x <= table.u_max())) {
            std::cerr << "error: u=" << x << " outside [1, " << table.u_max() << "]\n";
            return false;
        }
        Enclosure w = table.omega(Enclosure(x));
        csv << x << ',' << dec_lo(w.lo()) << ',' << dec_hi(w.hi()) << '\n';
        return true;
    };
    if (single) {
        if (!row(*u)) return kExitConfig;
    } else {
        if (*step <= 0.0 || *to < *from) {
            std::cerr << "error: require step > 0 and to >= from\n";
            return kExitConfig;
        }
        const long long n = static_cast<long long>(std::floor((*to - *from) / *step + 1e-9));
        for (long long i = 0; i <= n; ++i) {
            if (!row(*from + static_cast<double>(i) * *step)) return kExitConfig;
        }
    }
    return emit(o.out, csv.str());
}

int cmd_term(const CommonOpts& o, const std::string& name) {
    auto id = parse_term(name);
    if (!id) {
        std::cerr << "error: unknown term '" << name << "'\n";
        return kExitConfig;
    }
    BuchstabTable table = build_table(o.umax, o.h);
    TermResult r = compute_term(*id, make_config(o), table);
    auto bound = reference_bound(*id, o.legacy_bounds);
    bool pass = !r.budget_exceeded;
    if (bound && pass) {
        pass = bound->is_lower ? r.value.lo() >= bound->value : r.value.hi() <= bound->value;
    }
    int rc = emit(o.out, term_result_text(r, bound, pass));
    if (rc != kExitPass) return rc;
    return pass ? kExitPass : kExitFail;
}

int cmd_report(const CommonOpts& o) {
    BuchstabTable table = build_table(o.umax, o.h);
    QuadratureConfig cfg = make_config(o);
    std::map<TermId, TermResult> results;
    for (TermId id : kAllTerms) results.emplace(id, compute_term(id, cfg, table));
    BoundsReport rep = build_report(results, o.tau, o.legacy_bounds);
    const std::string text =
        o.format == "json" ? report_to_json(rep) : report_to_human(rep);
    int rc = emit(o.out, text);
    if (rc != kExitPass) return rc;
    const bool ok = rep.all_bounds_pass && rep.total_below_target && rep.rho_below_target &&
                    !rep.any_budget_exceeded;
    return ok ? kExitPass : kExitFail;
}

int cmd_solve(const CommonOpts& o) {
    BuchstabTable table = build_table(o.umax, o.h);
    QuadratureConfig cfg = make_config(o);
    std::map<TermId, Enclosure> values;
    if (o.legacy_bounds) {
        values = legacy_bound_values();
    } else {
        for (TermId id : kAllTerms) {
            if (is_primed(id) || base_index(id) == 7) continue;
            values.emplace(id, compute_term(id, cfg, table).value);
        }
    }
    try {
        Enclosure tau_star = solve_tau(values);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f\n", truncate4(tau_star.lo()));
        return emit(o.out, buf);
    } catch (const infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

int cmd_oracle(const CommonOpts& o, const std::string& name) {
    auto id = parse_term(name);
    if (!id) {
        std::cerr << "error: unknown term '" << name << "'\n";
        return kExitConfig;
    }
    BuchstabTable table = build_table(o.umax, o.h);
    OracleEstimate est;
    try {
        est = mc_term(*id, o.samples, o.seed, table, o.tau);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    QuadratureConfig cfg = make_config(o);
    cfg.mode = QuadMode::rigorous;
    TermResult rig = compute_term(*id, cfg, table);
    const double mid = 0.5 * (rig.value.lo() + rig.value.hi());
    const double dev = est.stderr_ > 0.0 ? std::fabs(est.mean - mid) / est.stderr_ : 0.0;
    const bool ok = !est.degenerate &&
                    std::fabs(est.mean - mid) <= 4.0 * est.stderr_ + 1e-9;
    std::ostringstream os;
    os << term_name(*id) << " monte-carlo: mean=" << est.mean << " stderr=" << est.stderr_
       << " samples=" << est.samples << " seed=" << est.seed << "\n"
       << "rigorous enclosure: [" << dec_lo(rig.value.lo()) << ", " << dec_hi(rig.value.hi())
       << "] midpoint=" << mid << "\n"
       << "agreement (4 sigma): " << (ok ? "ok" : "FAIL") << " (" << dev << " sigma)\n";
    int rc = emit(o.out, os.str());
    if (rc != kExitPass) return rc;
    return ok ? kExitPass : kExitFail;
}

int cmd_rho_empirical(const CommonOpts& o, std::uint64_t xmax) {
    PrimitiveCount pc;
    try {
        pc = empirical_rho(xmax);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::ostringstream os;
    os << "x_max=" << pc.x_max << " count=" << pc.count << " ratio=" << pc.ratio << "\n";
    return emit(o.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verified enclosures of Buchstab-function sieve integrals"};
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);

    CommonOpts o;
    std::optional<double> u, from, to, step;
    std::string term_name_arg, oracle_name_arg;
    std::uint64_t xmax = 1000;

    auto add_sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "Print help");
        return cmd;
    };

    auto* omega = add_sub("omega", "Sample omega(u) enclosures as CSV");
    omega->add_option("--u", u, "Single evaluation point");
    omega->add_option("--from", from, "Range start");
    omega->add_option("--to", to, "Range end");
    omega->add_option("--step", step, "Range step");
    add_table_flags(omega, o);
    omega->add_option("--out", o.out, "Output file (default stdout)");

    auto* term = add_sub("term", "Compute one term and check its bound");
    term->add_option("name", term_name_arg, "Term id, e.g. G2 or G6p")->required();
    add_quad_flags(term, o);
    add_table_flags(term, o);
    term->add_option("--out", o.out, "Output file (default stdout)");
    term->add_flag("--legacy-bounds", o.legacy_bounds, "Check against the older bounds");

    auto* report = add_sub("report", "Compute all 16 terms and the aggregates");
    add_quad_flags(report, o);
    add_table_flags(report, o);
    report->add_option("--out", o.out, "Output file (default stdout)");
    report->add_option("--format", o.format, "Output format: json | human")
        ->check(CLI::IsMember({"json", "human"}));
    report->add_flag("--legacy-bounds", o.legacy_bounds,
                     "Use the older per-term bounds and the 0.998 aggregate target");

    auto* solve = add_sub("solve", "Largest admissible exponent tau (4 decimals)");
    add_quad_flags(solve, o);
    add_table_flags(solve, o);
    solve->add_option("--out", o.out, "Output file (default stdout)");
    solve->add_flag("--legacy-bounds", o.legacy_bounds,
                    "Solve from the older reference values");

    auto* oracle = add_sub("oracle", "Monte-Carlo cross-check of one term");
    oracle->add_option("name", oracle_name_arg, "Term id, e.g. G2")->required();
    oracle->add_option("--samples", o.samples, "Sample count (>= 1e4)");
    oracle->add_option("--seed", o.seed, "Generator seed");
    oracle->add_option("--tau", o.tau, "Exponent tau for G7/G7p");
    add_table_flags(oracle, o);
    oracle->add_option("--out", o.out, "Output file (default stdout)");

    auto* rho = add_sub("rho-empirical", "Count n <= xmax with a primitive divisor");
    rho->add_option("--xmax", xmax, "Upper limit (2 <= xmax <= 1e7)")->required();
    rho->add_option("--out", o.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's own exit codes do not match the 0/1/2 contract; -h stays 0.
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*omega) return cmd_omega(o, u, from, to, step);
        if (*term) return cmd_term(o, term_name_arg);
        if (*report) return cmd_report(o);
        if (*solve) return cmd_solve(o);
        if (*oracle) return cmd_oracle(o, oracle_name_arg);
        if (*rho) return cmd_rho_empirical(o, xmax);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitConfig;
}
