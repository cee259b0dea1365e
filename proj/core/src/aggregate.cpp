#include "sievebound/aggregate.hpp"

#include <cmath>

namespace sievebound {

namespace {

Enclosure widened_tau(double tau) {
    // one ulp outward, but never below the G7/G7p domain edge 5/4
    const double lo = std::max(std::nextafter(tau, -1.0), 1.25);
    return Enclosure(std::min(lo, tau), std::nextafter(tau, 3.0));
}

const Enclosure& require(const std::map<TermId, Enclosure>& results, TermId id) {
    const auto it = results.find(id);
    if (it == results.end())
        throw config_error("aggregate: missing term " + term_name(id));
    return it->second;
}

}  // namespace

std::optional<TermBound> reference_bound(TermId id, bool legacy) {
    switch (id) {
        case TermId::G1:
            return TermBound{legacy ? 0.0287 : 0.028611, false};
        case TermId::G2:
            return TermBound{legacy ? 0.08622 : 0.086062, false};
        case TermId::G3:
            return TermBound{legacy ? 0.03107 : 0.030992, false};
        case TermId::G4:
            return TermBound{legacy ? 0.00011 : 0.0001, false};
        case TermId::G6:
            return TermBound{legacy ? 0.035631 : 0.059841, true};
        case TermId::G1p:
            return TermBound{0.027475, false};
        case TermId::G2p:
            return TermBound{0.077933, false};
        case TermId::G3p:
            return TermBound{0.026835, false};
        case TermId::G4p:
            return TermBound{0.00009, false};
        case TermId::G6p:
            return TermBound{0.05016, true};
        default:
            return std::nullopt;
    }
}

Enclosure fixed_sum(const std::map<TermId, Enclosure>& results) {
    Enclosure s(0.0);
    for (TermId id : {TermId::G0, TermId::G1, TermId::G2, TermId::G3, TermId::G4, TermId::G5})
        s = s + require(results, id);
    return s - require(results, TermId::G6);
}

Enclosure total_S(double tau, const std::map<TermId, Enclosure>& results) {
    return fixed_sum(results) + closed_form_term(TermId::G7, widened_tau(tau));
}

Enclosure solve_tau(const std::map<TermId, Enclosure>& results) {
    const double f_hi = fixed_sum(results).hi();
    if (f_hi >= 1.0) throw infeasible_error("solve_tau: fixed-sum reaches 1");
    const Enclosure head = (Enclosure(1.0) - Enclosure(f_hi)) / Enclosure(2.0);
    return enc_sqrt(Enclosure::ratio(25, 16) + head);
}

Enclosure rho_coefficient(double tau, const std::map<TermId, Enclosure>& results) {
    Enclosure s(0.0);
    for (TermId id :
         {TermId::G0p, TermId::G1p, TermId::G2p, TermId::G3p, TermId::G4p, TermId::G5p})
        s = s + require(results, id);
    s = s - require(results, TermId::G6p);
    return s + closed_form_term(TermId::G7p, widened_tau(tau));
}

double truncate4(double x) { return std::floor(x * 10000.0) / 10000.0; }

std::map<TermId, Enclosure> legacy_bound_values() {
    std::map<TermId, Enclosure> m;
    m.emplace(TermId::G0, Enclosure::ratio(1, 6));
    m.emplace(TermId::G1, Enclosure(0.0287));
    m.emplace(TermId::G2, Enclosure(0.08622));
    m.emplace(TermId::G3, Enclosure(0.03107));
    m.emplace(TermId::G4, Enclosure(0.00011));
    m.emplace(TermId::G5, Enclosure::ratio(29, 72));
    m.emplace(TermId::G6, Enclosure(0.035631));
    return m;
}

}  // namespace sievebound
