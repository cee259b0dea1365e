#include "sievebound/terms.hpp"

#include <map>
#include <stdexcept>

namespace sievebound {

bool is_primed(TermId id) { return static_cast<int>(id) >= 8; }

int base_index(TermId id) { return static_cast<int>(id) % 8; }

std::string term_name(TermId id) {
    std::string s = "G" + std::to_string(base_index(id));
    if (is_primed(id)) s += "p";
    return s;
}

std::optional<TermId> parse_term(const std::string& name) {
    for (TermId id : kAllTerms) {
        if (term_name(id) == name) return id;
    }
    return std::nullopt;
}

Enclosure sigma(const Enclosure& alpha) {
    return (Enclosure(2.0) - alpha) / Enclosure(3.0);
}

Enclosure xi(const Enclosure& alpha) {
    return Enclosure::ratio(3, 2) - alpha;
}

AffineLimit limit_fn(LimitKind k) {
    switch (k) {
        case LimitKind::sigma_of_alpha:
            return {Enclosure::ratio(2, 3), Enclosure::ratio(-1, 3)};
        case LimitKind::xi_of_alpha:
            return {Enclosure::ratio(3, 2), Enclosure(-1.0)};
        case LimitKind::alpha_minus_2sigma:
            return {Enclosure::ratio(-4, 3), Enclosure::ratio(5, 3)};
        case LimitKind::half_alpha:
            return {Enclosure(0.0), Enclosure::ratio(1, 2)};
        case LimitKind::alpha_minus_1:
            return {Enclosure(-1.0), Enclosure(1.0)};
        case LimitKind::sigma_minus_alpha_p1:
            return {Enclosure::ratio(5, 3), Enclosure::ratio(-4, 3)};
    }
    throw std::logic_error("unknown limit kind");
}

namespace {

TermSpec make_spec(TermId id) {
    const bool primed = is_primed(id);
    TermSpec s;
    s.id = id;
    // literal alpha exponent of the integrand; primed = unprimed / alpha.
    // 2-dim terms carry alpha * omega((alpha-beta)/beta)/beta^2, the 4-dim
    // and the flat 1-dim integrands carry no alpha factor.
    switch (base_index(id)) {
        case 0:
            s.alpha_power = primed ? -1 : 0;
            break;
        case 4:
            s.alpha_power = primed ? -1 : 0;
            break;
        default:
            s.alpha_power = primed ? 0 : 1;
            break;
    }
    s.has_f4 = false;
    s.sign = 1;
    s.tau_dependent = false;
    switch (base_index(id)) {
        case 0:
        case 5:
            s.dimension = 1;
            s.alpha_lo = {1, 1};
            s.alpha_hi = {7, 6};  // G0/G0p range; G5/G5p use [7/6, 5/4]
            if (base_index(id) == 5) {
                s.alpha_lo = {7, 6};
                s.alpha_hi = {5, 4};
            }
            break;
        case 1:
            s.dimension = 2;
            s.alpha_lo = {1, 1};
            s.alpha_hi = {17, 16};
            s.parts = {{LimitKind::sigma_of_alpha, LimitKind::alpha_minus_2sigma},
                       {LimitKind::xi_of_alpha, LimitKind::half_alpha}};
            break;
        case 2:
            s.dimension = 2;
            s.alpha_lo = {17, 16};
            s.alpha_hi = {8, 7};
            s.parts = {{LimitKind::sigma_of_alpha, LimitKind::half_alpha}};
            break;
        case 3:
            s.dimension = 2;
            s.alpha_lo = {8, 7};
            s.alpha_hi = {7, 6};
            s.parts = {{LimitKind::sigma_of_alpha, LimitKind::half_alpha}};
            break;
        case 4:
            s.dimension = 4;
            s.alpha_lo = {8, 7};
            s.alpha_hi = {7, 6};
            s.has_f4 = true;
            break;
        case 6:
            s.dimension = 2;
            s.alpha_lo = {7, 6};
            s.alpha_hi = {5, 4};
            s.parts = {{LimitKind::alpha_minus_1, LimitKind::sigma_of_alpha}};
            s.sign = -1;
            break;
        case 7:
            s.dimension = 1;
            s.alpha_lo = {5, 4};
            s.alpha_hi = {5, 4};  // upper limit is tau, supplied at evaluation
            s.tau_dependent = true;
            break;
        default:
            throw std::logic_error("unknown term");
    }
    return s;
}

const std::map<TermId, TermSpec>& spec_table() {
    static const std::map<TermId, TermSpec> table = [] {
        std::map<TermId, TermSpec> t;
        for (TermId id : kAllTerms) t.emplace(id, make_spec(id));
        return t;
    }();
    return table;
}

}  // namespace

const TermSpec& term_spec(TermId id) { return spec_table().at(id); }

int f4(double alpha, double b1, double b2, double b3) {
    const double lo = alpha - 1.0;
    const double hi = (2.0 - alpha) / 3.0;
    const double sums[4] = {b1 + b2, b1 + b3, b2 + b3, b1 + b2 + b3};
    for (double s : sums) {
        if (s >= lo && s <= hi) return 0;
    }
    return 1;
}

CellClass f4_cell(const Enclosure& alpha, const Enclosure& b1, const Enclosure& b2,
                  const Enclosure& b3) {
    const Enclosure lo = alpha - Enclosure(1.0);
    const Enclosure hi = sigma(alpha);
    const Enclosure sums[4] = {b1 + b2, b1 + b3, b2 + b3, b1 + b2 + b3};
    bool all_clear = true;
    for (const Enclosure& s : sums) {
        // certainly inside the closed band for every point of the box
        if (s.lo() >= lo.hi() && s.hi() <= hi.lo()) return CellClass::outside;
        // certainly outside the band for every point of the box
        const bool clear = (s.hi() < lo.lo()) || (s.lo() > hi.hi());
        if (!clear) all_clear = false;
    }
    return all_clear ? CellClass::inside : CellClass::boundary;
}

Enclosure closed_form_term(TermId id, const Enclosure& tau) {
    switch (id) {
        case TermId::G0:
            return Enclosure::ratio(1, 6);
        case TermId::G5:
            return Enclosure::ratio(29, 72);
        case TermId::G0p:
            return enc_log(Enclosure::ratio(7, 6));
        case TermId::G5p:
            return Enclosure::ratio(1, 3);
        case TermId::G7:
            if (tau.lo() < 1.25)
                throw enclosure_error("G7 requires tau >= 5/4");
            return Enclosure(2.0) * (tau * tau - Enclosure::ratio(25, 16));
        case TermId::G7p:
            if (tau.lo() < 1.25)
                throw enclosure_error("G7p requires tau >= 5/4");
            return Enclosure(4.0) * (tau - Enclosure::ratio(5, 4));
        default:
            throw enclosure_error("term " + term_name(id) + " has no closed form");
    }
}

Enclosure alpha_weight(const Enclosure& alpha, int power) {
    switch (power) {
        case 0:
            return Enclosure(1.0);
        case 1:
            return alpha;
        case -1:
            return Enclosure(1.0) / alpha;
        default:
            throw std::logic_error("unsupported alpha power");
    }
}

Enclosure integrand(TermId id, const std::vector<Enclosure>& point, const BuchstabTable& table) {
    const TermSpec& spec = term_spec(id);
    if (static_cast<int>(point.size()) != spec.dimension)
        throw enclosure_error("integrand: wrong point dimension for " + term_name(id));
    const Enclosure& alpha = point[0];
    const Enclosure w = alpha_weight(alpha, spec.alpha_power);
    if (spec.dimension == 2) {
        const Enclosure& b = point[1];
        const Enclosure u = (alpha - b) / b;
        return w * table.omega(u) / (b * b);
    }
    if (spec.dimension == 4) {
        const Enclosure& b1 = point[1];
        const Enclosure& b2 = point[2];
        const Enclosure& b3 = point[3];
        const Enclosure u = (alpha - b1 - b2 - b3) / b3;
        return w * table.omega(u) / (b1 * b2 * b3 * b3);
    }
    throw enclosure_error("integrand: " + term_name(id) + " is a closed form");
}

}  // namespace sievebound
