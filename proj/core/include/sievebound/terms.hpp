#ifndef SIEVEBOUND_TERMS_HPP
#define SIEVEBOUND_TERMS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sievebound/buchstab.hpp"
#include "sievebound/enclosure.hpp"

namespace sievebound {

/// The sixteen sieve terms: G0..G7 and their primed companions G0p..G7p
/// (primed = unprimed integrand divided by alpha).
enum class TermId {
    G0, G1, G2, G3, G4, G5, G6, G7,
    G0p, G1p, G2p, G3p, G4p, G5p, G6p, G7p,
};

constexpr std::array<TermId, 16> kAllTerms = {
    TermId::G0, TermId::G1, TermId::G2, TermId::G3, TermId::G4, TermId::G5,
    TermId::G6, TermId::G7, TermId::G0p, TermId::G1p, TermId::G2p, TermId::G3p,
    TermId::G4p, TermId::G5p, TermId::G6p, TermId::G7p,
};

bool is_primed(TermId id);
int base_index(TermId id);  // 0..7
std::string term_name(TermId id);
std::optional<TermId> parse_term(const std::string& name);

/// sigma(alpha) = (2 - alpha)/3
Enclosure sigma(const Enclosure& alpha);
/// xi(alpha) = 3/2 - alpha
Enclosure xi(const Enclosure& alpha);

/// Inner integration limits are all affine in alpha; c0 + c1*alpha with
/// exact rational coefficients.
struct AffineLimit {
    Enclosure c0, c1;
    Enclosure operator()(const Enclosure& alpha) const { return c0 + c1 * alpha; }
};

enum class LimitKind {
    sigma_of_alpha,         // (2 - alpha)/3
    xi_of_alpha,            // 3/2 - alpha
    alpha_minus_2sigma,     // (5 alpha - 4)/3
    half_alpha,             // alpha/2
    alpha_minus_1,          // alpha - 1
    sigma_minus_alpha_p1,   // (5 - 4 alpha)/3, the G4 corner
};

AffineLimit limit_fn(LimitKind k);

struct InnerRange {
    LimitKind lo, hi;
};

struct Rational {
    long long num, den;
    Enclosure enc() const { return Enclosure::ratio(num, den); }
    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Static description of one term: its alpha-range, nested limits, alpha
/// weight exponent, f4 indicator and sign in the aggregate.
struct TermSpec {
    TermId id;
    int dimension;                  // 1, 2 or 4
    Rational alpha_lo, alpha_hi;    // alpha_hi unused for tau-dependent terms
    int alpha_power;                // literal alpha exponent in the integrand: +1, 0, or -1
    std::vector<InnerRange> parts;  // two entries for G1/G1p
    bool has_f4;
    int sign;                       // -1 for G6/G6p
    bool tau_dependent;             // G7/G7p
};

const TermSpec& term_spec(TermId id);

/// Characteristic function of the 4-dim terms: 1 iff none of b1+b2, b1+b3, b2+b3,
/// b1+b2+b3 lies in the closed band [alpha-1, sigma(alpha)].
int f4(double alpha, double b1, double b2, double b3);

enum class CellClass { inside, outside, boundary };

/// Cell-classified f4 on boxes: inside => f4 == 1 everywhere, outside =>
/// f4 == 0 everywhere, boundary otherwise.
CellClass f4_cell(const Enclosure& alpha, const Enclosure& b1, const Enclosure& b2,
                  const Enclosure& b3);

/// Closed forms: G0 = 1/6, G5 = 29/72, G7 = 2(tau^2 - 25/16),
/// G0p = log(7/6), G5p = 1/3, G7p = 4(tau - 5/4).
Enclosure closed_form_term(TermId id, const Enclosure& tau);

/// Literal pointwise integrand alpha^p * omega(u) / denominator with
/// u = (alpha - b)/b (2-dim) or (alpha - b1 - b2 - b3)/b3 (4-dim); the f4
/// factor is the caller's. point has 2 or 4 coordinates.
Enclosure integrand(TermId id, const std::vector<Enclosure>& point, const BuchstabTable& table);

Enclosure alpha_weight(const Enclosure& alpha, int power);

}  // namespace sievebound

#endif
