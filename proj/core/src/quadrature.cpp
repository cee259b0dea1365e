#include "sievebound/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

namespace sievebound {

namespace {

constexpr int kBatch1D = 64;
constexpr int kBatch3D = 256;

const Enclosure kOne(1.0);
const Enclosure kZero(0.0);

// ---------------------------------------------------------------------------
// Second-order interval jets in alpha: value, first and second derivative.
// ---------------------------------------------------------------------------

struct J2 {
    Enclosure v{0.0}, d1{0.0}, d2{0.0};
};

J2 operator+(const J2& a, const J2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
J2 operator-(const J2& a, const J2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
J2 operator*(const J2& a, const J2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + Enclosure(2.0) * a.d1 * b.d1 + a.v * b.d2};
}
J2 jinv(const J2& a) {
    const Enclosure iv = kOne / a.v;
    const Enclosure iv2 = iv * iv;
    return {iv, -(a.d1 * iv2), (Enclosure(2.0) * a.d1 * a.d1 - a.v * a.d2) * iv2 * iv};
}

/// On the 2-dim domains the inner variable never exceeds alpha/2, so the
/// true u = (alpha-beta)/beta is >= 1 pointwise; sub-1 spill is pure
/// rounding and may be intersected away.
Enclosure clamp_ge1(const Enclosure& u) {
    if (u.lo() >= 1.0) return u;
    return Enclosure(1.0, std::max(u.hi(), 1.0));
}

/// Jet of Omega(u(alpha)):  d/da Omega(u) = omega(u) u',
/// d2/da2 = omega'(u) u'^2 + omega(u) u''.
J2 omega_prefix_jet(const J2& u, const BuchstabTable& t, bool tight) {
    const Enclosure uc = clamp_ge1(u.v);
    const Enclosure val = t.omega_integral(uc);
    const Enclosure w = tight ? t.omega_tight(uc) : t.omega(uc);
    const Enclosure wp = t.omega_prime(uc);
    return {val, w * u.d1, wp * u.d1 * u.d1 + w * u.d2};
}

/// F(alpha) = alpha^p * sum over parts of [ Omega(u(L)) - Omega(u(U)) ]
/// with u(X) = (alpha - X)/X = alpha/X - 1; the inner beta integral is
/// collapsed exactly by the substitution u = (alpha-beta)/beta.
J2 eval_F(const TermSpec& spec, const Enclosure& A, const BuchstabTable& t, bool tight) {
    const J2 alpha{A, kOne, kZero};
    J2 total{};
    bool first = true;
    for (const InnerRange& part : spec.parts) {
        const AffineLimit L = limit_fn(part.lo);
        const AffineLimit U = limit_fn(part.hi);
        const J2 jl{L(A), L.c1, kZero};
        const J2 ju{U(A), U.c1, kZero};
        const J2 u1 = alpha * jinv(jl) - J2{kOne, kZero, kZero};
        const J2 u2 = alpha * jinv(ju) - J2{kOne, kZero, kZero};
        J2 d = omega_prefix_jet(u1, t, tight) - omega_prefix_jet(u2, t, tight);
        // the inner integrand is nonnegative and u1 >= u2 pointwise
        if (d.v.lo() < 0.0) d.v = Enclosure(0.0, std::max(d.v.hi(), 0.0));
        // seed the accumulator with the first jet: adding to the zero init
        // would outward-round it once and make the sum order-dependent
        total = first ? d : total + d;
        first = false;
    }
    // the collapse contributes one alpha: Int omega(u)/b^2 db = DeltaOmega/alpha,
    // so the jet still needs alpha^(p-1)
    if (spec.alpha_power - 1 == -1) total = total * jinv(alpha);
    return total;
}

/// Midpoint Taylor enclosure of Int_a^b F over one alpha cell:
///   (b-a) F(m) + F'(m) M1 + [F''] M2,  M1 = Int (x-m), M2 = Int (x-m)^2/2.
Enclosure contrib_1d(const TermSpec& spec, const BuchstabTable& t, double a, double b) {
    const double m = 0.5 * (a + b);
    const J2 fm = eval_F(spec, Enclosure(m), t, true);
    const J2 fb = eval_F(spec, Enclosure(a, b), t, false);
    const Enclosure Ea(a), Eb(b), Em(m);
    const Enclosure dl = Ea - Em, dr = Eb - Em;
    const Enclosure M1 = (dr * dr - dl * dl) / Enclosure(2.0);
    const Enclosure M2 = (dr * dr * dr - dl * dl * dl) / Enclosure(6.0);
    return (Eb - Ea) * fm.v + fm.d1 * M1 + fb.d2 * M2;
}

// ---------------------------------------------------------------------------
// Deterministic adaptive bisection engine (shared by the 1-D collapsed terms
// and the 3-D G4 boxes). Cells are kept in creation order; each round pops a
// fixed-size batch of the widest cells, splits them, and re-tightens the
// children against the parent enclosure, so the refinement tree -- and the
// final fixed-order sum -- is identical for any parallelism degree.
// ---------------------------------------------------------------------------

struct Cell {
    double lo[3]{0, 0, 0};
    double hi[3]{0, 0, 0};
    Enclosure c{0.0};
};

struct EngineOut {
    Enclosure total{0.0};
    std::uint64_t cells = 0;
    bool budget_exceeded = false;
};

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::min<std::size_t>(threads, n);
    pool.reserve(nt - 1);
    for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

EngineOut run_adaptive(int dim, std::vector<Cell> initial, double target,
                       std::uint64_t max_cells, int threads, int batch_size,
                       const double* scale,
                       const std::function<Enclosure(const double*, const double*)>& eval) {
    std::deque<Cell> cells;
    std::vector<char> dead;
    struct QEnt {
        double w;
        std::size_t idx;
    };
    auto cmp = [](const QEnt& a, const QEnt& b) {
        if (a.w != b.w) return a.w < b.w;  // widest first
        return a.idx > b.idx;              // then oldest first
    };
    std::priority_queue<QEnt, std::vector<QEnt>, decltype(cmp)> pq(cmp);

    EngineOut out;
    double width_sum = 0.0;
    for (Cell& c : initial) {
        c.c = eval(c.lo, c.hi);
        width_sum += enc_width(c.c);
        pq.push({enc_width(c.c), cells.size()});
        cells.push_back(c);
        dead.push_back(0);
        ++out.cells;
    }

    while (width_sum > target && !pq.empty()) {
        if (out.cells >= max_cells) {
            out.budget_exceeded = true;
            break;
        }
        std::vector<std::size_t> batch;
        while (static_cast<int>(batch.size()) < batch_size && !pq.empty()) {
            batch.push_back(pq.top().idx);
            pq.pop();
        }
        std::vector<std::pair<Cell, Cell>> kids(batch.size());
        parallel_for(batch.size(), threads, [&](std::size_t k) {
            const Cell& p = cells[batch[k]];
            int d = 0;
            double best = -1.0;
            for (int j = 0; j < dim; ++j) {
                const double ext = (p.hi[j] - p.lo[j]) / scale[j];
                if (ext > best) {
                    best = ext;
                    d = j;
                }
            }
            const double mid = 0.5 * (p.lo[d] + p.hi[d]);
            Cell a = p, b = p;
            a.hi[d] = mid;
            b.lo[d] = mid;
            a.c = eval(a.lo, a.hi);
            b.c = eval(b.lo, b.hi);
            // both the children's sum and the parent enclose the true value
            const Enclosure t = enc_intersect(a.c + b.c, p.c);
            const Enclosure na = enc_intersect(a.c, t - b.c);
            const Enclosure nb = enc_intersect(b.c, t - na);
            a.c = na;
            b.c = nb;
            kids[k] = {a, b};
        });
        for (std::size_t k = 0; k < batch.size(); ++k) {
            const std::size_t pid = batch[k];
            width_sum -= enc_width(cells[pid].c);
            dead[pid] = 1;
            for (const Cell& ch : {kids[k].first, kids[k].second}) {
                width_sum += enc_width(ch.c);
                pq.push({enc_width(ch.c), cells.size()});
                cells.push_back(ch);
                dead.push_back(0);
            }
            out.cells += 2;
        }
    }

    Enclosure total(0.0);
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!dead[i]) total = total + cells[i].c;
    out.total = total;
    return out;
}

// ---------------------------------------------------------------------------
// Seeded breakpoints: alpha values where u at an integration limit crosses an
// integer k (omega loses a derivative there).  u(X(alpha)) = k solves to
// alpha = (k+1) c0 / (1 - (k+1) c1) for the affine limit X = c0 + c1 alpha.
// ---------------------------------------------------------------------------

std::vector<double> seeded_breakpoints(const TermSpec& spec, double alo, double ahi) {
    std::vector<double> seeds;
    for (const InnerRange& part : spec.parts) {
        for (LimitKind kind : {part.lo, part.hi}) {
            const AffineLimit X = limit_fn(kind);
            const double c0 = 0.5 * (X.c0.lo() + X.c0.hi());
            const double c1 = 0.5 * (X.c1.lo() + X.c1.hi());
            for (int k = 1; k <= 8; ++k) {
                const double den = 1.0 - (k + 1) * c1;
                if (den == 0.0) continue;
                const double a = (k + 1) * c0 / den;
                if (a > alo + 1e-12 && a < ahi - 1e-12) seeds.push_back(a);
            }
        }
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                seeds.end());
    return seeds;
}

// ---------------------------------------------------------------------------
// G4: 3-D boxes in (alpha, b1, b2) with the inner b3 integral collapsed
// exactly, f4 handled by a gate on b1+b2 plus certified exclusion intervals
// in b3 for the sums b1+b3, b2+b3 and b1+b2+b3.
// ---------------------------------------------------------------------------

Enclosure beta3_integral(double base_lo, double base_hi,
                         std::vector<std::pair<double, double>> excl, const Enclosure& Ap,
                         const BuchstabTable& t, std::atomic<std::uint64_t>* guards) {
    if (base_hi <= base_lo) return Enclosure(0.0);
    for (auto& e : excl) {
        e.first = std::max(e.first, base_lo);
        e.second = std::min(e.second, base_hi);
    }
    excl.erase(std::remove_if(excl.begin(), excl.end(),
                              [](const auto& e) { return e.second <= e.first; }),
               excl.end());
    std::sort(excl.begin(), excl.end());
    Enclosure sum(0.0);
    auto add_piece = [&](double p, double q) {
        if (q <= p) return;
        const Enclosure up = (Ap - Enclosure(p)) / Enclosure(p);
        const Enclosure uq = (Ap - Enclosure(q)) / Enclosure(q);
        if (uq.lo() < 1.0 && guards) guards->fetch_add(1, std::memory_order_relaxed);
        Enclosure piece = (t.omega_integral(up) - t.omega_integral(uq)) / Ap;
        if (piece.lo() < 0.0) piece = Enclosure(0.0, std::max(piece.hi(), 0.0));
        sum = sum + piece;
    };
    double cur = base_lo;
    for (const auto& e : excl) {
        if (e.first > cur) add_piece(cur, e.first);
        cur = std::max(cur, e.second);
    }
    add_piece(cur, base_hi);
    return sum;
}

struct G4Ctx {
    const TermSpec* spec;
    const BuchstabTable* table;
    bool ignore_f4;
    std::atomic<std::uint64_t>* guards;
};

Enclosure eval_g4_box(const G4Ctx& c, const double* lo, const double* hi) {
    const BuchstabTable& t = *c.table;
    const Enclosure A(lo[0], hi[0]);
    const Enclosure cE = limit_fn(LimitKind::sigma_minus_alpha_p1)(A);
    const Enclosure am1 = A - kOne;
    const Enclosure band_lo = am1;
    const Enclosure band_hi = sigma(A);

    // part of the box that may intersect the domain c <= b2 <= b1 <= alpha-1
    const double p1lo = std::max(lo[1], cE.lo());
    const double p1hi = std::min(hi[1], am1.hi());
    if (p1hi <= p1lo) return Enclosure(0.0);
    const double p2lo = std::max(lo[2], cE.lo());
    const double p2hi = std::min(hi[2], p1hi);
    if (p2hi <= p2lo) return Enclosure(0.0);

    double upper = 0.0;
    {
        const Enclosure P1(p1lo, p1hi), P2(p2lo, p2hi);
        const Enclosure s12 = P1 + P2;
        const bool surely_banded =
            !c.ignore_f4 && s12.lo() >= band_lo.hi() && s12.hi() <= band_hi.lo();
        if (!surely_banded) {
            const Enclosure Ap = A - P1 - P2;
            std::vector<std::pair<double, double>> excl;
            if (!c.ignore_f4) {
                for (const Enclosure& X : {P1, P2, s12}) {
                    const Enclosure el = band_lo - X;
                    const Enclosure eh = band_hi - X;
                    // certain part of the exclusion band only
                    if (el.hi() < eh.lo()) excl.emplace_back(el.hi(), eh.lo());
                }
            }
            const Enclosure J = beta3_integral(cE.lo(), p2hi, excl, Ap, t, c.guards);
            const Enclosure I = alpha_weight(A, c.spec->alpha_power) * J / (P1 * P2);
            const Enclosure vol = (Enclosure(hi[0]) - Enclosure(lo[0])) *
                                  (Enclosure(p1hi) - Enclosure(p1lo)) *
                                  (Enclosure(p2hi) - Enclosure(p2lo));
            upper = std::max(0.0, (vol * I).hi());
        }
    }

    double lower = 0.0;
    {
        const double c1lo = std::max(lo[1], cE.hi());
        const double c1hi = std::min(hi[1], am1.lo());
        const double c2lo = std::max(lo[2], cE.hi());
        const double c2hi = std::min(hi[2], c1lo);
        if (c1hi > c1lo && c2hi > c2lo) {
            const Enclosure C1(c1lo, c1hi), C2(c2lo, c2hi);
            const Enclosure s12 = C1 + C2;
            const bool surely_clear =
                c.ignore_f4 || s12.hi() < band_lo.lo() || s12.lo() > band_hi.hi();
            if (surely_clear) {
                const Enclosure Ap = A - C1 - C2;
                std::vector<std::pair<double, double>> excl;
                if (!c.ignore_f4) {
                    for (const Enclosure& X : {C1, C2, s12}) {
                        const Enclosure el = band_lo - X;
                        const Enclosure eh = band_hi - X;
                        // widest possible exclusion band
                        if (el.lo() < eh.hi()) excl.emplace_back(el.lo(), eh.hi());
                    }
                }
                const Enclosure J = beta3_integral(cE.hi(), c2lo, excl, Ap, t, c.guards);
                const Enclosure I = alpha_weight(A, c.spec->alpha_power) * J / (C1 * C2);
                const Enclosure vol = (Enclosure(hi[0]) - Enclosure(lo[0])) *
                                      (Enclosure(c1hi) - Enclosure(c1lo)) *
                                      (Enclosure(c2hi) - Enclosure(c2lo));
                lower = std::max(0.0, (vol * I).lo());
            }
        }
    }
    if (lower > upper) lower = upper;
    return Enclosure(lower, upper);
}

// ---------------------------------------------------------------------------
// Fast (non-certified) midpoint estimates.
// ---------------------------------------------------------------------------

double fast_1d(const TermSpec& spec, double tau, int grid) {
    double a, b;
    const int base = base_index(spec.id);
    if (base == 0) {
        a = 1.0;
        b = 7.0 / 6.0;
    } else if (base == 5) {
        a = 7.0 / 6.0;
        b = 5.0 / 4.0;
    } else {
        a = 5.0 / 4.0;
        b = tau;
    }
    if (b <= a) return 0.0;
    const double h = (b - a) / grid;
    double s = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = a + (i + 0.5) * h;
        double g = (base == 0) ? 1.0 : 4.0;
        if (spec.alpha_power == 1) g *= x;
        if (spec.alpha_power == -1) g /= x;
        s += g;
    }
    return s * h;
}

double fast_2d(const TermSpec& spec, const BuchstabTable& t, int grid) {
    const double alo = spec.alpha_lo.approx();
    const double ahi = spec.alpha_hi.approx();
    const double h = (ahi - alo) / grid;
    double s = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double a = alo + (i + 0.5) * h;
        double f = 0.0;
        for (const InnerRange& part : spec.parts) {
            const AffineLimit L = limit_fn(part.lo), U = limit_fn(part.hi);
            const double bl = 0.5 * (L(Enclosure(a)).lo() + L(Enclosure(a)).hi());
            const double bu = 0.5 * (U(Enclosure(a)).lo() + U(Enclosure(a)).hi());
            if (bu <= bl) continue;
            f += t.omega_integral_approx((a - bl) / bl) -
                 t.omega_integral_approx((a - bu) / bu);
        }
        if (spec.alpha_power - 1 == -1) f /= a;  // collapse absorbs one alpha
        s += f;
    }
    return s * h;
}

double fast_4d(const TermSpec& spec, const BuchstabTable& t, int grid, bool ignore_f4) {
    const double alo = spec.alpha_lo.approx();
    const double ahi = spec.alpha_hi.approx();
    const double ha = (ahi - alo) / grid;
    double s = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double a = alo + (i + 0.5) * ha;
        const double cmin = (5.0 - 4.0 * a) / 3.0;
        const double am1 = a - 1.0;
        const double band_lo = am1, band_hi = (2.0 - a) / 3.0;
        const double h1 = (am1 - cmin) / grid;
        if (h1 <= 0.0) continue;
        double sa = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double b1 = cmin + (j + 0.5) * h1;
            const double h2 = (b1 - cmin) / grid;
            if (h2 <= 0.0) continue;
            double s1 = 0.0;
            for (int k = 0; k < grid; ++k) {
                const double b2 = cmin + (k + 0.5) * h2;
                const double s12 = b1 + b2;
                if (!ignore_f4 && s12 >= band_lo && s12 <= band_hi) continue;
                const double ap = a - b1 - b2;
                // exact inner b3 integral over [cmin, b2] minus exclusions
                std::vector<std::pair<double, double>> excl;
                if (!ignore_f4) {
                    for (double x : {b1, b2, s12}) {
                        const double el = band_lo - x, eh = band_hi - x;
                        if (el < eh) excl.emplace_back(el, eh);
                    }
                }
                for (auto& e : excl) {
                    e.first = std::max(e.first, cmin);
                    e.second = std::min(e.second, b2);
                }
                excl.erase(std::remove_if(excl.begin(), excl.end(),
                                          [](const auto& e) { return e.second <= e.first; }),
                           excl.end());
                std::sort(excl.begin(), excl.end());
                double J = 0.0;
                double cur = cmin;
                auto piece = [&](double p, double q) {
                    if (q <= p) return;
                    J += (t.omega_integral_approx((ap - p) / p) -
                          t.omega_integral_approx((ap - q) / q)) /
                         ap;
                };
                for (const auto& e : excl) {
                    if (e.first > cur) piece(cur, e.first);
                    cur = std::max(cur, e.second);
                }
                piece(cur, b2);
                s1 += J / (b1 * b2) * h2;
            }
            sa += s1 * h1;
        }
        if (spec.alpha_power == -1) sa /= a;
        s += sa * ha;
    }
    return s;
}

Enclosure widened_tau(double tau) {
    return Enclosure(std::nextafter(tau, -1.0), std::nextafter(tau, 2.0));
}

}  // namespace

double default_target_width(TermId id) {
    switch (id) {
        case TermId::G1:
        case TermId::G1p:
            return 2e-8;
        case TermId::G2:
            return 2e-9;
        case TermId::G2p:
        case TermId::G3:
        case TermId::G3p:
            return 1e-7;
        case TermId::G6:
        case TermId::G6p:
            return 5e-6;
        case TermId::G4:
        case TermId::G4p:
            return 1e-5;
        default:
            return 1e-12;  // closed forms
    }
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SIEVEBOUND_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

TermResult compute_term(const TermSpec& spec, const QuadratureConfig& cfg,
                        const BuchstabTable& table) {
    const auto t0 = std::chrono::steady_clock::now();
    TermResult r;
    r.id = spec.id;
    r.config = cfg;
    const std::uint64_t guards0 = table.guard_fires();
    const int threads = resolve_threads(cfg.parallelism);
    const double target =
        cfg.target_width > 0.0 ? cfg.target_width : default_target_width(spec.id);

    if (cfg.mode == QuadMode::fast) {
        double est = 0.0;
        std::uint64_t n = 0;
        if (spec.dimension == 1) {
            const int g = cfg.fast_grid > 0 ? cfg.fast_grid : 100000;
            est = fast_1d(spec, cfg.tau, g);
            n = static_cast<std::uint64_t>(g);
        } else if (spec.dimension == 2) {
            const int g = cfg.fast_grid > 0 ? cfg.fast_grid : 20000;
            est = fast_2d(spec, table, g);
            n = static_cast<std::uint64_t>(g);
        } else {
            const int g = cfg.fast_grid > 0 ? cfg.fast_grid : 220;
            est = fast_4d(spec, table, g, cfg.ignore_f4);
            n = static_cast<std::uint64_t>(g) * g * g;
        }
        r.value = Enclosure(est);
        r.certified = false;
        r.cells = n;
    } else if (spec.dimension == 1) {
        r.value = closed_form_term(spec.id, widened_tau(cfg.tau));
        r.certified = true;
        r.cells = 1;
    } else if (spec.dimension == 2) {
        const Enclosure Ea = spec.alpha_lo.enc();
        const Enclosure Eb = spec.alpha_hi.enc();
        const double alo = Ea.lo(), ahi = Eb.hi();
        std::vector<double> cuts{alo};
        if (cfg.seeded_breakpoints)
            for (double s : seeded_breakpoints(spec, alo, ahi)) cuts.push_back(s);
        cuts.push_back(ahi);
        std::vector<Cell> initial;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Cell c;
            c.lo[0] = cuts[i];
            c.hi[0] = cuts[i + 1];
            initial.push_back(c);
        }
        const double scale[1] = {ahi - alo};
        EngineOut eo = run_adaptive(
            1, std::move(initial), target, cfg.max_cells, threads, kBatch1D, scale,
            [&](const double* lo, const double* hi) {
                return contrib_1d(spec, table, lo[0], hi[0]);
            });
        Enclosure total = eo.total;
        // the exact rational endpoints need not be machine numbers; peel the
        // enclosing one-ulp slivers off with a crude one-cell bound
        for (const Enclosure& edge : {Ea, Eb}) {
            if (enc_width(edge) == 0.0) continue;
            const J2 fe = eval_F(spec, edge, table, false);
            const double m = std::max(0.0, ((Enclosure(edge.hi()) - Enclosure(edge.lo())) *
                                            fe.v).hi());
            total = total - Enclosure(0.0, m);
        }
        r.value = total;
        r.certified = true;
        r.budget_exceeded = eo.budget_exceeded;
        r.cells = eo.cells;
    } else {
        std::atomic<std::uint64_t> manual_guards{0};
        G4Ctx ctx{&spec, &table, cfg.ignore_f4, &manual_guards};
        const Enclosure Ea = spec.alpha_lo.enc();
        const Enclosure Eb = spec.alpha_hi.enc();
        const Enclosure Afull(Ea.lo(), Eb.hi());
        const double blo = limit_fn(LimitKind::sigma_minus_alpha_p1)(Afull).lo();
        const double bhi = (Afull - kOne).hi();
        Cell root;
        root.lo[0] = Ea.lo();
        root.hi[0] = Eb.hi();
        root.lo[1] = root.lo[2] = blo;
        root.hi[1] = root.hi[2] = bhi;
        const double scale[3] = {Eb.hi() - Ea.lo(), bhi - blo, bhi - blo};
        EngineOut eo = run_adaptive(
            3, {root}, target, cfg.max_cells, threads, kBatch3D, scale,
            [&](const double* lo, const double* hi) { return eval_g4_box(ctx, lo, hi); });
        Enclosure total = eo.total;
        for (const Enclosure& edge : {Ea, Eb}) {
            if (enc_width(edge) == 0.0) continue;
            const double sl[3] = {edge.lo(), blo, blo};
            const double sh[3] = {edge.hi(), bhi, bhi};
            const double m = std::max(0.0, eval_g4_box(ctx, sl, sh).hi());
            total = total - Enclosure(0.0, m);
        }
        r.value = total;
        r.certified = true;
        r.budget_exceeded = eo.budget_exceeded;
        r.cells = eo.cells;
        r.u_guard_fires = manual_guards.load();
    }

    r.u_guard_fires += table.guard_fires() - guards0;
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

TermResult compute_term(TermId id, const QuadratureConfig& cfg, const BuchstabTable& table) {
    return compute_term(term_spec(id), cfg, table);
}

}  // namespace sievebound
