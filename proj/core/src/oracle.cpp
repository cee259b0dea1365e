#include "sievebound/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>
#include <vector>

#include "sievebound/quadrature.hpp"

namespace sievebound {

namespace {

constexpr std::int64_t kChunk = 65536;

// splitmix64-style counter-based generator: sample i, coordinate d of a run
// seeded with s draws from mix(s, i, d). Stateless, so any partition of the
// index range produces identical streams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double u01(std::uint64_t seed, std::uint64_t idx, unsigned dim) {
    const std::uint64_t z = mix64(seed ^ mix64(idx * 0x9E3779B97F4A7C15ULL + dim));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct SampleBox {
    int dim = 1;
    double lo[4] = {0, 0, 0, 0};
    double hi[4] = {0, 0, 0, 0};
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
        return v;
    }
};

double limit_at(LimitKind k, double alpha) {
    const AffineLimit f = limit_fn(k);
    const Enclosure v = f(Enclosure(alpha));
    return 0.5 * (v.lo() + v.hi());
}

SampleBox bounding_box(const TermSpec& spec, double tau) {
    SampleBox box;
    const int base = base_index(spec.id);
    if (spec.dimension == 1) {
        box.dim = 1;
        box.lo[0] = (base == 0) ? 1.0 : (base == 5 ? 7.0 / 6.0 : 5.0 / 4.0);
        box.hi[0] = (base == 0) ? 7.0 / 6.0 : (base == 5 ? 5.0 / 4.0 : tau);
        return box;
    }
    const double alo = spec.alpha_lo.approx(), ahi = spec.alpha_hi.approx();
    box.lo[0] = alo;
    box.hi[0] = ahi;
    if (spec.dimension == 2) {
        box.dim = 2;
        double blo = 1e9, bhi = -1e9;
        for (const InnerRange& part : spec.parts) {
            for (double a : {alo, ahi}) {
                blo = std::min(blo, limit_at(part.lo, a));
                bhi = std::max(bhi, limit_at(part.hi, a));
            }
        }
        box.lo[1] = blo;
        box.hi[1] = bhi;
        return box;
    }
    box.dim = 4;
    const double cmin = (5.0 - 4.0 * ahi) / 3.0;
    const double bmax = ahi - 1.0;
    for (int d = 1; d < 4; ++d) {
        box.lo[d] = cmin;
        box.hi[d] = bmax;
    }
    return box;
}

double sample_value(const TermSpec& spec, const SampleBox& box, const BuchstabTable& t,
                    std::uint64_t seed, std::uint64_t idx) {
    double x[4];
    for (int d = 0; d < box.dim; ++d)
        x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * u01(seed, idx, d);
    const double a = x[0];
    const int base = base_index(spec.id);
    const double w =
        spec.alpha_power == 1 ? a : (spec.alpha_power == -1 ? 1.0 / a : 1.0);
    if (spec.dimension == 1) return w * (base == 0 ? 1.0 : 4.0);
    if (spec.dimension == 2) {
        const double b = x[1];
        double f = 0.0;
        for (const InnerRange& part : spec.parts) {
            if (b >= limit_at(part.lo, a) && b <= limit_at(part.hi, a)) {
                f += t.omega_approx((a - b) / b) / (b * b);
            }
        }
        return w * f;
    }
    const double b1 = x[1], b2 = x[2], b3 = x[3];
    const double c = (5.0 - 4.0 * a) / 3.0;
    if (!(b3 >= c && b3 <= b2 && b2 <= b1 && b1 <= a - 1.0)) return 0.0;
    if (f4(a, b1, b2, b3) == 0) return 0.0;
    const double u = (a - b1 - b2 - b3) / b3;
    return w * t.omega_approx(u) / (b1 * b2 * b3 * b3);
}

}  // namespace

OracleEstimate mc_term(TermId id, std::int64_t samples, std::uint64_t seed,
                       const BuchstabTable& table, double tau, int threads) {
    if (samples < 10000) throw config_error("mc_term: samples must be >= 10^4");
    const TermSpec& spec = term_spec(id);
    const SampleBox box = bounding_box(spec, tau);
    const double vol = box.volume();

    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> sums(chunks, 0.0), sqs(chunks, 0.0);
    std::vector<std::int64_t> hits(chunks, 0);
    const int nthreads = resolve_threads(threads);

    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::int64_t b = c * kChunk;
            const std::int64_t e = std::min(samples, b + kChunk);
            double s = 0.0, ss = 0.0;
            std::int64_t h = 0;
            for (std::int64_t i = b; i < e; ++i) {
                const double f =
                    sample_value(spec, box, table, seed, static_cast<std::uint64_t>(i));
                s += f;
                ss += f * f;
                if (f != 0.0) ++h;
            }
            sums[c] = s;
            sqs[c] = ss;
            hits[c] = h;
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // fixed chunk-order reduction: identical result for any thread count
    double s = 0.0, ss = 0.0;
    std::int64_t accepted = 0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        s += sums[c];
        ss += sqs[c];
        accepted += hits[c];
    }
    const double n = static_cast<double>(samples);
    const double mean_f = s / n;
    double var = 0.0;
    if (samples > 1) var = std::max(0.0, (ss / n - mean_f * mean_f) * n / (n - 1.0));

    OracleEstimate est;
    est.mean = vol * mean_f;
    est.stderr_ = vol * std::sqrt(var / n);
    est.samples = samples;
    est.seed = seed;
    est.degenerate = (accepted == 0);
    return est;
}

double riemann_fast(TermId id, int grid, const BuchstabTable& table, double tau) {
    if (grid < 10) throw config_error("riemann_fast: grid must be >= 10 per dimension");
    QuadratureConfig cfg;
    cfg.mode = QuadMode::fast;
    cfg.fast_grid = grid;
    cfg.tau = tau;
    return compute_term(id, cfg, table).value.lo();
}

namespace {

std::uint64_t modpow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

/// Square root of -1 mod p for p = 1 (mod 4): q^((p-1)/4) for the smallest
/// quadratic non-residue q.
std::uint64_t sqrt_minus_one(std::uint64_t p) {
    for (std::uint64_t q = 2;; ++q) {
        if (modpow(q, (p - 1) / 2, p) == p - 1) return modpow(q, (p - 1) / 4, p);
    }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<char> comp(n + 1, 0);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return primes;
}

}  // namespace

PrimitiveCount empirical_rho(std::uint64_t x_max) {
    if (x_max < 2 || x_max > 10000000ULL)
        throw config_error("empirical_rho: x_max must lie in [2, 10^7]");
    std::vector<std::uint64_t> v(x_max + 1);
    std::vector<std::uint32_t> maxp(x_max + 1, 1);
    for (std::uint64_t n = 2; n <= x_max; ++n) v[n] = n * n + 1;
    // p = 2 divides n^2+1 exactly once, for odd n
    for (std::uint64_t n = 3; n <= x_max; n += 2) {
        v[n] /= 2;
        maxp[n] = 2;
    }
    // odd primes dividing n^2+1 satisfy p = 1 (mod 4); n = +-r (mod p) where
    // r^2 = -1 (mod p). Any cofactor surviving all p <= 2*x_max is a prime
    // exceeding 2*x_max >= 2n, so the criterion holds for it automatically.
    for (std::uint64_t p : primes_up_to(2 * x_max)) {
        if (p % 4 != 1) continue;
        const std::uint64_t r = sqrt_minus_one(p);
        for (std::uint64_t root : {r, p - r}) {
            std::uint64_t n0 = root;
            while (n0 < 2) n0 += p;
            for (std::uint64_t n = n0; n <= x_max; n += p) {
                while (v[n] % p == 0) v[n] /= p;
                maxp[n] = static_cast<std::uint32_t>(p);
            }
        }
    }
    PrimitiveCount pc;
    pc.x_max = x_max;
    for (std::uint64_t n = 2; n <= x_max; ++n) {
        if (v[n] > 1 || maxp[n] > 2 * n) ++pc.count;
    }
    pc.ratio = static_cast<double>(pc.count) / static_cast<double>(x_max - 1);
    return pc;
}

PrimitiveCount empirical_rho_by_definition(std::uint64_t x_max) {
    if (x_max < 2 || x_max > 10000ULL)
        throw config_error("empirical_rho_by_definition: x_max must lie in [2, 10^4]");
    std::set<std::uint64_t> seen{2};  // prime factors of 1^2+1
    PrimitiveCount pc;
    pc.x_max = x_max;
    for (std::uint64_t n = 2; n <= x_max; ++n) {
        std::uint64_t m = n * n + 1;
        std::vector<std::uint64_t> factors;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d) continue;
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
        if (m > 1) factors.push_back(m);
        bool primitive = false;
        for (std::uint64_t p : factors)
            if (!seen.count(p)) primitive = true;
        if (primitive) ++pc.count;
        for (std::uint64_t p : factors) seen.insert(p);
    }
    pc.ratio = static_cast<double>(pc.count) / static_cast<double>(x_max - 1);
    return pc;
}

}  // namespace sievebound
