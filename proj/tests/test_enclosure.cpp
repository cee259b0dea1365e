#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sievebound/enclosure.hpp"

using namespace sievebound;

TEST_CASE("construction and accessors") {
    Enclosure a(1.0, 2.0);
    CHECK(a.lo() == 1.0);
    CHECK(a.hi() == 2.0);
    Enclosure p(3.5);
    CHECK(p.lo() == 3.5);
    CHECK(p.hi() == 3.5);
    CHECK_THROWS(Enclosure(2.0, 1.0));
}

TEST_CASE("ratio encloses the exact rational") {
    Enclosure third = Enclosure::ratio(1, 3);
    CHECK(third.lo() <= 1.0 / 3.0);
    CHECK(third.hi() >= 1.0 / 3.0);
    CHECK(third.hi() - third.lo() <= 1e-15);
    Enclosure half = Enclosure::ratio(1, 2);
    CHECK(half.lo() <= 0.5);
    CHECK(half.hi() >= 0.5);
    CHECK(half.hi() - half.lo() <= 1e-15);
    Enclosure neg = Enclosure::ratio(-29, 72);
    CHECK(neg.lo() <= -29.0 / 72.0);
    CHECK(neg.hi() >= -29.0 / 72.0);
}

TEST_CASE("arithmetic contains long-double reference on random pairs") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> val(-50.0, 50.0);
    std::uniform_real_distribution<double> w(0.0, 1e-6);
    int checked = 0;
    for (int i = 0; i < 100000; ++i) {
        double a = val(rng), b = val(rng);
        Enclosure A(a, a + w(rng)), B(b, b + w(rng));
        long double x = a, y = b;

        Enclosure s = A + B;
        CHECK(static_cast<long double>(s.lo()) <= x + y);
        CHECK(static_cast<long double>(s.hi()) >= x + y);

        Enclosure d = A - B;
        CHECK(static_cast<long double>(d.lo()) <= x - y);
        CHECK(static_cast<long double>(d.hi()) >= x - y);

        Enclosure m = A * B;
        CHECK(static_cast<long double>(m.lo()) <= x * y);
        CHECK(static_cast<long double>(m.hi()) >= x * y);

        if (std::fabs(b) > 1e-3) {
            Enclosure q = A / B;
            CHECK(static_cast<long double>(q.lo()) <= x / y);
            CHECK(static_cast<long double>(q.hi()) >= x / y);
            ++checked;
        }
    }
    CHECK(checked > 90000);
}

TEST_CASE("log and sqrt enclose reference values") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> val(1e-3, 100.0);
    for (int i = 0; i < 10000; ++i) {
        double a = val(rng);
        Enclosure A(a);
        Enclosure l = enc_log(A);
        long double lr = std::log(static_cast<long double>(a));
        CHECK(static_cast<long double>(l.lo()) <= lr);
        CHECK(static_cast<long double>(l.hi()) >= lr);
        Enclosure s = enc_sqrt(A);
        long double sr = std::sqrt(static_cast<long double>(a));
        CHECK(static_cast<long double>(s.lo()) <= sr);
        CHECK(static_cast<long double>(s.hi()) >= sr);
    }
    CHECK_THROWS(enc_log(Enclosure(-1.0, 1.0)));
    CHECK_THROWS(enc_sqrt(Enclosure(-1.0, -0.5)));
}

TEST_CASE("division by interval containing zero throws") {
    CHECK_THROWS(Enclosure(1.0) / Enclosure(-1.0, 1.0));
}

TEST_CASE("hull, intersect, width, mag") {
    Enclosure a(1.0, 2.0), b(1.5, 3.0);
    Enclosure h = enc_hull(a, b);
    CHECK(h.lo() == 1.0);
    CHECK(h.hi() == 3.0);
    Enclosure x = enc_intersect(a, b);
    CHECK(x.lo() == 1.5);
    CHECK(x.hi() == 2.0);
    CHECK(enc_width(a) >= 1.0);
    CHECK(enc_width(a) <= 1.0 + 1e-14);
    CHECK(enc_mag(Enclosure(-3.0, 2.0)) == 3.0);
    CHECK_THROWS(enc_intersect(Enclosure(0.0, 1.0), Enclosure(2.0, 3.0)));
}

TEST_CASE("operations never shrink below exact value: 1/3 * 3 contains 1") {
    Enclosure r = Enclosure::ratio(1, 3) * Enclosure(3.0);
    CHECK(r.lo() <= 1.0);
    CHECK(r.hi() >= 1.0);
}
