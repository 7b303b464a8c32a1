#include "doctest.h"

#include "isogeny/frobenius.hpp"
#include "isogeny/intmath.hpp"
#include "support/curve_counts.hpp"

#include <cmath>
#include <set>

using namespace isogeny;

TEST_SUITE("frobenius") {

TEST_CASE("trace sets for small fields") {
    auto t2 = enumerate_frobenius_traces(mpz_class(2), 1);
    std::set<long> set2;
    for (auto& f : t2) set2.insert(f.t.get_si());
    CHECK(set2 == std::set<long>{-2, -1, 0, 1, 2});
    for (auto& f : t2) {
        if (f.t == 1 || f.t == -1) CHECK(f.kind == FrobKind::Ordinary);
        if (f.t == 0 || f.t == 2 || f.t == -2) CHECK(f.kind == FrobKind::Supersingular);
    }

    auto t7 = enumerate_frobenius_traces(mpz_class(7), 1);
    std::set<long> set7;
    for (auto& f : t7) set7.insert(f.t.get_si());
    CHECK(set7 == std::set<long>{-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5});

    auto t9 = enumerate_frobenius_traces(mpz_class(3), 2);
    std::set<long> set9;
    for (auto& f : t9) set9.insert(f.t.get_si());
    CHECK(set9 == std::set<long>{-6, -5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("membership") {
    CHECK(!is_frobenius_trace(mpz_class(6), mpz_class(7), 1)); // violates the Weil bound
    // t = q over F_{q^2} needs q != 1 mod 3; 7 = 1 mod 3, so t = 7 is not a
    // trace over F_49 (settled against brute force below)
    CHECK(!is_frobenius_trace(mpz_class(7), mpz_class(7), 2));
    {
        auto bf = testsupport::brute_force_traces(7, 2);
        CHECK(!bf.count(7));
        CHECK(bf.count(14));
        std::set<long> got;
        for (auto& fr : enumerate_frobenius_traces(mpz_class(7), 2)) got.insert(fr.t.get_si());
        CHECK(got == bf);
    }
    CHECK(is_frobenius_trace(mpz_class(5), mpz_class(5), 2)); // 5 = 2 mod 3: case 3 applies
    CHECK(!is_frobenius_trace(mpz_class(7), mpz_class(7), 1));
    // exactly one case applies: case 1 iff gcd(t, q) = 1
    for (long q : {2, 3, 5, 7}) {
        for (unsigned f = 1; f <= 2; ++f) {
            auto all = enumerate_frobenius_traces(mpz_class(q), f);
            std::set<mpz_class> seen;
            for (auto& fr : all) {
                CHECK(!seen.count(fr.t)); // no duplicate trace entries
                seen.insert(fr.t);
                CHECK((fr.wcase == WaterhouseCase::C1) == (gcd0(fr.t, fr.q) == 1));
                CHECK((fr.kind == FrobKind::Ordinary) == (fr.wcase == WaterhouseCase::C1));
            }
        }
    }
}

TEST_CASE("brute force oracle up to 13") {
    // full range up to 27 runs in the acceptance suite
    struct QF { unsigned q, f; };
    for (auto [q, f] : {QF{2, 1}, QF{3, 1}, QF{2, 2}, QF{5, 1}, QF{7, 1}, QF{2, 3}, QF{3, 2},
                        QF{11, 1}, QF{13, 1}}) {
        auto expect = testsupport::brute_force_traces(q, f);
        auto got = enumerate_frobenius_traces(mpz_class(q), f);
        std::set<long> got_set;
        for (auto& fr : got) got_set.insert(fr.t.get_si());
        CAPTURE(q);
        CAPTURE(f);
        CHECK(got_set == expect);
    }
}

TEST_CASE("power traces") {
    CHECK(power_trace(mpz_class(5), mpz_class(7), 1, 0).s == 2);
    // t = 0, q = 7: s_12 = 2 * 7^6
    CHECK(power_trace(mpz_class(0), mpz_class(7), 1, 12).s == 2 * pow_z(mpz_class(7), 6));
    // t = -1, q = 2: compare with direct complex evaluation of beta^12 + conj^12
    {
        PowerTrace pt = power_trace(mpz_class(-1), mpz_class(2), 1, 12);
        // beta = (1 + sqrt(-7))/2 root of x^2 - x + 2
        double re = 0.5, im = std::sqrt(7.0) / 2.0;
        double r = std::hypot(re, im), th = std::atan2(im, re);
        double val = 2.0 * std::pow(r, 12.0) * std::cos(12.0 * th);
        CHECK(std::llround(val) == pt.s.get_si());
    }
}

TEST_CASE("ordinary powers are never quadratic-rational") {
    for (long q : {2, 3, 5, 7, 11}) {
        for (unsigned f = 1; f <= 2; ++f) {
            for (auto& fr : enumerate_frobenius_traces(mpz_class(q), f)) {
                if (fr.kind != FrobKind::Ordinary) continue;
                for (unsigned long n = 1; n <= 24; ++n) {
                    PowerTrace pt = power_trace(fr.t, fr.q, fr.f, n);
                    CHECK(pt.s * pt.s != 4 * pt.norm);
                }
            }
        }
    }
}

TEST_CASE("supersingular twelfth powers are rational") {
    for (long q : {3, 5, 7, 11, 13}) {
        for (unsigned f = 1; f <= 2; ++f) {
            for (auto& fr : enumerate_frobenius_traces(mpz_class(q), f)) {
                if (fr.kind != FrobKind::Supersingular) continue;
                PowerTrace pt = power_trace(fr.t, fr.q, fr.f, 12);
                mpz_class q6f = pow_z(fr.q, 6 * fr.f);
                CHECK((pt.s == 2 * q6f || pt.s == -2 * q6f));
                // odd characteristic: beta^12 = +q^{6f}
                CHECK(pt.s == 2 * q6f);
            }
        }
    }
}

}
