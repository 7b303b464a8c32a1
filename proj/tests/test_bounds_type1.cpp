#include "doctest.h"

#include "isogeny/bounds_type1.hpp"
#include "isogeny/bounds_generic.hpp"
#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"
#include "isogeny/polyq.hpp"
#include "isogeny/quad_backend.hpp"

#include <cstdio>
#include <random>

using namespace isogeny;

TEST_SUITE("bounds-type1") {

TEST_CASE("eps_M") {
    CHECK(eps_M(mpz_class(7), mpz_class(2)) == 0);
    CHECK(eps_M(mpz_class(7), mpz_class(4)) == 1);
    CHECK(eps_M(mpz_class(5), mpz_class(3)) == 1);
    CHECK_THROWS_AS(eps_M(mpz_class(9), mpz_class(3)), Error); // not coprime
    CHECK_THROWS_AS(eps_M(mpz_class(4), mpz_class(1)), Error); // even M
}

TEST_CASE("formal immersion matrices at degree one") {
    // d=1, M=3: R_{1,1} is the zero row
    auto R31 = formal_immersion_matrix(1, mpz_class(1), mpz_class(3));
    CHECK(polyq::rank_bareiss(R31) == 0);
    // d=1, M=5, u=2: row (0,0,0,0); column a=3 uses 2*3^{-1} = 4
    auto R52 = formal_immersion_matrix(1, mpz_class(2), mpz_class(5));
    REQUIRE(R52.size() == 1);
    REQUIRE(R52[0].size() == 4);
    for (auto& e : R52[0]) CHECK(e == 0);
}

TEST_CASE("construct_M for small degrees") {
    mpz_class M2 = construct_M(2);
    CHECK(M2 >= 3);
    CHECK(M2 <= 65 * pow_z(mpz_class(4), 6));
    // all units pass the rank check at M2, and some unit fails at every
    // smaller odd M (by construction); independent re-verification:
    for (mpz_class u = 1; u < M2; ++u) {
        if (gcd0(u, M2) != 1) continue;
        auto R = formal_immersion_matrix(2, u, M2);
        CHECK(polyq::rank_bareiss(R) == 2);
    }
}

TEST_CASE("rank computed two ways") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> du(1, 100);
    int done = 0;
    while (done < 100) {
        int d = 1 + static_cast<int>(du(rng)) % 3;
        mpz_class M = 2 * du(rng) + 3;
        mpz_class u = du(rng) % M;
        if (gcd0(u, M) != 1) continue;
        auto R = formal_immersion_matrix(d, u, M);
        int r1 = polyq::rank_bareiss(R);
        // modular rank at several primes; max is certified when it hits r1
        int r2 = 0;
        for (long p : {1000003L, 2000003L, 3000017L})
            r2 = std::max(r2, polyq::rank_mod_p(R, mpz_class(p)));
        CHECK(r1 == r2);
        ++done;
    }
}

TEST_CASE("shipped table consistency") {
    // d=2: sgfip 23, sporadic {37}; product (11)(13)(17)(19) * 37
    BFIRecord r2 = bfi_record(2);
    CHECK(r2.sgfip == 23);
    REQUIRE(r2.sporadic.size() == 1);
    CHECK(r2.sporadic[0] == 37);
    CHECK(r2.bad_product() == mpz_class(11) * 13 * 17 * 19 * 37);
    CHECK(r2.agfi_product(mpz_class(3)) == 1);

    BFIRecord r3 = bfi_record(3);
    CHECK(r3.sgfip == 41);
    CHECK(r3.sporadic == std::vector<mpz_class>{43, 73});

    for (int d = 2; d <= 10; ++d) {
        BFIRecord r = bfi_record(d);
        CHECK(r.sgfip >= 11);
        for (auto& p : r.sporadic) {
            CHECK(p >= r.sgfip);
            CHECK(is_prime(p));
        }
        CHECK(r.agfi.empty());
    }
    CHECK_THROWS_AS(bfi_record(11), Error);
    CHECK_THROWS_AS(bfi_record(1), Error);
}

TEST_CASE("bfi cache round trip") {
    std::map<int, BFIRecord> table;
    for (int d = 2; d <= 10; ++d) table[d] = bfi_record(d);
    std::string path = "bfi_test_cache.json";
    save_bfi_file(path, table);
    auto loaded = load_bfi_file(path);
    REQUIRE(loaded.size() == 9);
    for (int d = 2; d <= 10; ++d) {
        CHECK(loaded.at(d).sgfip == table.at(d).sgfip);
        CHECK(loaded.at(d).sporadic == table.at(d).sporadic);
    }
    CHECK(bfi_record_cached(2, path).sgfip == 23);
    std::remove(path.c_str());
}

TEST_CASE("type one bound") {
    QuadField k(5);
    BFIRecord bfi = bfi_record(2);
    TypeOneResult r = type_one_bound(k, {3, 5, 7, 11, 13, 17, 19}, bfi);
    CHECK(r.bound != 0);
    CHECK(r.bound % r.bfi_product == 0);
    // B(eps0, q11) = (1 - 11^12)^2 contributes to the lcm at q = 11
    // (the gcd over aux primes may drop it; check D(Aux) divides the q=11 term)
    {
        PrimeIdealData q11 = k.prime_ideal_data(11);
        ABCRecord rec = abc_record({0, 0}, q11, k);
        mpz_class term = lcm0(lcm0(rec.B, rec.C), q11.norm());
        CHECK(term % r.d_aux == 0);
    }
    CHECK_THROWS_AS((void)type_one_bound(k, {}, bfi), Error);
    CHECK_THROWS_AS((void)type_one_bound(k, {2, 3}, bfi), Error);

    // monotonicity: adding aux primes never enlarges D(Aux)
    TypeOneResult small = type_one_bound(k, {3, 5}, bfi);
    CHECK(small.d_aux % r.d_aux == 0);
}

}
