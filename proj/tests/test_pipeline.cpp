#include "doctest.h"

#include "isogeny/errors.hpp"
#include "isogeny/galois_backend.hpp"
#include "isogeny/pipeline.hpp"
#include "isogeny/quad_backend.hpp"

#include <set>

using namespace isogeny;

namespace {

std::string fixture(const std::string& name) { return std::string(TEST_DATA_DIR) + "/fields/" + name; }

std::set<mpz_class> beyond_mazur(const SupersetReport& r) {
    std::set<mpz_class> out;
    for (const auto& p : r.superset)
        if (!mazur_set().count(p)) out.insert(p);
    return out;
}

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("Q(sqrt 5) with defaults") {
    QuadField k(5);
    RunConfig cfg;
    cfg.type2_cap = 1000000;
    SupersetReport r = run_combined(k, cfg);
    CHECK(beyond_mazur(r) == std::set<mpz_class>{23, 47});
    // Mazur's set is always contained
    for (const auto& p : mazur_set())
        CHECK(std::count(r.superset.begin(), r.superset.end(), p) == 1);
    CHECK(!r.unconditional);
}

TEST_CASE("semistable mode") {
    QuadField k(5);
    RunConfig cfg;
    cfg.semistable = true;
    SupersetReport r = run_combined(k, cfg);
    CHECK(r.unconditional);
    CHECK(r.type2.skipped_semistable);
    CHECK(r.type2.survivors.empty());

    RunConfig full;
    SupersetReport rf = run_combined(k, full);
    // the semistable superset never exceeds the full one
    std::set<mpz_class> s(r.superset.begin(), r.superset.end());
    std::set<mpz_class> f(rf.superset.begin(), rf.superset.end());
    for (const auto& p : s) CHECK(f.count(p));
}

TEST_CASE("disabling weeding only enlarges the superset") {
    QuadField k(13);
    RunConfig with_ice, without_ice;
    without_ice.use_ice = false;
    SupersetReport a = run_combined(k, with_ice);
    SupersetReport b = run_combined(k, without_ice);
    std::set<mpz_class> sa(a.superset.begin(), a.superset.end());
    std::set<mpz_class> sb(b.superset.begin(), b.superset.end());
    for (const auto& p : sa) CHECK(sb.count(p));
    CHECK(sb.size() >= sa.size());
}

TEST_CASE("imaginary quadratic class number one is rejected") {
    QuadField k(-7);
    RunConfig cfg;
    CHECK_THROWS_AS((void)run_combined(k, cfg), Error);
}

TEST_CASE("reports are reproducible") {
    QuadField k(-15);
    RunConfig cfg;
    SupersetReport a = run_combined(k, cfg);
    SupersetReport b = run_combined(k, cfg);
    CHECK(a.to_json(false) == b.to_json(false));
}

TEST_CASE("quadratic file backend matches the native backend end to end") {
    auto g = GaloisField::load(fixture("2.2.5.1.json"));
    QuadField k(5);
    RunConfig cfg;
    SupersetReport rg = run_combined(*g, cfg);
    SupersetReport rk = run_combined(k, cfg);
    CHECK(rg.superset == rk.superset);
}

}

#include "isogeny/factoring.hpp"

TEST_SUITE("pipeline") {

TEST_CASE("factoring ledger") {
    FactoredInteger f = factor_with_ledger(mpz_class(320));
    CHECK(f.factorization.factors.at(mpz_class(2)) == 6);
    CHECK(f.factorization.factors.at(mpz_class(5)) == 1);
    CHECK(!f.timed_out);
    CHECK_THROWS_AS((void)factor_with_ledger(mpz_class(0)), Error);

    // an out-of-budget composite cofactor is surfaced, never dropped
    mpz_class p1 = next_prime(pow_z(mpz_class(10), 30));
    mpz_class p2 = next_prime(p1 + 12345);
    FactoredInteger g = factor_with_ledger(p1 * p2, /*rho_budget=*/10);
    CHECK(g.timed_out);
    CHECK(g.factorization.unfactored == p1 * p2);
    CHECK(!g.caveat.empty());
}

}

TEST_SUITE("pipeline") {

TEST_CASE("quartic cyclotomic field end to end") {
    auto g = GaloisField::load(fixture("4.0.125.1.json"));
    CHECK(g->degree() == 4);
    CHECK(g->torsion_unit().has_value());
    RunConfig cfg;
    cfg.type2_cap = 200000;
    SupersetReport r = run_combined(*g, cfg);
    std::set<mpz_class> s(r.superset.begin(), r.superset.end());
    for (const auto& p : mazur_set()) CHECK(s.count(p));
    // the non-Mazur bad formal immersion primes of degree 4 are unconditional
    for (long p : {23, 29, 31, 41, 53, 61, 73, 97}) CHECK(s.count(mpz_class(p)));
    // 47 survives the splitting condition: no usable prime below 47/4 splits
    // in Q(sqrt -47)
    CHECK(s.count(mpz_class(47)));
}

}
