#include "doctest.h"

#include "isogeny/quad_backend.hpp"
#include "isogeny/signatures.hpp"

#include <map>
#include <set>

using namespace isogeny;

TEST_SUITE("signatures") {

TEST_CASE("classification") {
    CHECK(classify_signature({6, 6, 6}) == SignatureType::Type2);
    CHECK(classify_signature({4, 6, 0}) == SignatureType::Mixed);
    CHECK(classify_signature({0, 0, 4}) == SignatureType::SexticNonconstant);
    CHECK(classify_signature({0, 0, 0}) == SignatureType::Type1);
    CHECK(classify_signature({12, 12}) == SignatureType::Type1);
    CHECK(classify_signature({0, 12, 0}) == SignatureType::QuadraticNonconstant);
    CHECK(classify_signature({4, 4, 4}) == SignatureType::SexticConstant);
    CHECK(classify_signature({8, 8}) == SignatureType::SexticConstant);
    CHECK(classify_signature({4, 8, 8}) == SignatureType::SexticNonconstant);
    CHECK(classify_signature({0, 6, 0}) == SignatureType::QuarticNonconstant);
    CHECK(classify_signature({12, 6, 0}) == SignatureType::QuarticNonconstant);
    CHECK(classify_signature({8, 0, 6}) == SignatureType::Mixed);
}

TEST_CASE("classification is total and disjoint") {
    const int vals[5] = {0, 4, 6, 8, 12};
    for (int d = 1; d <= 3; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= 5;
        for (int idx = 0; idx < count; ++idx) {
            Signature eps(d);
            int t = idx;
            for (int i = 0; i < d; ++i) {
                eps[i] = vals[t % 5];
                t /= 5;
            }
            // classify_signature returns exactly one enum value; check the
            // Table rows directly
            SignatureType st = classify_signature(eps);
            bool has6 = false, has48 = false, constant = true;
            for (int a : eps) {
                has6 |= (a == 6);
                has48 |= (a == 4 || a == 8);
                constant &= (a == eps[0]);
            }
            int matches = 0;
            if (constant && (eps[0] == 0 || eps[0] == 12)) {
                ++matches;
                CHECK(st == SignatureType::Type1);
            }
            if (!constant && !has6 && !has48) {
                ++matches;
                CHECK(st == SignatureType::QuadraticNonconstant);
            }
            if (constant && (eps[0] == 4 || eps[0] == 8)) {
                ++matches;
                CHECK(st == SignatureType::SexticConstant);
            }
            if (!constant && has48 && !has6) {
                ++matches;
                CHECK(st == SignatureType::SexticNonconstant);
            }
            if (constant && eps[0] == 6) {
                ++matches;
                CHECK(st == SignatureType::Type2);
            }
            if (!constant && has6 && !has48) {
                ++matches;
                CHECK(st == SignatureType::QuarticNonconstant);
            }
            if (has6 && has48) {
                ++matches;
                CHECK(st == SignatureType::Mixed);
            }
            CHECK(matches == 1);
        }
    }
}

TEST_CASE("type 3 detection") {
    QuadField real(5);
    CHECK(!is_type3({0, 12}, real).has_value());
    QuadField imag(-5);
    auto L = is_type3({0, 12}, imag);
    REQUIRE(L.has_value());
    CHECK(*L == -20);
    CHECK(is_type3({12, 0}, imag).has_value());
    CHECK(!is_type3({0, 0}, imag).has_value());
    CHECK(!is_type3({4, 12}, imag).has_value());
}

TEST_CASE("orbit representatives for quadratic fields") {
    QuadField real(5);
    auto reps = enumerate_generic_signatures(real);
    CHECK(reps.size() == 7); // 9 orbits minus Type 1 and Type 2

    QuadField imag(-5);
    auto reps2 = enumerate_generic_signatures(imag);
    CHECK(reps2.size() == 6); // (0,12) orbit is Type 3 here
}

TEST_CASE("orbit soundness: orbits partition the cube") {
    QuadField k(-5);
    auto reps = enumerate_generic_signatures(k);
    std::set<Signature> covered;
    for (auto& r : reps)
        for (auto& o : signature_orbit(k.nf(), r.eps)) {
            CHECK(!covered.count(o));
            covered.insert(o);
        }
    // add the excluded orbits: Type 1, Type 2, Type 3
    for (auto& excl : {Signature{0, 0}, Signature{6, 6}, Signature{0, 12}})
        for (auto& o : signature_orbit(k.nf(), excl)) {
            CHECK(!covered.count(o));
            covered.insert(o);
        }
    CHECK(covered.size() == 25);
}

TEST_CASE("degree one has a single generic representative") {
    // d = 1: {0}~{12} Type 1, {6} Type 2, {4}~{8} the only generic orbit
    ZPoly f{mpz_class(-1), mpz_class(1)}; // x - 1
    DefiningField nf(std::move(f), mpz_class(1), {}, {}, true);

    struct TrivialField : FieldContext {
        const DefiningField* nfp;
        std::vector<NFElement> no_units;
        std::vector<ImagSubfield> no_subs;
        const DefiningField& nf() const override { return *nfp; }
        std::string label() const override { return "Q"; }
        int degree() const override { return 1; }
        const mpz_class& discriminant() const override {
            static mpz_class one(1);
            return one;
        }
        unsigned class_number() const override { return 1; }
        bool rejected_infinite() const override { return false; }
        const std::vector<NFElement>& unit_generators() const override { return no_units; }
        std::optional<NFElement> torsion_unit() const override { return std::nullopt; }
        const std::vector<ImagSubfield>& imaginary_subfields() const override { return no_subs; }
        std::optional<SplittingInfo> splitting(const mpz_class&) const override {
            return SplittingInfo{SplitKind::Split, 1};
        }
        std::optional<PrimeIdealData> next_split_prime(mpz_class&) const override {
            return std::nullopt;
        }
        std::vector<PrimeIdealData> primes_above(const mpz_class&) const override { return {}; }
        std::vector<GeneratorData> generator_data(const mpz_class&, bool) const override {
            return {};
        }
        ClassDecomposition decompose(const PrimeIdealData&,
                                     const std::vector<GeneratorData>&) const override {
            return {};
        }
        std::vector<std::vector<PrimeIdealData>> gen_sets() const override { return {{}}; }
        std::optional<PrimeIdealData> nonprincipal_prime() const override { return std::nullopt; }
    } field;
    field.nfp = &nf;

    auto reps = enumerate_generic_signatures(field);
    CHECK(reps.size() == 1);
    CHECK(reps[0].eps == Signature{4});
}

TEST_CASE("congruence filter rows") {
    QuadField k5(5); // 19, 29 inert or split as relevant below
    CHECK(congruence_filter(mpz_class(19), SignatureType::Type2, k5));     // 19 = 3 mod 4
    CHECK(!congruence_filter(mpz_class(29), SignatureType::Type2, k5));    // 29 = 1 mod 4
    CHECK(congruence_filter(mpz_class(13), SignatureType::Mixed, k5));  // 13 = 1 mod 12, p < 17 anyway
    CHECK(!congruence_filter(mpz_class(37), SignatureType::Mixed, k5)); // 37 = 1 mod 12 but inert
    CHECK(congruence_filter(mpz_class(61), SignatureType::Mixed, k5));  // 61 = 1 mod 12 and splits
    CHECK(congruence_filter(mpz_class(23), SignatureType::SexticConstant, k5)); // 23 = 2 mod 3
    CHECK(!congruence_filter(mpz_class(31), SignatureType::SexticConstant, k5)); // 31 = 1 mod 3
    // nonconstant types need p split or ramified: 23 is inert in Q(sqrt 5)
    CHECK(!congruence_filter(mpz_class(23), SignatureType::QuadraticNonconstant, k5));
    CHECK(congruence_filter(mpz_class(19), SignatureType::QuadraticNonconstant, k5)); // 19 splits
    // below 17 nothing is filtered
    for (long p : {2, 3, 5, 7, 11, 13}) {
        for (auto st : {SignatureType::Type1, SignatureType::QuadraticNonconstant,
                        SignatureType::SexticConstant, SignatureType::SexticNonconstant,
                        SignatureType::Type2, SignatureType::QuarticNonconstant,
                        SignatureType::Mixed}) {
            CHECK(congruence_filter(mpz_class(p), st, k5));
        }
    }
}

}
