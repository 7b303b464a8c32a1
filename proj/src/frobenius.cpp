#include "isogeny/frobenius.hpp"

#include "isogeny/intmath.hpp"

#include <algorithm>

namespace isogeny {

namespace {

// floor(2 * sqrt(q^f))
mpz_class weil_bound(const mpz_class& q, unsigned f) {
    mpz_class qf = pow_z(q, f);
    return isqrt(4 * qf);
}

} // namespace

std::vector<FrobeniusPolynomial> enumerate_frobenius_traces(const mpz_class& q, unsigned f) {
    std::vector<FrobeniusPolynomial> out;
    mpz_class bound = weil_bound(q, f);
    // case 1: gcd(t, q) = 1, ordinary
    for (mpz_class t = -bound; t <= bound; ++t) {
        if (gcd0(t, q) == 1)
            out.push_back({t, q, f, FrobKind::Ordinary, WaterhouseCase::C1});
    }
    bool f_even = (f % 2 == 0);
    if (f_even) {
        mpz_class qf2 = pow_z(q, f / 2);
        out.push_back({2 * qf2, q, f, FrobKind::Supersingular, WaterhouseCase::C2});
        out.push_back({-2 * qf2, q, f, FrobKind::Supersingular, WaterhouseCase::C2});
        if (q % 3 != 1) {
            out.push_back({qf2, q, f, FrobKind::Supersingular, WaterhouseCase::C3});
            out.push_back({-qf2, q, f, FrobKind::Supersingular, WaterhouseCase::C3});
        }
        if (q % 4 != 1)
            out.push_back({mpz_class(0), q, f, FrobKind::Supersingular, WaterhouseCase::C5ii});
    } else {
        if (q == 2 || q == 3) {
            mpz_class t4 = pow_z(q, (f + 1) / 2);
            out.push_back({t4, q, f, FrobKind::Supersingular, WaterhouseCase::C4});
            out.push_back({-t4, q, f, FrobKind::Supersingular, WaterhouseCase::C4});
        }
        out.push_back({mpz_class(0), q, f, FrobKind::Supersingular, WaterhouseCase::C5i});
    }
    std::sort(out.begin(), out.end(),
              [](const FrobeniusPolynomial& a, const FrobeniusPolynomial& b) { return a.t < b.t; });
    return out;
}

bool is_frobenius_trace(const mpz_class& t, const mpz_class& q, unsigned f, WaterhouseCase* wcase_out) {
    if (t * t > 4 * pow_z(q, f)) return false;
    auto set_case = [&](WaterhouseCase c) {
        if (wcase_out) *wcase_out = c;
        return true;
    };
    if (gcd0(t, q) == 1) return set_case(WaterhouseCase::C1);
    bool f_even = (f % 2 == 0);
    if (f_even) {
        mpz_class qf2 = pow_z(q, f / 2);
        if (t == 2 * qf2 || t == -2 * qf2) return set_case(WaterhouseCase::C2);
        if (q % 3 != 1 && (t == qf2 || t == -qf2)) return set_case(WaterhouseCase::C3);
        if (q % 4 != 1 && t == 0) return set_case(WaterhouseCase::C5ii);
    } else {
        if ((q == 2 || q == 3)) {
            mpz_class t4 = pow_z(q, (f + 1) / 2);
            if (t == t4 || t == -t4) return set_case(WaterhouseCase::C4);
        }
        if (t == 0) return set_case(WaterhouseCase::C5i);
    }
    return false;
}

PowerTrace power_trace(const mpz_class& t, const mpz_class& q, unsigned f, unsigned long n) {
    mpz_class qf = pow_z(q, f);
    mpz_class s_prev = 2, s_cur = -t;
    if (n == 0) return {0, s_prev, mpz_class(1)};
    for (unsigned long i = 1; i < n; ++i) {
        mpz_class s_next = -t * s_cur - qf * s_prev;
        s_prev = s_cur;
        s_cur = s_next;
    }
    return {n, s_cur, pow_z(qf, n)};
}

} // namespace isogeny
