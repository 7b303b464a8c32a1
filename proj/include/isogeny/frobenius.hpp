#pragma once

#include <vector>

#include <gmpxx.h>

namespace isogeny {

enum class FrobKind { Ordinary, Supersingular };

// Waterhouse case tags for x^2 + t x + q^f.
enum class WaterhouseCase { C1, C2, C3, C4, C5i, C5ii };

struct FrobeniusPolynomial {
    mpz_class t;
    mpz_class q;
    unsigned f;
    FrobKind kind;
    WaterhouseCase wcase;
};

// All integer traces t realised by elliptic curves over F_{q^f}, classified.
std::vector<FrobeniusPolynomial> enumerate_frobenius_traces(const mpz_class& q, unsigned f);

// Membership test consistent with the enumeration.
bool is_frobenius_trace(const mpz_class& t, const mpz_class& q, unsigned f,
                        WaterhouseCase* wcase_out = nullptr);

struct PowerTrace {
    unsigned long n;
    mpz_class s;    // beta^n + conj(beta)^n, beta a root of x^2 + t x + q^f
    mpz_class norm; // q^{f n}
};

// s_n by the linear recurrence s_{m+1} = -t s_m - q^f s_{m-1}, s_0 = 2, s_1 = -t.
PowerTrace power_trace(const mpz_class& t, const mpz_class& q, unsigned f, unsigned long n);

} // namespace isogeny
