#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace isogeny {

// gcd/lcm conventions used throughout the bound computations:
// gcd(0, x) = |x| and lcm(0, x) = 0 (a zero integer carries no divisibility
// information and must stay absorbing under lcm).
mpz_class gcd0(const mpz_class& a, const mpz_class& b);
mpz_class lcm0(const mpz_class& a, const mpz_class& b);

mpz_class abs_z(const mpz_class& a);

int kronecker(const mpz_class& a, const mpz_class& n);
int kronecker_si(const mpz_class& a, long n);

bool is_square(const mpz_class& n);
mpz_class isqrt(const mpz_class& n);
bool is_squarefree(const mpz_class& n);

bool is_prime(const mpz_class& n);
mpz_class next_prime(const mpz_class& n);

// Primes <= n, simple sieve.
std::vector<uint64_t> primes_up_to(uint64_t n);

mpz_class powmod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod);
std::optional<mpz_class> invmod(const mpz_class& a, const mpz_class& mod);
mpz_class pow_z(const mpz_class& base, unsigned long exp);

// Square root of a modulo odd prime p (Tonelli-Shanks); nullopt if non-residue.
std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p);

// All r in F_p^* with r^n = c. Empty if no solution. Sorted ascending.
// Works for any n >= 1 whose prime factors are found by trial division
// (n is small everywhere we call this).
std::vector<mpz_class> all_nth_roots_mod(const mpz_class& c, unsigned long n, const mpz_class& p);

struct Factorization {
    std::map<mpz_class, unsigned> factors; // prime -> exponent
    mpz_class unfactored = 1;              // composite cofactor on budget exhaustion
    bool complete() const { return unfactored == 1; }
};

// Trial division + Pollard-Brent rho. `rho_budget` bounds the total number of
// rho iterations before giving up on a cofactor.
Factorization factor_integer(mpz_class n, uint64_t rho_budget = 2'000'000);

} // namespace isogeny
