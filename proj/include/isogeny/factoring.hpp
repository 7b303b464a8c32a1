#pragma once

#include <string>
#include <vector>

#include "isogeny/intmath.hpp"

namespace isogeny {

struct FactoredInteger {
    mpz_class value;
    Factorization factorization;
    bool timed_out = false; // unfactored composite cofactor remains
    std::string caveat;     // set when timed_out

    std::vector<mpz_class> prime_divisors() const;
};

// Full factorisation via trial division plus a general-purpose method; on
// budget exhaustion the unfactored cofactor is surfaced as a caveat, never
// dropped.
FactoredInteger factor_with_ledger(const mpz_class& n, uint64_t rho_budget = 20'000'000);

} // namespace isogeny
