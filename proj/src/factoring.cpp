#include "isogeny/factoring.hpp"

#include "isogeny/errors.hpp"

namespace isogeny {

std::vector<mpz_class> FactoredInteger::prime_divisors() const {
    std::vector<mpz_class> out;
    for (const auto& [p, e] : factorization.factors) out.push_back(p);
    return out;
}

FactoredInteger factor_with_ledger(const mpz_class& n, uint64_t rho_budget) {
    if (n == 0) throw Error(Errc::invalid_argument, "factor_with_ledger(0)");
    FactoredInteger out;
    out.value = abs_z(n);
    out.factorization = factor_integer(out.value, rho_budget);
    if (!out.factorization.complete()) {
        out.timed_out = true;
        out.caveat = "FACTORING_TIMEOUT: unfactored composite cofactor " +
                     out.factorization.unfactored.get_str() +
                     " may contribute additional primes to the superset";
    }
    return out;
}

} // namespace isogeny
