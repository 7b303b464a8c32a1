#pragma once

#include <map>
#include <string>
#include <vector>

#include "isogeny/field_context.hpp"

namespace isogeny {

// Formal-immersion bookkeeping for a degree: the smallest good prime, the
// sporadic bad primes above it, and the almost-good map q -> primes (empty
// for every degree we ship).
struct BFIRecord {
    int degree = 0;
    mpz_class sgfip;
    std::vector<mpz_class> sporadic;
    std::map<mpz_class, std::vector<mpz_class>> agfi;

    // product of the bad formal immersion primes: primes in [11, sgfip) plus
    // the sporadic list
    mpz_class bad_product() const;
    mpz_class agfi_product(const mpz_class& q) const;
};

// Shipped data for 2 <= d <= 10; degrees outside raise UNSUPPORTED_DEGREE.
BFIRecord bfi_record(int degree);

// Load/save the record table as a JSON cache file (single-writer atomic
// replace on regeneration).
std::map<int, BFIRecord> load_bfi_file(const std::string& path);
void save_bfi_file(const std::string& path, const std::map<int, BFIRecord>& table);
BFIRecord bfi_record_cached(int degree, const std::string& cache_path);

// eps_M of the formal immersion matrix: 0 iff the least positive residue of a
// is below M/2. M odd >= 3, gcd(a, M) = 1.
int eps_M(const mpz_class& M, const mpz_class& a);

// R_{d,u}: d rows, phi(M) columns (a ascending over (Z/M)^*),
// entry (n, a) = eps_M(n a) - eps_M(n u a^{-1}).
std::vector<std::vector<mpz_class>> formal_immersion_matrix(int d, const mpz_class& u,
                                                            const mpz_class& M);

// Smallest odd M >= 3 with rank R_{d,u} = d for every unit u; the search
// aborts at Parent's bound 65 (2d)^6.
mpz_class construct_M(int d);

struct TypeOneResult {
    mpz_class bound;
    mpz_class bfi_product;
    mpz_class d_aux;
    std::vector<mpz_class> aux_used;
};

// lcm(BadFormalImmersion(d), D(Aux)) with
// D(Aux) = gcd over primes above q in Aux of lcm(B, C, Nm, AGFI_d(q)).
TypeOneResult type_one_bound(const FieldContext& field, const std::vector<mpz_class>& aux_q,
                             const BFIRecord& bfi);

} // namespace isogeny
