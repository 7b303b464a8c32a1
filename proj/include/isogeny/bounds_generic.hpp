#pragma once

#include <map>

#include "isogeny/field_context.hpp"
#include "isogeny/signatures.hpp"

namespace isogeny {

// The divisibility integers attached to a signature and an auxiliary prime.
// All values are stored in absolute value; 0 means "no information" and is
// absorbing under lcm.
struct ABCRecord {
    mpz_class A, B, Cs, Co, C, ABC;
};

ABCRecord abc_record(const Signature& eps, const PrimeIdealData& qdata, const FieldContext& field);

// C_s branch only (Waterhouse supersingular shortcut).
mpz_class supersingular_C_shortcut(const Signature& eps, const PrimeIdealData& qdata,
                                   const FieldContext& field);

// gcd over unit generators of |Nm(u^eps - 1)|, skipping zero entries;
// 0 when every entry vanishes.
mpz_class unit_divisibility(const FieldContext& field, const Signature& eps);

struct AuxStrategy {
    enum class Kind { AutoStop, NormBound } kind = Kind::AutoStop;
    unsigned auto_stop = 4;    // consecutive identical bounds before stopping
    mpz_class norm_bound = 50; // for the fixed strategy
    unsigned max_aux = 1000;   // safety cap on the auto-stop chain
};

struct GenericBoundResult {
    mpz_class bound; // lcm over representatives
    std::vector<std::pair<SignatureRep, mpz_class>> per_signature;
    std::vector<mpz_class> aux_used; // rational primes
};

GenericBoundResult generic_bound(const FieldContext& field, const AuxStrategy& strategy);

// Type 2 signature, not Momose Type 2: gcd over Gen sets of ABC_o(Gen).
mpz_class type_two_not_momose_bound(const FieldContext& field,
                                    const std::vector<std::vector<PrimeIdealData>>& gen_sets);

struct TypeThreeResult {
    mpz_class bound = 1;
    std::vector<std::pair<Signature, mpz_class>> per_signature; // (eps3, D(eps3) folded)
};

TypeThreeResult type_three_not_momose_bound(const FieldContext& field,
                                            const std::vector<PrimeIdealData>& aux,
                                            const std::vector<std::vector<PrimeIdealData>>& gen_sets);

struct BoundLedger {
    GenericBoundResult generic;
    mpz_class type_two_not_momose = 1;
    TypeThreeResult type_three;
    mpz_class mmib = 0;
    bool cm_caveat = false; // an HCF-contained subfield exists: CM primes excluded
};

struct MmibConfig {
    AuxStrategy aux;
};

BoundLedger mmib(const FieldContext& field, const MmibConfig& config);

} // namespace isogeny
