#pragma once

#include <optional>
#include <vector>

#include "isogeny/field_context.hpp"

namespace isogeny {

// The unique row of the seven-type table a signature falls in.
SignatureType classify_signature(const Signature& eps);

bool is_constant_signature(const Signature& eps);

Signature complement_signature(const Signature& eps);

// Right-composition action: entry i of (eps o sigma_j) is eps at index of
// sigma_i o sigma_j in the field's automorphism order.
Signature signature_compose(const DefiningField& nf, const Signature& eps, size_t aut_j);

// Full orbit of eps under the group generated by complement and the
// automorphism action, sorted.
std::vector<Signature> signature_orbit(const DefiningField& nf, const Signature& eps);

// The discriminant of the imaginary quadratic subfield L when eps is of
// Type 3 with field L; nullopt otherwise.
std::optional<mpz_class> is_type3(const Signature& eps, const FieldContext& field);

struct SignatureRep {
    Signature eps;
    SignatureType type;
};

// Orbit representatives of the 5^d signatures, excluding the Type 1, Type 2
// and Type 3 orbits (those are bounded by their own routes).
std::vector<SignatureRep> enumerate_generic_signatures(const FieldContext& field);

// The Type 3 signatures of the field (not reduced by orbit).
std::vector<std::pair<Signature, mpz_class>> type3_signatures(const FieldContext& field);

// Necessary conditions per signature type: keep/discard a candidate prime p.
// Primes below 17 are never filtered.
bool congruence_filter(const mpz_class& p, SignatureType stype, const FieldContext& field);

} // namespace isogeny
