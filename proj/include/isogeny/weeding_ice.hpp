#pragma once

#include <optional>
#include <set>
#include <vector>

#include "isogeny/field_context.hpp"
#include "isogeny/residue.hpp"
#include "isogeny/signatures.hpp"

namespace isogeny {

// The chosen prime of k above a candidate isogeny prime p, with the residue
// field and the images of theta under every embedding reduced mod that prime.
struct PrimeAboveP {
    mpz_class p;
    unsigned f = 1;
    SplitKind kind = SplitKind::Split;
    ResidueField rf;
    std::vector<ResidueField::Elt> theta_images;
    // irreducible factors of the defining polynomial mod p (for residue-field
    // generator lifts); empty when unavailable
    std::vector<ZPoly> factors;
};

std::optional<PrimeAboveP> prime_above_p(const FieldContext& field, const mpz_class& p);

// alpha^eps mod p0; nullopt when a coefficient denominator or the value
// itself is not coprime to p.
std::optional<ResidueField::Elt> chi_eps(const NFElement& alpha, const Signature& eps,
                                         const PrimeAboveP& pap);

// The two necessary conditions on chi: trivial on units, and image inside
// the 12th powers of F_p^*. A false return eliminates (eps, p).
bool check_character_prerequisites(const Signature& eps, const PrimeAboveP& pap,
                                   const FieldContext& field);

// A character extension: values of mu at the class-group generators.
using CharacterExtension = std::vector<mpz_class>;

std::vector<CharacterExtension> enumerate_extensions(const Signature& eps, const PrimeAboveP& pap,
                                                     const FieldContext& field,
                                                     const std::vector<GeneratorData>& gens);

// Value of mu at a prime ideal coprime to p; nullopt when the class data
// cannot be resolved (treated as keep by the filter).
std::optional<mpz_class> mu_value(const CharacterExtension& ext, const Signature& eps,
                                  const PrimeIdealData& qdata, const PrimeAboveP& pap,
                                  const FieldContext& field, const std::vector<GeneratorData>& gens);

// Consistency of mu(q) with some reduction type at q: a multiplicative value
// (1 or Nm^12) or a 12th power of a Frobenius root.
bool frobenius_consistency(const CharacterExtension& ext, const Signature& eps,
                           const PrimeIdealData& qdata, const PrimeAboveP& pap,
                           const FieldContext& field, const std::vector<GeneratorData>& gens);

// Type 1 variant: every prime above q must carry a value consistent with
// some reduction type there.
bool type1_consistency(const CharacterExtension& ext, const Signature& eps, const mpz_class& q,
                       const PrimeAboveP& pap, const FieldContext& field,
                       const std::vector<GeneratorData>& gens);

struct IceConfig {
    unsigned aux_count = 10; // tested split rational primes per candidate
};

// Keep/discard a candidate prime given its provenance signatures. A discard
// requires every signature's every extension to fail at some tested prime;
// uncertainty always keeps.
bool ice_filter(const FieldContext& field, const mpz_class& p,
                const std::vector<Signature>& provenance, const IceConfig& config);

const std::set<mpz_class>& mazur_set();

} // namespace isogeny
