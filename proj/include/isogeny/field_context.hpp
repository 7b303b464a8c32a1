#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "isogeny/nf_core.hpp"

namespace isogeny {

enum class SplitKind { Split, Inert, Ramified };

const char* split_kind_name(SplitKind k);

// A chosen prime ideal of k above a rational prime q, with its class-group
// order and a generator of the h-th power.
struct PrimeIdealData {
    mpz_class q;
    unsigned f = 1;
    SplitKind kind = SplitKind::Split;
    unsigned h = 1;
    NFElement gamma;  // generator of the ideal^h
    mpz_class root;   // for f == 1: theta = root (mod ideal); unused otherwise

    mpz_class norm() const;
};

// Per-generator data for the iterative character-extension construction:
// I_i of order h_i in Cl_k / <I_1..I_{i-1}>, relation exponents e_{i,j} with
// I_i^{h_i} ~ prod I_j^{e_ij}, and a generator alpha of the principal ideal
// I_i^{h_i} prod I_j^{-e_ij}.
struct GeneratorData {
    PrimeIdealData ideal;
    unsigned order_in_quotient = 1;
    std::vector<unsigned> rel_exponents;
    NFElement alpha;
};

// Decomposition of a prime ideal over a generator list: exponents e_i and a
// generator alpha of ideal * prod I_i^{-e_i}.
struct ClassDecomposition {
    bool ok = false;
    std::vector<unsigned> exponents;
    NFElement alpha;
};

struct ImagSubfield {
    mpz_class disc;           // fundamental discriminant of L (negative)
    NFElement sqrt_embedding; // element of k with rational square of matching squarefree part
    bool hcf_contained = false;
    std::vector<int> sigma_L; // indicator over automorphism indices fixing L
};

struct SplittingInfo {
    SplitKind kind;
    unsigned f; // residue degree (equal for all primes above q in a Galois field)
};

// The backend surface consumed by the bound computations, the Type 2 scanner,
// the weeding filters and the pipeline. Implemented natively for quadratic
// fields and from a validated data file for general Galois fields.
class FieldContext {
  public:
    virtual ~FieldContext() = default;

    virtual const DefiningField& nf() const = 0;
    virtual std::string label() const = 0;
    virtual int degree() const = 0;
    virtual const mpz_class& discriminant() const = 0;
    virtual unsigned class_number() const = 0;
    virtual bool rejected_infinite() const = 0;

    virtual const std::vector<NFElement>& unit_generators() const = 0;
    virtual std::optional<NFElement> torsion_unit() const = 0;
    virtual const std::vector<ImagSubfield>& imaginary_subfields() const = 0;

    // nullopt when the backend cannot determine the splitting of q.
    virtual std::optional<SplittingInfo> splitting(const mpz_class& q) const = 0;

    // The next totally split prime with rational prime > cursor; advances the
    // cursor. nullopt when the backend's supply is exhausted.
    virtual std::optional<PrimeIdealData> next_split_prime(mpz_class& cursor) const = 0;

    // All primes above q that the backend can materialise with full data.
    virtual std::vector<PrimeIdealData> primes_above(const mpz_class& q) const = 0;

    // Class-group generator chain avoiding residue characteristic avoid_p
    // (avoid_p = 0 places no restriction; odd_only restricts to odd q).
    virtual std::vector<GeneratorData> generator_data(const mpz_class& avoid_p, bool odd_only) const = 0;

    virtual ClassDecomposition decompose(const PrimeIdealData& prime,
                                         const std::vector<GeneratorData>& gens) const = 0;

    // Generating sets of odd residue characteristic for the Type 2 / Type 3
    // not-Momose bounds; empty when h = 1.
    virtual std::vector<std::vector<PrimeIdealData>> gen_sets() const = 0;

    virtual std::optional<PrimeIdealData> nonprincipal_prime() const = 0;
};

} // namespace isogeny
