#pragma once

#include <map>
#include <mutex>
#include <optional>

#include "isogeny/field_context.hpp"

namespace isogeny {

// Integral ideal m * [a, (b + sqrt(Delta))/2] of a quadratic field, with
// a > 0, 4a | b^2 - Delta, and b normalised into (-a, a].
struct QIdeal {
    mpz_class m = 1;
    mpz_class a = 1;
    mpz_class b = 0;

    bool operator==(const QIdeal& o) const { return m == o.m && a == o.a && b == o.b; }
};

// Binary quadratic form (a, b, c) of discriminant Delta, optionally carrying
// the accumulated SL2(Z) transformation from the original form.
struct BQForm {
    mpz_class a, b, c;
    // row-major 2x2 matrix U with F_orig(U*(x,y)) = F_current(x,y)
    mpz_class u11 = 1, u12 = 0, u21 = 0, u22 = 1;
    bool track = false;

    mpz_class disc() const { return b * b - 4 * a * c; }
};

// Native arithmetic for Q(sqrt(D)), D squarefree and != 0, 1: splitting,
// class group via binary quadratic forms, principal generators, units.
class QuadField : public FieldContext {
  public:
    explicit QuadField(const mpz_class& D);

    const mpz_class& D() const { return D_; }

    // FieldContext surface
    const DefiningField& nf() const override { return *nf_; }
    std::string label() const override;
    int degree() const override { return 2; }
    const mpz_class& discriminant() const override { return disc_; }
    unsigned class_number() const override;
    bool rejected_infinite() const override;
    const std::vector<NFElement>& unit_generators() const override;
    std::optional<NFElement> torsion_unit() const override;
    const std::vector<ImagSubfield>& imaginary_subfields() const override;
    std::optional<SplittingInfo> splitting(const mpz_class& q) const override;
    std::optional<PrimeIdealData> next_split_prime(mpz_class& cursor) const override;
    std::vector<PrimeIdealData> primes_above(const mpz_class& q) const override;
    std::vector<GeneratorData> generator_data(const mpz_class& avoid_p, bool odd_only) const override;
    ClassDecomposition decompose(const PrimeIdealData& prime,
                                 const std::vector<GeneratorData>& gens) const override;
    std::vector<std::vector<PrimeIdealData>> gen_sets() const override;
    std::optional<PrimeIdealData> nonprincipal_prime() const override;

    // quadratic-specific operations
    std::pair<SplitKind, unsigned> splitting_type(const mpz_class& q) const;
    PrimeIdealData prime_ideal_data(const mpz_class& q) const;
    PrimeIdealData conjugate_prime(const PrimeIdealData& p) const;
    NFElement fundamental_unit() const; // D > 0 only

    // ideal machinery (exposed for tests and the weeding filters)
    QIdeal ideal_one() const;
    QIdeal ideal_from_prime(const PrimeIdealData& p) const;
    QIdeal ideal_from_element(const NFElement& g) const; // g integral
    QIdeal ideal_mul(const QIdeal& x, const QIdeal& y) const;
    QIdeal ideal_pow(const QIdeal& x, unsigned e) const;
    QIdeal ideal_conj(const QIdeal& x) const;
    mpz_class ideal_norm(const QIdeal& x) const;
    bool ideal_contains(const QIdeal& x, const NFElement& g) const;
    bool ideal_equal(const QIdeal& x, const QIdeal& y) const;

    // Principality: returns a generator when the ideal is principal.
    std::optional<NFElement> principal_generator(const QIdeal& x) const;

    // canonical key of the ideal class (reduced form walk)
    std::pair<mpz_class, mpz_class> class_key(const QIdeal& x) const;
    bool is_principal_class(const QIdeal& x) const;

    // form-level helpers (class number oracles, genus checks)
    static BQForm reduce_form_imag(BQForm f);
    std::vector<BQForm> reduced_forms_imag() const;          // D < 0
    unsigned count_reduced_cycles_real() const;              // D > 0

  private:
    mpz_class D_;
    mpz_class disc_;
    int t_ = 0;     // trace of omega (Delta mod 2)
    mpz_class n_;   // norm of omega: (t^2 - Delta)/4
    std::unique_ptr<DefiningField> nf_;

    mutable std::mutex cache_mutex_;
    mutable std::optional<unsigned> h_cache_;
    mutable std::optional<NFElement> unit_cache_;
    mutable std::vector<NFElement> unit_gens_cache_;
    mutable std::vector<ImagSubfield> imag_cache_;
    mutable bool imag_cache_built_ = false;

    NFElement elem(const mpz_class& x, const mpz_class& y) const; // x + y*omega
    NFElement sqrt_disc_elem() const;                             // sqrt(Delta) as element

    mpz_class normalize_b(const mpz_class& b, const mpz_class& a) const; // into (-a, a]
    mpz_class normalize_b_real(const mpz_class& b, const mpz_class& a) const;
    bool is_reduced_ideal(const mpz_class& a, const mpz_class& b) const;

    // one rho step; factor is psi with I_next = psi * I (as modules)
    void rho_step(mpz_class& a, mpz_class& b, NFElement* factor) const;

    std::optional<mpz_class> prime_root(const mpz_class& q) const; // smallest root of f mod q

    unsigned compute_class_number() const;
    NFElement unit_normalize(NFElement g) const;

    std::vector<GeneratorData> generator_chain(const mpz_class& avoid_p, bool odd_only,
                                               std::map<std::pair<mpz_class, mpz_class>,
                                                        std::vector<unsigned>>* subgroup_out) const;
};

} // namespace isogeny
