#pragma once

#include <map>

#include "isogeny/field_context.hpp"

namespace isogeny {

// Galois number field constructed from a validated field-data file of
// externally computed invariants, exposing the same surface as the native
// quadratic backend. Non-Galois fields are rejected.
class GaloisField : public FieldContext {
  public:
    static std::unique_ptr<GaloisField> load(const std::string& path);
    static std::unique_ptr<GaloisField> load_from_string(const std::string& json_text);

    const DefiningField& nf() const override { return *nf_; }
    std::string label() const override { return label_; }
    int degree() const override { return nf_->degree(); }
    const mpz_class& discriminant() const override { return nf_->discriminant(); }
    unsigned class_number() const override { return h_; }
    bool rejected_infinite() const override;
    const std::vector<NFElement>& unit_generators() const override { return units_; }
    std::optional<NFElement> torsion_unit() const override { return torsion_; }
    const std::vector<ImagSubfield>& imaginary_subfields() const override { return subfields_; }
    std::optional<SplittingInfo> splitting(const mpz_class& q) const override;
    std::optional<PrimeIdealData> next_split_prime(mpz_class& cursor) const override;
    std::vector<PrimeIdealData> primes_above(const mpz_class& q) const override;
    std::vector<GeneratorData> generator_data(const mpz_class& avoid_p, bool odd_only) const override;
    ClassDecomposition decompose(const PrimeIdealData& prime,
                                 const std::vector<GeneratorData>& gens) const override;
    std::vector<std::vector<PrimeIdealData>> gen_sets() const override;
    std::optional<PrimeIdealData> nonprincipal_prime() const override;

  private:
    GaloisField() = default;

    std::string label_;
    std::unique_ptr<DefiningField> nf_;
    unsigned h_ = 1;
    std::vector<NFElement> units_;
    std::optional<NFElement> torsion_;
    std::vector<ImagSubfield> subfields_;
    std::vector<PrimeIdealData> split_primes_;   // ascending q
    std::vector<PrimeIdealData> class_group_;    // generator entries (independent basis)
    std::vector<std::vector<size_t>> gen_set_indices_;
    mpz_class index_sq_ = 1; // disc(f) / disc(K)

    mutable std::map<mpz_class, std::optional<SplittingInfo>> splitting_cache_;
    mutable std::mutex cache_mutex_;

    void validate();
};

} // namespace isogeny
