#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "isogeny/polyq.hpp"
#include "isogeny/signature_types.hpp"

namespace isogeny {

// Element of Q[x]/(f), stored as a rational coefficient vector of length d in
// the power basis of the defining polynomial. All arithmetic is exact.
struct NFElement {
    std::vector<mpq_class> coeff;

    bool operator==(const NFElement& o) const { return coeff == o.coeff; }
    std::string str() const;
};

// A number field Q[x]/(f) together with a designated integral basis and the
// automorphisms realised as polynomials s(x) with f(s(theta)) = 0.
class DefiningField {
  public:
    // f: monic integer coefficients, ascending, degree >= 1.
    // automorphisms: coefficient vectors of length <= d; entry 0 must be the
    // identity x. For Galois fields there are exactly d of them.
    DefiningField(ZPoly f, mpz_class discriminant,
                  std::vector<std::vector<mpq_class>> integral_basis,
                  std::vector<QPoly> automorphisms, bool is_galois);

    int degree() const { return degree_; }
    const ZPoly& poly() const { return poly_; }
    const mpz_class& discriminant() const { return disc_; }
    bool is_galois() const { return is_galois_; }
    size_t aut_count() const { return automorphisms_.size(); }
    const std::vector<std::vector<mpq_class>>& integral_basis() const { return integral_basis_; }

    NFElement zero() const;
    NFElement one() const;
    NFElement from_rational(const mpq_class& c) const;
    NFElement gen() const; // theta
    NFElement from_coeffs(std::vector<mpq_class> c) const;

    NFElement add(const NFElement& a, const NFElement& b) const;
    NFElement sub(const NFElement& a, const NFElement& b) const;
    NFElement neg(const NFElement& a) const;
    NFElement mul(const NFElement& a, const NFElement& b) const;
    NFElement mul_scalar(const NFElement& a, const mpq_class& c) const;
    NFElement pow(const NFElement& a, const mpz_class& e) const; // e >= 0
    std::optional<NFElement> inverse(const NFElement& a) const;

    bool is_rational(const NFElement& a) const;
    bool is_zero(const NFElement& a) const;

    // Product of the images of a under all embeddings; exact, via the
    // resultant of f with the representing polynomial.
    mpq_class norm(const NFElement& a) const;
    mpq_class trace(const NFElement& a) const;

    // Image of a under automorphism aut_index (0 = identity).
    NFElement apply_aut(const NFElement& a, size_t aut_index) const;

    // prod_sigma sigma(a)^{eps_sigma}; requires the field to be Galois (the
    // embeddings are realised by the automorphism list) and eps of length d.
    NFElement pow_signature(const NFElement& a, const Signature& eps) const;

    // Composition table: index of aut_i o aut_j.
    size_t compose_aut(size_t i, size_t j) const { return comp_table_[i][j]; }

    // Coordinates with respect to the integral basis; integral iff all entries
    // are integers.
    std::vector<mpq_class> integral_coordinates(const NFElement& a) const;
    bool is_integral(const NFElement& a) const;

    // Height proxy used for unit-normalising generators.
    mpz_class coeff_height(const NFElement& a) const;

  private:
    int degree_;
    ZPoly poly_;
    mpz_class disc_;
    std::vector<std::vector<mpq_class>> integral_basis_;
    std::vector<QPoly> automorphisms_;
    bool is_galois_;
    std::vector<std::vector<size_t>> comp_table_;
    std::vector<std::vector<mpq_class>> basis_inverse_; // inverse of the integral basis matrix

    QPoly compose_mod(const QPoly& a, const QPoly& s) const;
    void validate_and_build();
};

} // namespace isogeny
