#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "isogeny/polyq.hpp"

namespace isogeny {

// Polynomials over F_p, dense ascending coefficients in [0, p).
namespace fppoly {

ZPoly trim(ZPoly a);
int degree(const ZPoly& a);
ZPoly reduce_coeffs(ZPoly a, const mpz_class& p);
ZPoly add(const ZPoly& a, const ZPoly& b, const mpz_class& p);
ZPoly sub(const ZPoly& a, const ZPoly& b, const mpz_class& p);
ZPoly mul(const ZPoly& a, const ZPoly& b, const mpz_class& p);
ZPoly mod(ZPoly a, const ZPoly& m, const mpz_class& p); // m monic after normalisation
ZPoly monic(ZPoly a, const mpz_class& p);
ZPoly gcd(ZPoly a, ZPoly b, const mpz_class& p);
ZPoly powmod(const ZPoly& a, const mpz_class& e, const ZPoly& m, const mpz_class& p);
std::optional<ZPoly> invmod(const ZPoly& a, const ZPoly& m, const mpz_class& p);
ZPoly x_power_mod(const mpz_class& e, const ZPoly& m, const mpz_class& p);

// All roots in F_p of a squarefree-or-not polynomial, sorted.
std::vector<mpz_class> roots(const ZPoly& a, const mpz_class& p);

// Irreducible factors of a SQUAREFREE polynomial mod p (distinct-degree then
// Cantor-Zassenhaus equal-degree splitting with a fixed seed), sorted.
std::vector<ZPoly> factor_squarefree(const ZPoly& a, const mpz_class& p);

bool is_squarefree(const ZPoly& a, const mpz_class& p);

} // namespace fppoly

// F_{p^m} presented as F_p[x]/(g), g monic irreducible of degree m.
class ResidueField {
  public:
    ResidueField(mpz_class p, ZPoly g);

    const mpz_class& p() const { return p_; }
    unsigned degree() const { return static_cast<unsigned>(g_.size()) - 1; }
    mpz_class order() const; // p^m
    const ZPoly& modulus() const { return g_; }

    using Elt = ZPoly; // degree < m, coefficients in [0, p)

    Elt zero() const { return {}; }
    Elt one() const { return {mpz_class(1)}; }
    Elt from_int(const mpz_class& c) const;
    Elt from_poly(const ZPoly& a) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt pow(const Elt& a, const mpz_class& e) const;
    std::optional<Elt> inv(const Elt& a) const;

    bool is_zero(const Elt& a) const;
    bool equal(const Elt& a, const Elt& b) const;

    // membership in the prime subfield, and the value as an integer in [0, p)
    std::optional<mpz_class> to_prime_field(const Elt& a) const;

  private:
    mpz_class p_;
    ZPoly g_;
};

} // namespace isogeny
