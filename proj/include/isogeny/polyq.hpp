#pragma once

#include <vector>

#include <gmpxx.h>

namespace isogeny {

// Dense polynomials with rational coefficients, ascending order.
using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;

namespace polyq {

QPoly trim(QPoly p);
int degree(const QPoly& p); // -1 for zero
bool is_zero(const QPoly& p);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly neg(const QPoly& a);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& c);

// Remainder of a modulo a monic integer polynomial f.
QPoly mod_monic(QPoly a, const ZPoly& f);

mpq_class eval(const QPoly& p, const mpq_class& x);

// Resultant Res_x(f, g) for f monic with integer coefficients.
// Equals the product of g over the roots of f. Computed by fraction-free
// (Bareiss) elimination on the Sylvester matrix after clearing denominators.
mpq_class resultant_monic(const ZPoly& f, const QPoly& g);

// Determinant of a square integer matrix by Bareiss elimination.
mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m);

// Rank over Q of an integer matrix (fraction-free elimination).
int rank_bareiss(std::vector<std::vector<mpz_class>> m);

// Rank of the matrix reduced modulo p (a lower bound for the rational rank).
int rank_mod_p(const std::vector<std::vector<mpz_class>>& m, const mpz_class& p);

} // namespace polyq
} // namespace isogeny
