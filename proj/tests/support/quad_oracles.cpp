#include "quad_oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "isogeny/intmath.hpp"

namespace testsupport {

using isogeny::kronecker;

unsigned dirichlet_class_number(const mpz_class& D) {
    if (D >= 0) throw std::runtime_error("imaginary oracle needs D < 0");
    long w = 2;
    if (D == -3) w = 6;
    if (D == -4) w = 4;
    mpz_class sum = 0;
    mpz_class absd = -D;
    for (mpz_class a = 1; a < absd; ++a) sum += a * kronecker(D, a);
    mpz_class h2 = sum * w; // = 2|D| h up to sign
    mpz_class habs = isogeny::abs_z(h2);
    if (habs % (2 * absd) != 0) throw std::runtime_error("Dirichlet sum not divisible");
    return static_cast<unsigned>(mpz_get_ui(mpz_class(habs / (2 * absd)).get_mpz_t()));
}

unsigned analytic_class_number_real(const mpz_class& D, double eps) {
    if (D <= 0) throw std::runtime_error("real oracle needs D > 0");
    double sum = 0.0;
    double d = mpz_get_d(D.get_mpz_t());
    for (mpz_class a = 1; a < D; ++a) {
        int chi = kronecker(D, a);
        if (chi == 0) continue;
        double s = std::sin(M_PI * mpz_get_d(a.get_mpz_t()) / d);
        sum -= chi * std::log(s);
    }
    double h = sum / (2.0 * std::log(eps));
    long rounded = std::lround(h);
    if (std::fabs(h - rounded) > 1e-6) throw std::runtime_error("analytic class number not integral");
    return static_cast<unsigned>(rounded);
}

std::optional<UnitTriple> brute_force_fundamental_unit(const mpz_class& D, unsigned long y_limit) {
    // scan by increasing y/t (the unit value is monotone in y/t for units > 1),
    // with norm -1 before norm +1 at equal ratio; t = 2 only when D = 1 mod 4
    bool half = (((D % 4) + 4) % 4 == 1);
    for (unsigned long k = 1; k <= 2 * y_limit; ++k) {
        for (int sign : {-1, 1}) {
            if (half) {
                mpz_class v = D * k * k + 4 * sign;
                if (v >= 0 && isogeny::is_square(v)) {
                    mpz_class x = isogeny::isqrt(v);
                    if ((x - k) % 2 == 0) return UnitTriple{x, mpz_class(k), mpz_class(2)};
                }
            }
            if (k % 2 == 0) {
                unsigned long y = k / 2;
                mpz_class v = D * y * y + sign;
                if (v >= 0 && isogeny::is_square(v)) {
                    mpz_class x = isogeny::isqrt(v);
                    return UnitTriple{x, mpz_class(y), mpz_class(1)};
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace testsupport
