#include "isogeny/residue.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>

namespace isogeny {
namespace fppoly {

ZPoly trim(ZPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

int degree(const ZPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

ZPoly reduce_coeffs(ZPoly a, const mpz_class& p) {
    for (auto& c : a) {
        c %= p;
        if (c < 0) c += p;
    }
    return trim(std::move(a));
}

ZPoly add(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return reduce_coeffs(std::move(r), p);
}

ZPoly sub(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return reduce_coeffs(std::move(r), p);
}

ZPoly mul(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return reduce_coeffs(std::move(r), p);
}

ZPoly monic(ZPoly a, const mpz_class& p) {
    a = reduce_coeffs(std::move(a), p);
    int d = degree(a);
    if (d < 0) return a;
    if (a[d] == 1) return a;
    mpz_class inv = *isogeny::invmod(a[d], p);
    for (auto& c : a) c = c * inv % p;
    return a;
}

ZPoly mod(ZPoly a, const ZPoly& m_in, const mpz_class& p) {
    ZPoly m = monic(m_in, p);
    a = reduce_coeffs(std::move(a), p);
    int dm = degree(m);
    if (dm < 0) throw Error(Errc::invalid_argument, "mod by zero polynomial");
    while (degree(a) >= dm) {
        int da = degree(a);
        mpz_class lead = a[da];
        for (int i = 0; i <= dm; ++i) {
            a[da - dm + i] = (a[da - dm + i] - lead * m[i]) % p;
            if (a[da - dm + i] < 0) a[da - dm + i] += p;
        }
        a = trim(std::move(a));
    }
    return a;
}

ZPoly gcd(ZPoly a, ZPoly b, const mpz_class& p) {
    a = reduce_coeffs(std::move(a), p);
    b = reduce_coeffs(std::move(b), p);
    while (degree(b) >= 0) {
        ZPoly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

ZPoly powmod(const ZPoly& a, const mpz_class& e, const ZPoly& m, const mpz_class& p) {
    ZPoly base = mod(a, m, p);
    ZPoly result{mpz_class(1)};
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = mod(mul(result, base, p), m, p);
        k >>= 1;
        if (k > 0) base = mod(mul(base, base, p), m, p);
    }
    return result;
}

std::optional<ZPoly> invmod(const ZPoly& a_in, const ZPoly& m, const mpz_class& p) {
    ZPoly r0 = monic(m, p), r1 = mod(a_in, m, p);
    if (degree(r1) < 0) return std::nullopt;
    ZPoly s0{}, s1{mpz_class(1)};
    while (degree(r1) >= 0) {
        // divide r0 by r1
        ZPoly q{};
        ZPoly rem = r0;
        int d1 = degree(r1);
        mpz_class lead_inv = *isogeny::invmod(r1[d1], p);
        while (degree(rem) >= d1) {
            int dr = degree(rem);
            mpz_class c = rem[dr] * lead_inv % p;
            ZPoly t(dr - d1 + 1, mpz_class(0));
            t[dr - d1] = c;
            if (static_cast<int>(q.size()) < dr - d1 + 1) q.resize(dr - d1 + 1, mpz_class(0));
            q[dr - d1] = (q[dr - d1] + c) % p;
            rem = sub(rem, mul(t, r1, p), p);
        }
        ZPoly s2 = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (degree(r0) != 0) return std::nullopt; // not coprime
    mpz_class inv = *isogeny::invmod(r0[0], p);
    ZPoly out = s0;
    for (auto& c : out) c = c * inv % p;
    return mod(std::move(out), m, p);
}

ZPoly x_power_mod(const mpz_class& e, const ZPoly& m, const mpz_class& p) {
    return powmod(ZPoly{mpz_class(0), mpz_class(1)}, e, m, p);
}

bool is_squarefree(const ZPoly& a, const mpz_class& p) {
    ZPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    d = reduce_coeffs(std::move(d), p);
    ZPoly g = gcd(a, d, p);
    return degree(g) == 0;
}

std::vector<mpz_class> roots(const ZPoly& a_in, const mpz_class& p) {
    std::vector<mpz_class> out;
    ZPoly a = monic(a_in, p);
    if (degree(a) <= 0) return out;
    if (p < 50) {
        for (mpz_class x = 0; x < p; ++x) {
            mpz_class v = 0;
            for (int i = degree(a); i >= 0; --i) v = (v * x + a[i]) % p;
            if (v == 0) out.push_back(x);
        }
        return out;
    }
    // restrict to the product of linear factors: gcd(x^p - x, a)
    ZPoly xp = x_power_mod(p, a, p);
    ZPoly lin = gcd(sub(xp, ZPoly{mpz_class(0), mpz_class(1)}, p), a, p);
    // split recursively with (x + c)^((p-1)/2) - 1
    std::vector<ZPoly> stack{lin};
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(12345);
    while (!stack.empty()) {
        ZPoly f = stack.back();
        stack.pop_back();
        int d = degree(f);
        if (d <= 0) continue;
        if (d == 1) {
            out.push_back((p - f[0]) % p);
            continue;
        }
        mpz_class c = rng.get_z_range(p);
        ZPoly shifted{c, mpz_class(1)};
        ZPoly h = powmod(shifted, (p - 1) / 2, f, p);
        h = sub(h, ZPoly{mpz_class(1)}, p);
        ZPoly g = gcd(h, f, p);
        if (degree(g) == 0 || degree(g) == d) {
            stack.push_back(f); // retry with another shift
            continue;
        }
        stack.push_back(g);
        // f / g
        ZPoly q = f;
        {
            // exact division
            ZPoly quotient;
            ZPoly rem = f;
            int dg = degree(g);
            while (degree(rem) >= dg) {
                int dr = degree(rem);
                mpz_class coef = rem[dr]; // g monic
                ZPoly t(dr - dg + 1, mpz_class(0));
                t[dr - dg] = coef;
                if (static_cast<int>(quotient.size()) < dr - dg + 1)
                    quotient.resize(dr - dg + 1, mpz_class(0));
                quotient[dr - dg] = coef;
                rem = sub(rem, mul(t, g, p), p);
            }
            q = quotient;
        }
        stack.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

ZPoly exact_div(const ZPoly& f, const ZPoly& g, const mpz_class& p) {
    ZPoly quotient;
    ZPoly rem = f;
    ZPoly gm = monic(g, p);
    int dg = degree(gm);
    while (degree(rem) >= dg) {
        int dr = degree(rem);
        mpz_class coef = rem[dr];
        ZPoly t(dr - dg + 1, mpz_class(0));
        t[dr - dg] = coef;
        if (static_cast<int>(quotient.size()) < dr - dg + 1) quotient.resize(dr - dg + 1, mpz_class(0));
        quotient[dr - dg] = coef;
        rem = sub(rem, mul(t, gm, p), p);
    }
    return trim(std::move(quotient));
}

} // namespace

std::vector<ZPoly> factor_squarefree(const ZPoly& a_in, const mpz_class& p) {
    std::vector<ZPoly> out;
    ZPoly a = monic(a_in, p);
    if (degree(a) <= 0) return out;
    // distinct-degree
    std::vector<std::pair<ZPoly, unsigned>> dd; // (product of irreducibles of degree d, d)
    ZPoly rest = a;
    ZPoly xq = x_power_mod(p, rest, p);
    ZPoly xqi = xq;
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(degree(rest)); ++d) {
        if (d > 1) xqi = powmod(xqi, p, rest, p);
        ZPoly g = gcd(sub(xqi, ZPoly{mpz_class(0), mpz_class(1)}, p), rest, p);
        if (degree(g) > 0) {
            dd.push_back({g, d});
            rest = exact_div(rest, g, p);
            xqi = mod(xqi, rest, p);
        }
    }
    if (degree(rest) > 0) dd.push_back({rest, static_cast<unsigned>(degree(rest))});
    // equal-degree (Cantor-Zassenhaus), fixed seed for determinism
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(987654321);
    for (auto& [prod, d] : dd) {
        std::vector<ZPoly> stack{prod};
        while (!stack.empty()) {
            ZPoly f = stack.back();
            stack.pop_back();
            unsigned df = static_cast<unsigned>(degree(f));
            if (df == 0) continue;
            if (df == d) {
                out.push_back(monic(f, p));
                continue;
            }
            // random splitting
            ZPoly r(df, mpz_class(0));
            for (auto& c : r) c = rng.get_z_range(p);
            r = trim(std::move(r));
            if (degree(r) < 1) {
                stack.push_back(f);
                continue;
            }
            mpz_class e = (pow_z(p, d) - 1) / 2;
            ZPoly h;
            if (p == 2) {
                // trace map for characteristic 2
                h = r;
                ZPoly acc = r;
                for (unsigned i = 1; i < d; ++i) {
                    acc = powmod(acc, p, f, p);
                    h = add(h, acc, p);
                }
            } else {
                h = powmod(r, e, f, p);
                h = sub(h, ZPoly{mpz_class(1)}, p);
            }
            ZPoly g = gcd(h, f, p);
            if (degree(g) == 0 || degree(g) == degree(f)) {
                stack.push_back(f);
                continue;
            }
            stack.push_back(g);
            stack.push_back(exact_div(f, g, p));
        }
    }
    std::sort(out.begin(), out.end(), [](const ZPoly& x, const ZPoly& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        for (size_t i = x.size(); i-- > 0;)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    });
    return out;
}

} // namespace fppoly

ResidueField::ResidueField(mpz_class p, ZPoly g) : p_(std::move(p)), g_(fppoly::monic(std::move(g), p_)) {
    if (fppoly::degree(g_) < 1) throw Error(Errc::invalid_argument, "residue field modulus");
    g_.resize(static_cast<size_t>(fppoly::degree(g_)) + 1);
}

mpz_class ResidueField::order() const { return pow_z(p_, degree()); }

ResidueField::Elt ResidueField::from_int(const mpz_class& c) const {
    mpz_class r = c % p_;
    if (r < 0) r += p_;
    if (r == 0) return {};
    return {r};
}

ResidueField::Elt ResidueField::from_poly(const ZPoly& a) const { return fppoly::mod(a, g_, p_); }

ResidueField::Elt ResidueField::add(const Elt& a, const Elt& b) const { return fppoly::add(a, b, p_); }
ResidueField::Elt ResidueField::sub(const Elt& a, const Elt& b) const { return fppoly::sub(a, b, p_); }

ResidueField::Elt ResidueField::mul(const Elt& a, const Elt& b) const {
    return fppoly::mod(fppoly::mul(a, b, p_), g_, p_);
}

ResidueField::Elt ResidueField::pow(const Elt& a, const mpz_class& e) const {
    if (e >= 0) return fppoly::powmod(a, e, g_, p_);
    auto i = inv(a);
    if (!i) throw Error(Errc::invalid_argument, "negative power of a zero element");
    return fppoly::powmod(*i, -e, g_, p_);
}

std::optional<ResidueField::Elt> ResidueField::inv(const Elt& a) const {
    return fppoly::invmod(a, g_, p_);
}

bool ResidueField::is_zero(const Elt& a) const { return fppoly::degree(a) < 0; }

bool ResidueField::equal(const Elt& a, const Elt& b) const {
    return fppoly::trim(a) == fppoly::trim(b);
}

std::optional<mpz_class> ResidueField::to_prime_field(const Elt& a) const {
    int d = fppoly::degree(a);
    if (d > 0) return std::nullopt;
    if (d < 0) return mpz_class(0);
    return a[0];
}

} // namespace isogeny
