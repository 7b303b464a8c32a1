#include "isogeny/intmath.hpp"

#include "isogeny/errors.hpp"

#include <algorithm>
#include <numeric>

namespace isogeny {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::parse: return "PARSE";
    case Errc::non_monic: return "NON_MONIC";
    case Errc::aut_not_root: return "AUT_NOT_ROOT";
    case Errc::bad_generator_norm: return "BAD_GENERATOR_NORM";
    case Errc::bad_sqrt: return "BAD_SQRT";
    case Errc::not_split: return "NOT_SPLIT";
    case Errc::non_galois: return "NON_GALOIS";
    case Errc::reject_infinite: return "REJECT_INFINITE";
    case Errc::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    case Errc::signature_length: return "SIGNATURE_LENGTH";
    case Errc::aux_empty: return "AUX_EMPTY";
    case Errc::even_aux: return "EVEN_AUX";
    case Errc::gen_not_generating: return "GEN_NOT_GENERATING";
    case Errc::gen_even_characteristic: return "GEN_EVEN_CHARACTERISTIC";
    case Errc::need_nonprincipal_aux: return "NEED_NONPRINCIPAL_AUX";
    case Errc::unsupported_degree: return "UNSUPPORTED_DEGREE";
    case Errc::search_exhausted: return "SEARCH_EXHAUSTED";
    case Errc::factoring_timeout: return "FACTORING_TIMEOUT";
    case Errc::alpha_not_coprime: return "ALPHA_NOT_COPRIME";
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
    }
    return "UNKNOWN";
}

mpz_class abs_z(const mpz_class& a) { return a < 0 ? mpz_class(-a) : a; }

mpz_class gcd0(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class lcm0(const mpz_class& a, const mpz_class& b) {
    if (a == 0 || b == 0) return 0;
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker_si(const mpz_class& a, long n) { return mpz_kronecker_si(a.get_mpz_t(), n); }

bool is_square(const mpz_class& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_squarefree(const mpz_class& n) {
    mpz_class m = abs_z(n);
    if (m == 0) return false;
    Factorization f = factor_integer(m);
    if (!f.complete()) throw Error(Errc::factoring_timeout, "squarefree test on " + m.get_str());
    for (auto& [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

mpz_class next_prime(const mpz_class& n) {
    mpz_class r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (uint64_t i = 2; i * i <= n; ++i)
        if (!comp[i])
            for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    for (uint64_t i = 2; i <= n; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

mpz_class powmod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

std::optional<mpz_class> invmod(const mpz_class& a, const mpz_class& mod) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

mpz_class pow_z(const mpz_class& base, unsigned long exp) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p) {
    mpz_class a0 = a % p;
    if (a0 < 0) a0 += p;
    if (a0 == 0) return mpz_class(0);
    if (p == 2) return a0;
    if (kronecker(a0, p) != 1) return std::nullopt;
    // Tonelli-Shanks
    mpz_class q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    if (s == 1) return powmod(a0, (p + 1) / 4, p);
    mpz_class z = 2;
    while (kronecker(z, p) != -1) ++z;
    mpz_class m = s, c = powmod(z, q, p), t = powmod(a0, q, p), r = powmod(a0, (q + 1) / 2, p);
    while (t != 1) {
        mpz_class tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        mpz_class b = c;
        for (mpz_class j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

namespace {

// One solution of x^l = c in F_p^* for prime l, or nullopt.
// Reduces to an exponent inverse when l does not divide p-1; otherwise splits
// c into its l-Sylow and prime-to-l parts and solves a Pohlig-Hellman style
// discrete log in the (small-exponent) Sylow subgroup.
std::optional<mpz_class> lth_root_mod(const mpz_class& c, unsigned long l, const mpz_class& p) {
    mpz_class m = p - 1;
    if (m % l != 0) return powmod(c, *invmod(mpz_class(l), m), p);
    if (powmod(c, m / l, p) != 1) return std::nullopt;
    if (l == 2) return sqrt_mod(c, p);
    // m = l^v * w with gcd(l, w) = 1
    mpz_class w = m;
    unsigned v = 0;
    while (w % l == 0) {
        w /= l;
        ++v;
    }
    mpz_class lv = 1;
    for (unsigned i = 0; i < v; ++i) lv *= l;
    mpz_class rho = 2;
    while (powmod(rho, m / l, p) == 1) ++rho;
    mpz_class g = powmod(rho, w, p); // exact order l^v
    // c = s * u with s in the Sylow, u of order dividing w; c^w = s^w
    mpz_class winv = *invmod(w % lv, lv);
    mpz_class s = powmod(powmod(c, w, p), winv, p);
    // digits of e_s = dlog_g(s) base l
    mpz_class gl = powmod(g, lv / l, p); // order l
    mpz_class e = 0, le = 1;
    mpz_class ginv = *invmod(g, p);
    for (unsigned i = 0; i < v; ++i) {
        mpz_class t = powmod(s * powmod(ginv, e, p) % p, lv / (le * l), p);
        mpz_class d = 0, cur = 1;
        while (cur != t) {
            cur = cur * gl % p;
            ++d;
            if (d > static_cast<long>(l)) return std::nullopt;
        }
        e += d * le;
        le *= l;
    }
    if (e % l != 0) return std::nullopt;
    mpz_class s_root = powmod(g, e / l, p);
    mpz_class u = c * *invmod(s, p) % p;
    mpz_class u_root = powmod(u, *invmod(mpz_class(l) % w, w), p);
    return s_root * u_root % p;
}

} // namespace

std::vector<mpz_class> all_nth_roots_mod(const mpz_class& c_in, unsigned long n, const mpz_class& p) {
    std::vector<mpz_class> out;
    mpz_class c = c_in % p;
    if (c < 0) c += p;
    if (c == 0) return out;
    // factor n
    std::vector<std::pair<unsigned long, unsigned>> nf;
    unsigned long m = n;
    for (unsigned long l = 2; l * l <= m; ++l) {
        if (m % l == 0) {
            unsigned e = 0;
            while (m % l == 0) {
                m /= l;
                ++e;
            }
            nf.push_back({l, e});
        }
    }
    if (m > 1) nf.push_back({m, 1});
    // one root via successive prime-power roots
    mpz_class r0 = c;
    for (auto& [l, e] : nf) {
        for (unsigned i = 0; i < e; ++i) {
            auto r = lth_root_mod(r0, l, p);
            if (!r) return out;
            r0 = *r;
        }
    }
    // all roots: multiply by generators of mu_g, g = gcd(n, p-1)
    mpz_class pm1 = p - 1;
    mpz_class g = gcd0(mpz_class(n), pm1);
    unsigned long gu = mpz_get_ui(g.get_mpz_t());
    // find a generator of mu_g: an element z of exact order g
    mpz_class z = 1;
    if (gu > 1) {
        // candidate x^((p-1)/g) for x = 2,3,...; exact order check on prime divisors of g
        std::vector<unsigned long> gprimes;
        unsigned long gg = gu;
        for (unsigned long l = 2; l * l <= gg; ++l)
            if (gg % l == 0) {
                gprimes.push_back(l);
                while (gg % l == 0) gg /= l;
            }
        if (gg > 1) gprimes.push_back(gg);
        for (mpz_class x = 2;; ++x) {
            z = powmod(x, pm1 / g, p);
            bool exact = (z != 1);
            for (auto l : gprimes)
                if (exact && powmod(z, g / l, p) == 1) exact = false;
            if (exact) break;
        }
    }
    mpz_class cur = r0;
    for (unsigned long i = 0; i < std::max<unsigned long>(gu, 1); ++i) {
        out.push_back(cur);
        cur = cur * z % p;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, uint64_t& budget, unsigned long seed) {
    // Brent's cycle variant; returns a nontrivial factor or 0 on budget exhaustion.
    if (mpz_even_p(n.get_mpz_t())) return 2;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(seed);
    while (budget > 0) {
        mpz_class y = rng.get_z_range(n - 3) + 2;
        mpz_class c = rng.get_z_range(n - 3) + 1;
        mpz_class x = y, ys = y, q = 1, g = 1;
        unsigned long r = 1, k;
        const unsigned long step = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long lim = std::min(step, r - k);
                for (unsigned long i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs_z(x - y) % n;
                    --budget;
                }
                g = gcd0(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1 && budget > 0) {
                ys = (ys * ys + c) % n;
                g = gcd0(abs_z(x - ys), n);
                --budget;
            }
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

void factor_rec(mpz_class n, Factorization& out, uint64_t& budget, unsigned long& seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.factors[n] += 1;
        return;
    }
    if (is_square(n)) {
        mpz_class r = isqrt(n);
        factor_rec(r, out, budget, seed);
        factor_rec(r, out, budget, seed);
        return;
    }
    mpz_class d = pollard_brent(n, budget, seed++);
    if (d == 0) {
        out.unfactored *= n;
        return;
    }
    factor_rec(d, out, budget, seed);
    factor_rec(n / d, out, budget, seed);
}

} // namespace

Factorization factor_integer(mpz_class n, uint64_t rho_budget) {
    Factorization out;
    if (n < 0) n = -n;
    if (n == 0) throw Error(Errc::invalid_argument, "factor_integer(0)");
    static const std::vector<uint64_t> small = primes_up_to(100000);
    for (uint64_t p : small) {
        if (n == 1) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                n /= static_cast<unsigned long>(p);
                ++e;
            }
            out.factors[mpz_class(static_cast<unsigned long>(p))] = e;
        }
    }
    unsigned long seed = 0x9e3779b9UL;
    factor_rec(n, out, rho_budget, seed);
    return out;
}

} // namespace isogeny
