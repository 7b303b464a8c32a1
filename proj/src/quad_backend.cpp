#include "isogeny/quad_backend.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>
#include <cassert>

namespace isogeny {

namespace {

// positive residue of x mod m
mpz_class pmod(const mpz_class& x, const mpz_class& m) {
    mpz_class r = x % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

QuadField::QuadField(const mpz_class& D) : D_(D) {
    if (D == 0 || D == 1) throw Error(Errc::invalid_argument, "D must be squarefree and not 0 or 1");
    if (!is_squarefree(D)) throw Error(Errc::invalid_argument, "D = " + D.get_str() + " is not squarefree");
    if (pmod(D, 4) == 1) {
        disc_ = D;
        t_ = 1;
        n_ = (1 - D) / 4;
    } else {
        disc_ = 4 * D;
        t_ = 0;
        n_ = -D;
    }
    // f = x^2 - t x + n, omega = (t + sqrt(disc))/2
    ZPoly f{n_, mpz_class(-t_), mpz_class(1)};
    std::vector<QPoly> auts{
        QPoly{mpq_class(0), mpq_class(1)},            // identity
        QPoly{mpq_class(t_), mpq_class(-1)},          // conjugation: omega -> t - omega
    };
    nf_ = std::make_unique<DefiningField>(std::move(f), disc_, std::vector<std::vector<mpq_class>>{},
                                          std::move(auts), true);
}

std::string QuadField::label() const { return "Q(sqrt(" + D_.get_str() + "))"; }

NFElement QuadField::elem(const mpz_class& x, const mpz_class& y) const {
    return nf_->from_coeffs({mpq_class(x), mpq_class(y)});
}

NFElement QuadField::sqrt_disc_elem() const {
    // sqrt(disc) = 2*omega - t
    return nf_->from_coeffs({mpq_class(-t_), mpq_class(2)});
}

std::pair<SplitKind, unsigned> QuadField::splitting_type(const mpz_class& q) const {
    int k = kronecker(disc_, q);
    if (k == 1) return {SplitKind::Split, 1};
    if (k == -1) return {SplitKind::Inert, 2};
    return {SplitKind::Ramified, 1};
}

std::optional<SplittingInfo> QuadField::splitting(const mpz_class& q) const {
    auto [kind, f] = splitting_type(q);
    return SplittingInfo{kind, f};
}

mpz_class QuadField::normalize_b(const mpz_class& b, const mpz_class& a) const {
    // into (-a, a]
    mpz_class m = 2 * a;
    mpz_class r = pmod(b, m);
    if (r > a) r -= m;
    return r;
}

mpz_class QuadField::normalize_b_real(const mpz_class& b, const mpz_class& a) const {
    mpz_class s0 = isqrt(disc_);
    mpz_class m = 2 * a;
    if (a <= s0) {
        // into (s0 - 2a, s0]
        mpz_class r = pmod(b - (s0 - m + 1), m) + (s0 - m + 1);
        return r;
    }
    return normalize_b(b, a);
}

bool QuadField::is_reduced_ideal(const mpz_class& a, const mpz_class& b) const {
    if (disc_ < 0) {
        mpz_class c = (b * b - disc_) / (4 * a);
        return a <= c; // b already in (-a, a]
    }
    mpz_class s0 = isqrt(disc_);
    return b >= 1 && b <= s0 && b + 2 * a >= s0 + 1 && 2 * a <= b + s0;
}

void QuadField::rho_step(mpz_class& a, mpz_class& b, NFElement* factor) const {
    if (factor) {
        // psi = ((b + t)/2 - omega) / a, with I_next = psi * I as modules
        mpq_class c0(mpz_class((b + t_) / 2), a), c1(mpz_class(-1), a);
        c0.canonicalize();
        c1.canonicalize();
        NFElement psi = nf_->from_coeffs({c0, c1});
        *factor = nf_->mul(*factor, psi);
    }
    mpz_class c = (b * b - disc_) / (4 * a);
    mpz_class a2 = abs_z(c);
    mpz_class b2 = disc_ < 0 ? normalize_b(-b, a2) : normalize_b_real(-b, a2);
    a = a2;
    b = b2;
}

QIdeal QuadField::ideal_one() const { return QIdeal{1, 1, normalize_b(mpz_class(t_), mpz_class(1))}; }

std::optional<mpz_class> QuadField::prime_root(const mpz_class& q) const {
    // smallest root of x^2 - t x + n mod q, if any
    if (q == 2) {
        for (int x = 0; x < 2; ++x) {
            mpz_class v = mpz_class(x * x) - t_ * x + n_;
            if (pmod(v, 2) == 0) return mpz_class(x);
        }
        return std::nullopt;
    }
    auto s = sqrt_mod(disc_, q);
    if (!s) return std::nullopt;
    mpz_class inv2 = *invmod(mpz_class(2), q);
    mpz_class r1 = pmod((t_ + *s) * inv2, q);
    mpz_class r2 = pmod((t_ - *s) * inv2, q);
    return std::min(r1, r2);
}

QIdeal QuadField::ideal_from_prime(const PrimeIdealData& p) const {
    if (p.kind == SplitKind::Inert) return QIdeal{p.q, 1, normalize_b(mpz_class(t_), mpz_class(1))};
    mpz_class b = normalize_b(t_ - 2 * p.root, p.q);
    return QIdeal{1, p.q, b};
}

namespace {

// HNF of a list of (x, y) generators of a Z-submodule of Z + Z*omega,
// returning (A, B, C) with module = A Z + (B + C omega) Z, C | A, C | B.
struct Hnf2 {
    mpz_class A, B, C;
};

Hnf2 hnf_rows(std::vector<std::pair<mpz_class, mpz_class>> rows) {
    mpz_class B = 0, C = 0;
    std::vector<mpz_class> xpool;
    for (auto& [x, y] : rows) {
        if (y == 0) {
            if (x != 0) xpool.push_back(abs_z(x));
            continue;
        }
        if (C == 0) {
            B = x;
            C = y;
            continue;
        }
        mpz_class g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), C.get_mpz_t(), y.get_mpz_t());
        mpz_class kernel_x = (C * x - y * B) / g;
        if (kernel_x != 0) xpool.push_back(abs_z(kernel_x));
        B = u * B + v * x;
        C = g;
    }
    if (C < 0) {
        C = -C;
        B = -B;
    }
    mpz_class A = 0;
    for (auto& x : xpool) A = gcd0(A, x);
    if (A != 0 && A != 1 && C != 0) {
        // reduce B mod A for canonicity
        B = B % A;
    }
    return {A, B, C};
}

} // namespace

QIdeal QuadField::ideal_mul(const QIdeal& x, const QIdeal& y) const {
    mpz_class u1 = (x.b - t_) / 2, u2 = (y.b - t_) / 2;
    std::vector<std::pair<mpz_class, mpz_class>> rows;
    rows.push_back({x.a * y.a, mpz_class(0)});
    rows.push_back({x.a * u2, x.a});
    rows.push_back({y.a * u1, y.a});
    rows.push_back({u1 * u2 - n_, u1 + u2 + t_});
    Hnf2 h = hnf_rows(std::move(rows));
    if (h.C == 0 || h.A == 0) throw Error(Errc::invalid_argument, "degenerate ideal product");
    assert(h.A % h.C == 0 && h.B % h.C == 0);
    QIdeal r;
    r.m = x.m * y.m * h.C;
    r.a = h.A / h.C;
    r.b = normalize_b(2 * (h.B / h.C) + t_, r.a);
    assert((r.b * r.b - disc_) % (4 * r.a) == 0);
    return r;
}

QIdeal QuadField::ideal_pow(const QIdeal& x, unsigned e) const {
    QIdeal r = ideal_one();
    QIdeal base = x;
    while (e > 0) {
        if (e & 1) r = ideal_mul(r, base);
        e >>= 1;
        if (e > 0) base = ideal_mul(base, base);
    }
    return r;
}

QIdeal QuadField::ideal_conj(const QIdeal& x) const {
    return QIdeal{x.m, x.a, normalize_b(-x.b, x.a)};
}

mpz_class QuadField::ideal_norm(const QIdeal& x) const { return x.m * x.m * x.a; }

QIdeal QuadField::ideal_from_element(const NFElement& g) const {
    mpq_class x = g.coeff[0], y = g.coeff[1];
    if (x.get_den() != 1 || y.get_den() != 1)
        throw Error(Errc::invalid_argument, "ideal_from_element needs an integral element");
    mpz_class xi = x.get_num(), yi = y.get_num();
    std::vector<std::pair<mpz_class, mpz_class>> rows;
    rows.push_back({xi, yi});
    rows.push_back({-n_ * yi, xi + t_ * yi}); // g * omega
    Hnf2 h = hnf_rows(std::move(rows));
    if (h.C == 0 || h.A == 0) throw Error(Errc::invalid_argument, "ideal of zero element");
    QIdeal r;
    r.m = h.C;
    r.a = h.A / h.C;
    r.b = normalize_b(2 * (h.B / h.C) + t_, r.a);
    return r;
}

bool QuadField::ideal_contains(const QIdeal& I, const NFElement& g) const {
    mpq_class x = g.coeff[0], y = g.coeff[1];
    if (x.get_den() != 1 || y.get_den() != 1) return false;
    mpz_class xi = x.get_num(), yi = y.get_num();
    if (yi % I.m != 0) return false;
    mpz_class beta = yi / I.m;
    mpz_class rem = xi - beta * I.m * ((I.b - t_) / 2);
    return rem % (I.m * I.a) == 0;
}

bool QuadField::ideal_equal(const QIdeal& x, const QIdeal& y) const { return x == y; }

std::optional<NFElement> QuadField::principal_generator(const QIdeal& I) const {
    mpz_class a = I.a, b = I.b;
    NFElement psi = nf_->one();
    auto emit = [&](const NFElement& track) -> NFElement {
        // O = track * I_prim  =>  I_prim = (1/track)
        NFElement inv = *nf_->inverse(track);
        NFElement g = nf_->mul_scalar(inv, mpq_class(I.m));
        return g;
    };
    if (a == 1) return emit(psi);
    long guard = 0;
    // reduce
    while (!is_reduced_ideal(a, b)) {
        rho_step(a, b, &psi);
        if (a == 1) return emit(psi);
        if (++guard > 100000) throw Error(Errc::search_exhausted, "ideal reduction did not terminate");
    }
    if (disc_ < 0) return a == 1 ? std::optional<NFElement>(emit(psi)) : std::nullopt;
    // real: walk the cycle
    mpz_class a0 = a, b0 = b;
    do {
        rho_step(a, b, &psi);
        if (a == 1) return emit(psi);
        if (++guard > 1000000) throw Error(Errc::search_exhausted, "cycle walk did not terminate");
    } while (!(a == a0 && b == b0));
    return std::nullopt;
}

std::pair<mpz_class, mpz_class> QuadField::class_key(const QIdeal& I) const {
    mpz_class a = I.a, b = I.b;
    long guard = 0;
    while (!is_reduced_ideal(a, b)) {
        rho_step(a, b, nullptr);
        if (++guard > 100000) throw Error(Errc::search_exhausted, "reduction did not terminate");
    }
    if (disc_ < 0) {
        // canonical tie-breaking
        mpz_class c = (b * b - disc_) / (4 * a);
        if (b < 0 && (a == c || b == -a)) b = -b;
        return {a, b};
    }
    // real: lexicographic minimum over the cycle
    mpz_class a0 = a, b0 = b, best_a = a, best_b = b;
    do {
        rho_step(a, b, nullptr);
        if (a < best_a || (a == best_a && b < best_b)) {
            best_a = a;
            best_b = b;
        }
        if (++guard > 1000000) throw Error(Errc::search_exhausted, "cycle walk did not terminate");
    } while (!(a == a0 && b == b0));
    return {best_a, best_b};
}

bool QuadField::is_principal_class(const QIdeal& I) const {
    return class_key(I) == class_key(ideal_one());
}

unsigned QuadField::compute_class_number() const {
    if (disc_ < 0) {
        unsigned count = 0;
        mpz_class absd = -disc_;
        // |b| <= a <= c, b = disc mod 2, 3a^2 <= |disc|... enumerate b then a | (b^2+|d|)/4
        for (mpz_class b = pmod(disc_, 2); 3 * b * b <= absd; b += 2) {
            mpz_class m4 = (b * b + absd);
            if (m4 % 4 != 0) continue;
            mpz_class m = m4 / 4; // = a*c
            for (mpz_class a = std::max<mpz_class>(b, 1); a * a <= m; ++a) {
                if (m % a != 0) continue;
                mpz_class c = m / a;
                // primitive check (automatic for fundamental discriminants)
                if (gcd0(gcd0(a, b), c) != 1) continue;
                if (b == 0 || a == b || a == c)
                    count += 1;
                else
                    count += 2; // +-b
            }
        }
        return count;
    }
    // real: cycles of reduced ideals
    return count_reduced_cycles_real();
}

unsigned QuadField::count_reduced_cycles_real() const {
    mpz_class s0 = isqrt(disc_);
    std::map<std::pair<mpz_class, mpz_class>, bool> seen;
    std::vector<std::pair<mpz_class, mpz_class>> all;
    for (mpz_class b = 1; b <= s0; ++b) {
        if (pmod(b, 2) != pmod(disc_, 2)) continue;
        mpz_class m4 = disc_ - b * b;
        if (m4 % 4 != 0) continue;
        mpz_class m = m4 / 4; // = a * |c|, positive
        for (mpz_class a = 1; a <= m; ++a) {
            if (m % a != 0) continue;
            if (b + 2 * a >= s0 + 1 && 2 * a <= b + s0) {
                all.push_back({a, b});
                seen[{a, b}] = false;
            }
        }
    }
    unsigned cycles = 0;
    for (auto& start : all) {
        if (seen[start]) continue;
        ++cycles;
        mpz_class a = start.first, b = start.second;
        long guard = 0;
        while (!seen[{a, b}]) {
            seen[{a, b}] = true;
            rho_step(a, b, nullptr);
            if (++guard > 1000000) throw Error(Errc::search_exhausted, "cycle enumeration stuck");
        }
    }
    return cycles;
}

unsigned QuadField::class_number() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!h_cache_) h_cache_ = compute_class_number();
    return *h_cache_;
}

bool QuadField::rejected_infinite() const { return D_ < 0 && class_number() == 1; }

NFElement QuadField::fundamental_unit() const {
    if (D_ < 0)
        throw Error(Errc::invalid_argument, "fundamental unit of an imaginary quadratic field");
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (unit_cache_) return *unit_cache_;
    }
    // continued fraction of omega = (t + sqrt(disc))/2: state alpha = (P + sqrt(disc))/Q
    mpz_class s0 = isqrt(disc_);
    mpz_class P = t_, Q = 2;
    mpz_class p_prev = 1, q_prev = 0;
    mpz_class a0;
    mpz_fdiv_q(a0.get_mpz_t(), mpz_class(P + s0).get_mpz_t(), Q.get_mpz_t());
    mpz_class p_cur = a0, q_cur = 1;
    long guard = 0;
    while (true) {
        // u = p - q*conj(omega) = (p - q t) + q omega
        NFElement u = elem(p_cur - q_cur * t_, q_cur);
        mpq_class nm = nf_->norm(u);
        if ((nm == 1 || nm == -1) && !(q_cur == 0)) {
            std::lock_guard<std::mutex> lock(cache_mutex_);
            unit_cache_ = u;
            return u;
        }
        P = a0 * Q - P;
        Q = (disc_ - P * P) / Q;
        mpz_fdiv_q(a0.get_mpz_t(), mpz_class(P + s0).get_mpz_t(), Q.get_mpz_t());
        mpz_class p_next = a0 * p_cur + p_prev;
        mpz_class q_next = a0 * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if (++guard > 10000000) throw Error(Errc::search_exhausted, "continued fraction did not close");
    }
}

NFElement QuadField::unit_normalize(NFElement g) const {
    if (D_ > 0) {
        NFElement u = fundamental_unit();
        NFElement uinv = *nf_->inverse(u);
        bool improved = true;
        while (improved) {
            improved = false;
            for (const NFElement& m : {u, uinv}) {
                NFElement cand = nf_->mul(g, m);
                if (nf_->coeff_height(cand) < nf_->coeff_height(g)) {
                    g = cand;
                    improved = true;
                }
            }
        }
    }
    // sign canonicalisation: first nonzero coefficient positive
    for (const auto& c : g.coeff) {
        if (c == 0) continue;
        if (c < 0) g = nf_->neg(g);
        break;
    }
    return g;
}

PrimeIdealData QuadField::prime_ideal_data(const mpz_class& q) const {
    if (!is_prime(q)) throw Error(Errc::invalid_argument, "prime_ideal_data needs a prime");
    auto [kind, f] = splitting_type(q);
    PrimeIdealData out;
    out.q = q;
    out.f = f;
    out.kind = kind;
    if (kind == SplitKind::Inert) {
        out.h = 1;
        out.gamma = elem(q, 0);
        out.root = 0;
        return out;
    }
    auto r = prime_root(q);
    if (!r) throw Error(Errc::invalid_argument, "no root of the defining polynomial mod " + q.get_str());
    out.root = *r;
    QIdeal I = ideal_from_prime(out);
    unsigned hk = class_number();
    for (unsigned m = 1; m <= hk; ++m) {
        if (hk % m != 0) continue;
        QIdeal Im = ideal_pow(I, m);
        auto g = principal_generator(Im);
        if (g) {
            out.h = m;
            out.gamma = unit_normalize(*g);
            mpq_class nm = nf_->norm(out.gamma);
            mpz_class expect = pow_z(q, static_cast<unsigned long>(f) * m);
            if (!(nm == mpq_class(expect) || nm == mpq_class(mpz_class(-expect))))
                throw Error(Errc::bad_generator_norm, "generator norm mismatch at q = " + q.get_str());
            return out;
        }
    }
    throw Error(Errc::search_exhausted, "no principal power found for prime above " + q.get_str());
}

PrimeIdealData QuadField::conjugate_prime(const PrimeIdealData& p) const {
    if (p.kind != SplitKind::Split) return p;
    PrimeIdealData out = p;
    out.root = pmod(t_ - p.root, p.q);
    out.gamma = nf_->apply_aut(p.gamma, 1);
    return out;
}

std::optional<PrimeIdealData> QuadField::next_split_prime(mpz_class& cursor) const {
    mpz_class q = cursor;
    while (true) {
        q = next_prime(q);
        if (splitting_type(q).first == SplitKind::Split) {
            cursor = q;
            return prime_ideal_data(q);
        }
    }
}

std::vector<PrimeIdealData> QuadField::primes_above(const mpz_class& q) const {
    std::vector<PrimeIdealData> out;
    PrimeIdealData p = prime_ideal_data(q);
    out.push_back(p);
    if (p.kind == SplitKind::Split) out.push_back(conjugate_prime(p));
    return out;
}

const std::vector<NFElement>& QuadField::unit_generators() const {
    if (D_ > 0) {
        NFElement u = fundamental_unit(); // caches under its own lock
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (unit_gens_cache_.empty()) unit_gens_cache_.push_back(u);
    }
    return unit_gens_cache_;
}

std::optional<NFElement> QuadField::torsion_unit() const {
    if (D_ == -1 || D_ == -3) return nf_->gen();
    return std::nullopt;
}

const std::vector<ImagSubfield>& QuadField::imaginary_subfields() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!imag_cache_built_) {
        if (D_ < 0) {
            ImagSubfield s;
            s.disc = disc_;
            s.sqrt_embedding = sqrt_disc_elem();
            s.hcf_contained = false; // h = 1 fields are rejected upstream
            s.sigma_L = {1, 0};
            imag_cache_.push_back(std::move(s));
        }
        imag_cache_built_ = true;
    }
    return imag_cache_;
}

std::vector<GeneratorData>
QuadField::generator_chain(const mpz_class& avoid_p, bool odd_only,
                           std::map<std::pair<mpz_class, mpz_class>, std::vector<unsigned>>* subgroup_out) const {
    unsigned hk = class_number();
    std::vector<GeneratorData> gens;
    // subgroup: class key -> exponent vector over gens, with an ideal representative
    std::map<std::pair<mpz_class, mpz_class>, std::vector<unsigned>> sub;
    std::map<std::pair<mpz_class, mpz_class>, QIdeal> reps;
    sub[class_key(ideal_one())] = {};
    reps[class_key(ideal_one())] = ideal_one();
    mpz_class q = 1;
    long guard = 0;
    while (sub.size() < hk) {
        q = next_prime(q);
        if (++guard > 100000) throw Error(Errc::gen_not_generating, "class group generators not found");
        if (q == avoid_p) continue;
        if (odd_only && q == 2) continue;
        auto [kind, f] = splitting_type(q);
        if (kind == SplitKind::Inert) continue;
        PrimeIdealData pd = prime_ideal_data(q);
        QIdeal I = ideal_from_prime(pd);
        auto key = class_key(I);
        if (sub.count(key)) continue;
        // order of I in Cl / <previous>
        unsigned hi = 1;
        QIdeal Im = I;
        while (!sub.count(class_key(Im))) {
            Im = ideal_mul(Im, I);
            ++hi;
            if (hi > hk) throw Error(Errc::gen_not_generating, "order computation overflow");
        }
        std::vector<unsigned> rel = sub[class_key(Im)];
        rel.resize(gens.size(), 0);
        // alpha = generator of I^hi * prod I_j^{-e_ij}
        QIdeal P = ideal_pow(I, hi);
        mpq_class denom = 1;
        for (size_t j = 0; j < gens.size(); ++j) {
            if (rel[j] == 0) continue;
            QIdeal Cj = ideal_conj(ideal_from_prime(gens[j].ideal));
            P = ideal_mul(P, ideal_pow(Cj, rel[j]));
            denom *= mpq_class(pow_z(gens[j].ideal.norm(), rel[j]));
        }
        auto alpha_raw = principal_generator(P);
        if (!alpha_raw) throw Error(Errc::gen_not_generating, "relation ideal not principal");
        NFElement alpha = nf_->mul_scalar(*alpha_raw, 1 / denom);
        GeneratorData gd;
        gd.ideal = pd;
        gd.order_in_quotient = hi;
        gd.rel_exponents = rel;
        gd.alpha = alpha;
        gens.push_back(std::move(gd));
        // extend subgroup: old * I^j for j = 0..hi-1
        std::map<std::pair<mpz_class, mpz_class>, std::vector<unsigned>> sub2;
        std::map<std::pair<mpz_class, mpz_class>, QIdeal> reps2;
        for (auto& [k, v] : sub) {
            QIdeal base = reps[k];
            QIdeal cur = base;
            for (unsigned j = 0; j < static_cast<unsigned>(gens.back().order_in_quotient); ++j) {
                std::vector<unsigned> vv = v;
                vv.resize(gens.size(), 0);
                vv[gens.size() - 1] = j;
                auto kk = class_key(cur);
                if (!sub2.count(kk)) {
                    sub2[kk] = vv;
                    reps2[kk] = cur;
                }
                cur = ideal_mul(cur, I);
            }
        }
        sub = std::move(sub2);
        reps = std::move(reps2);
    }
    if (subgroup_out) *subgroup_out = sub;
    return gens;
}

std::vector<GeneratorData> QuadField::generator_data(const mpz_class& avoid_p, bool odd_only) const {
    return generator_chain(avoid_p, odd_only, nullptr);
}

ClassDecomposition QuadField::decompose(const PrimeIdealData& prime,
                                        const std::vector<GeneratorData>& gens) const {
    ClassDecomposition out;
    QIdeal I = ideal_from_prime(prime);
    // unique representation with 0 <= e_i < order_in_quotient
    std::vector<unsigned> e(gens.size(), 0);
    while (true) {
        QIdeal P = I;
        mpq_class denom = 1;
        for (size_t j = 0; j < gens.size(); ++j) {
            if (e[j] == 0) continue;
            QIdeal Cj = ideal_conj(ideal_from_prime(gens[j].ideal));
            P = ideal_mul(P, ideal_pow(Cj, e[j]));
            denom *= mpq_class(pow_z(gens[j].ideal.norm(), e[j]));
        }
        auto g = principal_generator(P);
        if (g) {
            out.ok = true;
            out.exponents = e;
            out.alpha = nf_->mul_scalar(*g, 1 / denom);
            return out;
        }
        // next exponent vector
        size_t i = 0;
        while (i < e.size()) {
            if (++e[i] < gens[i].order_in_quotient) break;
            e[i] = 0;
            ++i;
        }
        if (i == e.size()) break;
    }
    return out;
}

std::vector<std::vector<PrimeIdealData>> QuadField::gen_sets() const {
    if (class_number() == 1) return {{}};
    auto gens = generator_data(0, /*odd_only=*/true);
    std::vector<PrimeIdealData> gen;
    for (auto& g : gens) gen.push_back(g.ideal);
    return {gen};
}

std::optional<PrimeIdealData> QuadField::nonprincipal_prime() const {
    if (class_number() == 1) return std::nullopt;
    mpz_class q = 1;
    long guard = 0;
    while (++guard < 100000) {
        q = next_prime(q);
        auto [kind, f] = splitting_type(q);
        if (kind == SplitKind::Inert) continue;
        PrimeIdealData pd = prime_ideal_data(q);
        if (pd.h > 1) return pd;
    }
    return std::nullopt;
}

BQForm QuadField::reduce_form_imag(BQForm f) {
    // Gauss reduction of a positive definite form, tracking the transformation.
    auto apply_T = [&](const mpz_class& k) {
        // (a, b, c) -> (a, b + 2ka, a k^2 + b k + c); matrix column op
        f.c = f.a * k * k + f.b * k + f.c;
        f.b = f.b + 2 * k * f.a;
        if (f.track) {
            // U <- U * [[1, k], [0, 1]]
            f.u12 = f.u11 * k + f.u12;
            f.u22 = f.u21 * k + f.u22;
        }
    };
    auto apply_S = [&]() {
        // (a, b, c) -> (c, -b, a)
        std::swap(f.a, f.c);
        f.b = -f.b;
        if (f.track) {
            // U <- U * [[0, -1], [1, 0]]
            mpz_class v11 = f.u12, v12 = -f.u11, v21 = f.u22, v22 = -f.u21;
            f.u11 = v11;
            f.u12 = v12;
            f.u21 = v21;
            f.u22 = v22;
        }
    };
    long guard = 0;
    while (true) {
        if (++guard > 100000) throw Error(Errc::search_exhausted, "form reduction stuck");
        // normalize b into (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            mpz_class k;
            mpz_class twoa = 2 * f.a;
            mpz_class r = f.b % twoa;
            if (r < 0) r += twoa;
            if (r > f.a) r -= twoa;
            k = (r - f.b) / twoa;
            apply_T(k);
        }
        if (f.a > f.c) {
            apply_S();
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            apply_S();
            continue;
        }
        break;
    }
    return f;
}

std::vector<BQForm> QuadField::reduced_forms_imag() const {
    if (disc_ > 0) throw Error(Errc::invalid_argument, "imaginary enumeration on a real field");
    std::vector<BQForm> out;
    mpz_class absd = -disc_;
    for (mpz_class b = pmod(disc_, 2); 3 * b * b <= absd; b += 2) {
        mpz_class m4 = (b * b + absd);
        if (m4 % 4 != 0) continue;
        mpz_class m = m4 / 4;
        for (mpz_class a = std::max<mpz_class>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            mpz_class c = m / a;
            if (gcd0(gcd0(a, b), c) != 1) continue;
            out.push_back(BQForm{a, b, c});
            if (b != 0 && a != b && a != c) out.push_back(BQForm{a, -b, c});
        }
    }
    return out;
}

} // namespace isogeny
