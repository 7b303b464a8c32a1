#include "curve_counts.hpp"

namespace testsupport {

namespace {

// polynomial arithmetic over F_p on digit vectors
std::vector<unsigned> poly_mul_mod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                   const std::vector<unsigned>& m, unsigned p) {
    std::vector<unsigned> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce by monic m
    size_t k = m.size() - 1;
    for (size_t d = r.size(); d-- > k;) {
        unsigned c = r[d];
        if (c == 0) continue;
        r[d] = 0;
        for (size_t i = 0; i < k; ++i) r[d - k + i] = (r[d - k + i] + c * (p - m[i] % p)) % p;
    }
    r.resize(k);
    return r;
}

bool is_irreducible(const std::vector<unsigned>& m, unsigned p) {
    // brute force: no roots and no factor of degree <= k/2 via trial products
    // (k <= 5 here, so trial division by all monic polynomials is fine)
    unsigned k = static_cast<unsigned>(m.size()) - 1;
    if (k == 1) return true;
    // enumerate monic divisors of degree 1..k/2
    for (unsigned d = 1; 2 * d <= k; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (unsigned idx = 0; idx < count; ++idx) {
            std::vector<unsigned> g(d + 1, 0);
            unsigned t = idx;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[d] = 1;
            // remainder of m by g
            std::vector<unsigned> r(m.begin(), m.end());
            for (size_t dd = r.size(); dd-- > d;) {
                unsigned c = r[dd];
                if (c == 0) continue;
                r[dd] = 0;
                for (unsigned i = 0; i <= d; ++i) {
                    size_t pos = dd - d + i;
                    r[pos] = (r[pos] + c * (p - g[i] % p) + (i == d ? c : 0)) % p;
                }
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i)
                if (r[i] != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

} // namespace

void SmallField::build() {
    // find an irreducible monic polynomial of degree k over F_p
    std::vector<unsigned> m(k_ + 1, 0);
    m[k_] = 1;
    if (k_ == 1) {
        m[0] = 0;
    } else {
        unsigned count = 1;
        for (unsigned i = 0; i < k_; ++i) count *= p_;
        bool found = false;
        for (unsigned idx = 0; idx < count && !found; ++idx) {
            unsigned t = idx;
            for (unsigned i = 0; i < k_; ++i) {
                m[i] = t % p_;
                t /= p_;
            }
            if (is_irreducible(m, p_)) found = true;
        }
        if (!found) throw std::runtime_error("no irreducible polynomial found");
    }

    auto decode = [&](unsigned x) {
        std::vector<unsigned> v(k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            v[i] = x % p_;
            x /= p_;
        }
        return v;
    };
    auto encode = [&](const std::vector<unsigned>& v) {
        unsigned x = 0;
        for (unsigned i = k_; i-- > 0;) x = x * p_ + (i < v.size() ? v[i] : 0);
        return x;
    };

    add_.assign(n_ * n_, 0);
    sub_.assign(n_ * n_, 0);
    mul_.assign(n_ * n_, 0);
    inv_.assign(n_, 0);
    trace_.assign(n_, 0);
    for (unsigned a = 0; a < n_; ++a) {
        auto va = decode(a);
        for (unsigned b = 0; b < n_; ++b) {
            auto vb = decode(b);
            std::vector<unsigned> s(k_), d(k_);
            for (unsigned i = 0; i < k_; ++i) {
                s[i] = (va[i] + vb[i]) % p_;
                d[i] = (va[i] + p_ - vb[i]) % p_;
            }
            add_[a * n_ + b] = encode(s);
            sub_[a * n_ + b] = encode(d);
            mul_[a * n_ + b] = encode(poly_mul_mod(va, vb, m, p_));
        }
    }
    for (unsigned a = 1; a < n_; ++a)
        for (unsigned b = 1; b < n_; ++b)
            if (mul_[a * n_ + b] == 1) inv_[a] = b;
    // absolute trace: Tr(x) = x + x^p + ... + x^{p^{k-1}} (lands in F_p)
    for (unsigned a = 0; a < n_; ++a) {
        unsigned acc = 0, cur = a;
        for (unsigned i = 0; i < k_; ++i) {
            acc = add_[acc * n_ + cur];
            // cur = cur^p
            unsigned np = cur;
            for (unsigned j = 1; j < p_; ++j) np = mul_[np * n_ + cur];
            cur = np;
        }
        trace_[a] = acc; // an element of F_p embedded as a constant
    }
}

std::set<long> brute_force_traces(unsigned q, unsigned f) {
    unsigned p = q;
    SmallField F(p, f);
    unsigned n = F.order();
    std::set<long> traces;

    // quadratic character table for odd characteristic
    std::vector<int> chi(n, -1);
    if (p != 2) {
        for (unsigned y = 0; y < n; ++y) chi[F.mul(y, y)] = 1;
        chi[0] = 0;
    }

    auto count_points = [&](unsigned a1, unsigned a2, unsigned a3, unsigned a4, unsigned a6) -> long {
        long count = 1; // point at infinity
        for (unsigned x = 0; x < n; ++x) {
            unsigned x2 = F.mul(x, x);
            unsigned x3 = F.mul(x2, x);
            unsigned rhs = F.add(F.add(x3, F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
            unsigned b = F.add(F.mul(a1, x), a3);
            if (p != 2) {
                // complete the square: (2y + b)^2 = 4 rhs + b^2
                unsigned four = F.add(F.add(1, 1), F.add(1, 1));
                unsigned disc = F.add(F.mul(four, rhs), F.mul(b, b));
                count += 1 + chi[disc];
            } else {
                if (b == 0) {
                    count += 1; // y^2 = rhs has exactly one solution
                } else {
                    // y^2 + by = rhs: 2 solutions iff Tr(rhs / b^2) = 0
                    unsigned binv = F.inv(b);
                    unsigned t = F.mul(F.mul(rhs, binv), binv);
                    count += (F.abs_trace(t) == 0) ? 2 : 0;
                }
            }
        }
        return count;
    };

    auto discriminant_nonzero = [&](unsigned a1, unsigned a2, unsigned a3, unsigned a4,
                                    unsigned a6) -> bool {
        unsigned b2 = F.add(F.mul(a1, a1), F.add(F.add(a2, a2), F.add(a2, a2)));
        unsigned b4 = F.add(F.add(a4, a4), F.mul(a1, a3));
        unsigned b6 = F.add(F.mul(a3, a3), F.add(F.add(a6, a6), F.add(a6, a6)));
        unsigned a1a3 = F.mul(a1, F.mul(a3, a4));
        unsigned b8 = F.add(F.add(F.mul(F.mul(a1, a1), a6), F.mul(F.add(F.add(a6, a6), F.add(a6, a6)), a2)),
                            F.sub(F.mul(a2, F.mul(a3, a3)), F.add(a1a3, F.mul(a4, a4))));
        // delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
        auto scale = [&](unsigned v, unsigned times) {
            unsigned acc = 0;
            for (unsigned i = 0; i < times; ++i) acc = F.add(acc, v);
            return acc;
        };
        unsigned t1 = F.mul(F.mul(b2, b2), b8);
        unsigned t2 = scale(F.mul(F.mul(b4, b4), b4), 8);
        unsigned t3 = scale(F.mul(b6, b6), 27);
        unsigned t4 = scale(F.mul(F.mul(b2, b4), b6), 9);
        unsigned delta = F.sub(F.sub(F.sub(t4, t1), t2), t3);
        return delta != 0;
    };

    if (p >= 5) {
        // every curve has a short Weierstrass model in characteristic >= 5
        for (unsigned a4 = 0; a4 < n; ++a4)
            for (unsigned a6 = 0; a6 < n; ++a6) {
                if (!discriminant_nonzero(0, 0, 0, a4, a6)) continue;
                long N = count_points(0, 0, 0, a4, a6);
                traces.insert(static_cast<long>(n) + 1 - N);
            }
        return traces;
    }
    for (unsigned a1 = 0; a1 < n; ++a1)
        for (unsigned a2 = 0; a2 < n; ++a2)
            for (unsigned a3 = 0; a3 < n; ++a3)
                for (unsigned a4 = 0; a4 < n; ++a4)
                    for (unsigned a6 = 0; a6 < n; ++a6) {
                        if (!discriminant_nonzero(a1, a2, a3, a4, a6)) continue;
                        long N = count_points(a1, a2, a3, a4, a6);
                        traces.insert(static_cast<long>(n) + 1 - N);
                    }
    return traces;
}

} // namespace testsupport
