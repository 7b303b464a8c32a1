#include "isogeny/polyq.hpp"

#include "isogeny/errors.hpp"

#include <algorithm>

namespace isogeny {
namespace polyq {

QPoly trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int degree(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

bool is_zero(const QPoly& p) { return degree(p) < 0; }

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(r);
}

QPoly neg(const QPoly& a) {
    QPoly r = a;
    for (auto& c : r) c = -c;
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(r);
}

QPoly scale(const QPoly& a, const mpq_class& c) {
    QPoly r = a;
    for (auto& x : r) x *= c;
    return trim(r);
}

QPoly mod_monic(QPoly a, const ZPoly& f) {
    int d = static_cast<int>(f.size()) - 1;
    a = trim(std::move(a));
    while (degree(a) >= d) {
        int da = degree(a);
        mpq_class lead = a[da];
        // subtract lead * x^(da-d) * f
        for (int i = 0; i <= d; ++i) a[da - d + i] -= lead * mpq_class(f[i]);
        a = trim(std::move(a));
    }
    return a;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
    mpq_class r = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) r = r * x + p[i];
    return r;
}

mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m) {
    size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

int rank_bareiss(std::vector<std::vector<mpz_class>> m) {
    if (m.empty() || m[0].empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    mpz_class prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

int rank_mod_p(const std::vector<std::vector<mpz_class>>& m_in, const mpz_class& p) {
    if (m_in.empty() || m_in[0].empty()) return 0;
    size_t rows = m_in.size(), cols = m_in[0].size();
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            m[i][j] = m_in[i][j] % p;
            if (m[i][j] < 0) m[i][j] += p;
        }
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), m[r][c].get_mpz_t(), p.get_mpz_t());
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpz_class f = m[i][c];
            for (size_t j = c; j < cols; ++j) {
                m[i][j] = (m[i][j] - f * m[r][j]) % p;
                if (m[i][j] < 0) m[i][j] += p;
            }
        }
        ++r;
    }
    return static_cast<int>(r);
}

mpq_class resultant_monic(const ZPoly& f, const QPoly& g_in) {
    int d = static_cast<int>(f.size()) - 1;
    if (d < 1 || f[d] != 1) throw Error(Errc::non_monic, "resultant requires monic integer f");
    QPoly g = trim(g_in);
    int e = degree(g);
    if (e < 0) return mpq_class(0);
    if (e == 0) {
        mpq_class r = g[0];
        mpq_class out = 1;
        for (int i = 0; i < d; ++i) out *= r;
        return out;
    }
    // clear denominators: g = G / den
    mpz_class den = 1;
    for (const auto& c : g) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        den = l;
    }
    ZPoly G(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
        mpq_class c = g[i] * mpq_class(den);
        G[i] = c.get_num(); // exact integer
    }
    // Sylvester matrix of f (degree d) and G (degree e): (d+e) x (d+e)
    size_t n = static_cast<size_t>(d + e);
    std::vector<std::vector<mpz_class>> S(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= d; ++j) S[i][i + j] = f[d - j];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= e; ++j) S[e + i][i + j] = G[e - j];
    mpz_class det = det_bareiss(std::move(S));
    // Res(f, G) = den^d * Res(f, g)
    mpq_class result(det);
    mpq_class scale(den);
    mpq_class denpow = 1;
    for (int i = 0; i < d; ++i) denpow *= scale;
    result /= denpow;
    result.canonicalize();
    return result;
}

} // namespace polyq
} // namespace isogeny
