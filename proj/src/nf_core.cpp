#include "isogeny/nf_core.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>
#include <sstream>

namespace isogeny {

std::string NFElement::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coeff.size(); ++i) {
        if (i) os << ", ";
        os << coeff[i].get_str();
    }
    os << "]";
    return os.str();
}

DefiningField::DefiningField(ZPoly f, mpz_class discriminant,
                             std::vector<std::vector<mpq_class>> integral_basis,
                             std::vector<QPoly> automorphisms, bool is_galois)
    : degree_(static_cast<int>(f.size()) - 1), poly_(std::move(f)), disc_(std::move(discriminant)),
      integral_basis_(std::move(integral_basis)), automorphisms_(std::move(automorphisms)),
      is_galois_(is_galois) {
    validate_and_build();
}

void DefiningField::validate_and_build() {
    if (degree_ < 1) throw Error(Errc::invalid_argument, "defining polynomial must have degree >= 1");
    if (poly_[degree_] != 1) throw Error(Errc::non_monic, "defining polynomial not monic");
    if (disc_ == 0) throw Error(Errc::invalid_argument, "zero discriminant");

    if (automorphisms_.empty()) automorphisms_.push_back(QPoly{mpq_class(0), mpq_class(1)});
    for (auto& s : automorphisms_) s = polyq::trim(polyq::mod_monic(std::move(s), poly_));
    // entry 0 must be the identity
    QPoly id = polyq::trim(polyq::mod_monic(QPoly{mpq_class(0), mpq_class(1)}, poly_));
    if (automorphisms_[0] != id)
        throw Error(Errc::invalid_argument, "automorphism 0 must be the identity");

    // f(s(theta)) = 0 for every automorphism
    for (size_t i = 0; i < automorphisms_.size(); ++i) {
        QPoly fq(poly_.size());
        for (size_t j = 0; j < poly_.size(); ++j) fq[j] = mpq_class(poly_[j]);
        QPoly img = compose_mod(fq, automorphisms_[i]);
        if (!polyq::is_zero(img))
            throw Error(Errc::aut_not_root, "automorphism " + std::to_string(i) + " is not a root map");
    }
    if (is_galois_ && static_cast<int>(automorphisms_.size()) != degree_)
        throw Error(Errc::non_galois,
                    "expected " + std::to_string(degree_) + " automorphisms, got " +
                        std::to_string(automorphisms_.size()));

    // composition table; also checks closure
    size_t n = automorphisms_.size();
    comp_table_.assign(n, std::vector<size_t>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            QPoly comp = compose_mod(automorphisms_[i], automorphisms_[j]);
            bool found = false;
            for (size_t k = 0; k < n; ++k) {
                if (polyq::trim(automorphisms_[k]) == comp) {
                    comp_table_[i][j] = k;
                    found = true;
                    break;
                }
            }
            if (!found) throw Error(Errc::non_galois, "automorphism list not closed under composition");
        }
    }

    // integral basis: default to the power basis
    if (integral_basis_.empty()) {
        integral_basis_.assign(degree_, std::vector<mpq_class>(degree_, mpq_class(0)));
        for (int i = 0; i < degree_; ++i) integral_basis_[i][i] = 1;
    }
    if (static_cast<int>(integral_basis_.size()) != degree_)
        throw Error(Errc::invalid_argument, "integral basis must have d vectors");
    for (auto& v : integral_basis_)
        if (static_cast<int>(v.size()) != degree_)
            throw Error(Errc::invalid_argument, "integral basis vector of wrong length");

    // invert the basis matrix (columns = basis vectors in power basis)
    int d = degree_;
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(2 * d, mpq_class(0)));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[i][j] = integral_basis_[j][i];
        m[i][d + i] = 1;
    }
    for (int c = 0; c < d; ++c) {
        int piv = c;
        while (piv < d && m[piv][c] == 0) ++piv;
        if (piv == d) throw Error(Errc::invalid_argument, "integral basis is singular");
        std::swap(m[c], m[piv]);
        mpq_class inv = 1 / m[c][c];
        for (int j = 0; j < 2 * d; ++j) m[c][j] *= inv;
        for (int i = 0; i < d; ++i) {
            if (i == c || m[i][c] == 0) continue;
            mpq_class f2 = m[i][c];
            for (int j = 0; j < 2 * d; ++j) m[i][j] -= f2 * m[c][j];
        }
    }
    basis_inverse_.assign(d, std::vector<mpq_class>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) basis_inverse_[i][j] = m[i][d + j];
}

QPoly DefiningField::compose_mod(const QPoly& a, const QPoly& s) const {
    // a(s(x)) mod f, Horner in the quotient ring
    QPoly result; // zero
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        result = polyq::mod_monic(polyq::mul(result, s), poly_);
        if (a[i] != 0) result = polyq::add(result, QPoly{a[i]});
    }
    return polyq::trim(result);
}

NFElement DefiningField::zero() const { return NFElement{std::vector<mpq_class>(degree_, mpq_class(0))}; }

NFElement DefiningField::one() const { return from_rational(1); }

NFElement DefiningField::from_rational(const mpq_class& c) const {
    NFElement e = zero();
    e.coeff[0] = c;
    return e;
}

NFElement DefiningField::gen() const {
    if (degree_ == 1) {
        // theta = root of the linear polynomial
        return from_rational(mpq_class(-poly_[0]));
    }
    NFElement e = zero();
    e.coeff[1] = 1;
    return e;
}

NFElement DefiningField::from_coeffs(std::vector<mpq_class> c) const {
    if (static_cast<int>(c.size()) > degree_) {
        QPoly q(c.begin(), c.end());
        q = polyq::mod_monic(std::move(q), poly_);
        c.assign(q.begin(), q.end());
    }
    c.resize(degree_, mpq_class(0));
    return NFElement{std::move(c)};
}

NFElement DefiningField::add(const NFElement& a, const NFElement& b) const {
    NFElement r = a;
    for (int i = 0; i < degree_; ++i) r.coeff[i] += b.coeff[i];
    return r;
}

NFElement DefiningField::sub(const NFElement& a, const NFElement& b) const {
    NFElement r = a;
    for (int i = 0; i < degree_; ++i) r.coeff[i] -= b.coeff[i];
    return r;
}

NFElement DefiningField::neg(const NFElement& a) const {
    NFElement r = a;
    for (auto& c : r.coeff) c = -c;
    return r;
}

NFElement DefiningField::mul(const NFElement& a, const NFElement& b) const {
    QPoly pa(a.coeff.begin(), a.coeff.end()), pb(b.coeff.begin(), b.coeff.end());
    QPoly pr = polyq::mod_monic(polyq::mul(pa, pb), poly_);
    pr.resize(degree_, mpq_class(0));
    return NFElement{std::vector<mpq_class>(pr.begin(), pr.end())};
}

NFElement DefiningField::mul_scalar(const NFElement& a, const mpq_class& c) const {
    NFElement r = a;
    for (auto& x : r.coeff) x *= c;
    return r;
}

NFElement DefiningField::pow(const NFElement& a, const mpz_class& e) const {
    if (e < 0) throw Error(Errc::invalid_argument, "negative exponent in pow");
    NFElement base = a, result = one();
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return result;
}

std::optional<NFElement> DefiningField::inverse(const NFElement& a) const {
    if (is_zero(a)) return std::nullopt;
    // extended Euclid of a (as polynomial) and f over Q
    QPoly r0(poly_.size());
    for (size_t i = 0; i < poly_.size(); ++i) r0[i] = mpq_class(poly_[i]);
    QPoly r1(a.coeff.begin(), a.coeff.end());
    r1 = polyq::trim(r1);
    QPoly s0{}, s1{mpq_class(1)};
    while (!polyq::is_zero(r1)) {
        // divide r0 by r1
        QPoly q{};
        QPoly rem = r0;
        int d1 = polyq::degree(r1);
        mpq_class lead = r1[d1];
        while (polyq::degree(rem) >= d1) {
            int dr = polyq::degree(rem);
            mpq_class c = rem[dr] / lead;
            QPoly t(dr - d1 + 1, mpq_class(0));
            t[dr - d1] = c;
            q = polyq::add(q, t);
            rem = polyq::sub(rem, polyq::mul(t, r1));
        }
        QPoly s2 = polyq::sub(s0, polyq::mul(q, s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd; must be a nonzero constant since f is irreducible and a != 0
    if (polyq::degree(r0) != 0) return std::nullopt;
    QPoly inv = polyq::scale(s0, 1 / r0[0]);
    inv = polyq::mod_monic(std::move(inv), poly_);
    inv.resize(degree_, mpq_class(0));
    return NFElement{std::vector<mpq_class>(inv.begin(), inv.end())};
}

bool DefiningField::is_rational(const NFElement& a) const {
    for (int i = 1; i < degree_; ++i)
        if (a.coeff[i] != 0) return false;
    return true;
}

bool DefiningField::is_zero(const NFElement& a) const {
    for (auto& c : a.coeff)
        if (c != 0) return false;
    return true;
}

mpq_class DefiningField::norm(const NFElement& a) const {
    QPoly g(a.coeff.begin(), a.coeff.end());
    return polyq::resultant_monic(poly_, g);
}

mpq_class DefiningField::trace(const NFElement& a) const {
    // Sum of conjugates; valid here because embeddings are realised as
    // automorphisms (Galois fields only).
    NFElement s = zero();
    for (size_t i = 0; i < automorphisms_.size(); ++i) s = add(s, apply_aut(a, i));
    if (!is_rational(s)) throw Error(Errc::non_galois, "trace via automorphisms on non-Galois field");
    return s.coeff[0];
}

NFElement DefiningField::apply_aut(const NFElement& a, size_t aut_index) const {
    if (aut_index >= automorphisms_.size())
        throw Error(Errc::index_out_of_range, "automorphism index " + std::to_string(aut_index));
    QPoly pa(a.coeff.begin(), a.coeff.end());
    QPoly img = compose_mod(pa, automorphisms_[aut_index]);
    img.resize(degree_, mpq_class(0));
    return NFElement{std::vector<mpq_class>(img.begin(), img.end())};
}

NFElement DefiningField::pow_signature(const NFElement& a, const Signature& eps) const {
    if (!is_galois_ && degree_ > 1)
        throw Error(Errc::non_galois, "signature powers need embeddings realised as automorphisms");
    if (eps.size() != automorphisms_.size())
        throw Error(Errc::signature_length, "signature length " + std::to_string(eps.size()) +
                                                " vs degree " + std::to_string(automorphisms_.size()));
    NFElement result = one();
    for (size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] == 0) continue;
        NFElement img = apply_aut(a, i);
        result = mul(result, pow(img, eps[i]));
    }
    return result;
}

std::vector<mpq_class> DefiningField::integral_coordinates(const NFElement& a) const {
    std::vector<mpq_class> out(degree_, mpq_class(0));
    for (int i = 0; i < degree_; ++i) {
        for (int j = 0; j < degree_; ++j) out[i] += basis_inverse_[i][j] * a.coeff[j];
        out[i].canonicalize();
    }
    return out;
}

bool DefiningField::is_integral(const NFElement& a) const {
    for (const auto& c : integral_coordinates(a))
        if (c.get_den() != 1) return false;
    return true;
}

mpz_class DefiningField::coeff_height(const NFElement& a) const {
    mpz_class h = 0;
    for (const auto& c : a.coeff) {
        mpz_class n = abs_z(c.get_num()), d = abs_z(c.get_den());
        if (n > h) h = n;
        if (d > h) h = d;
    }
    return h;
}

const char* signature_type_name(SignatureType t) {
    switch (t) {
    case SignatureType::Type1: return "type-1";
    case SignatureType::QuadraticNonconstant: return "quadratic-nonconstant";
    case SignatureType::SexticConstant: return "sextic-constant";
    case SignatureType::SexticNonconstant: return "sextic-nonconstant";
    case SignatureType::Type2: return "type-2";
    case SignatureType::QuarticNonconstant: return "quartic-nonconstant";
    case SignatureType::Mixed: return "mixed";
    }
    return "unknown";
}

std::string signature_str(const Signature& eps) {
    std::string s = "(";
    for (size_t i = 0; i < eps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(eps[i]);
    }
    s += ")";
    return s;
}

} // namespace isogeny
