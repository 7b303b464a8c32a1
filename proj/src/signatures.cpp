#include "isogeny/signatures.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>
#include <set>

namespace isogeny {

SignatureType classify_signature(const Signature& eps) {
    bool has6 = false, has48 = false, constant = true;
    for (size_t i = 0; i < eps.size(); ++i) {
        int a = eps[i];
        if (a == 6) has6 = true;
        if (a == 4 || a == 8) has48 = true;
        if (a != eps[0]) constant = false;
    }
    if (has6 && has48) return SignatureType::Mixed;
    if (has6) return constant ? SignatureType::Type2 : SignatureType::QuarticNonconstant;
    if (has48) return constant ? SignatureType::SexticConstant : SignatureType::SexticNonconstant;
    return constant ? SignatureType::Type1 : SignatureType::QuadraticNonconstant;
}

bool is_constant_signature(const Signature& eps) {
    for (int a : eps)
        if (a != eps[0]) return false;
    return true;
}

Signature complement_signature(const Signature& eps) {
    Signature r = eps;
    for (int& a : r) a = 12 - a;
    return r;
}

Signature signature_compose(const DefiningField& nf, const Signature& eps, size_t aut_j) {
    Signature r(eps.size());
    for (size_t i = 0; i < eps.size(); ++i) r[i] = eps[nf.compose_aut(i, aut_j)];
    return r;
}

std::vector<Signature> signature_orbit(const DefiningField& nf, const Signature& eps) {
    std::set<Signature> orbit;
    std::vector<Signature> queue{eps};
    orbit.insert(eps);
    while (!queue.empty()) {
        Signature cur = queue.back();
        queue.pop_back();
        std::vector<Signature> nbrs;
        nbrs.push_back(complement_signature(cur));
        for (size_t j = 0; j < nf.aut_count(); ++j) nbrs.push_back(signature_compose(nf, cur, j));
        for (auto& n : nbrs) {
            if (orbit.insert(n).second) queue.push_back(n);
        }
    }
    return std::vector<Signature>(orbit.begin(), orbit.end());
}

std::optional<mpz_class> is_type3(const Signature& eps, const FieldContext& field) {
    for (const auto& sub : field.imaginary_subfields()) {
        Signature t3(eps.size(), 0);
        for (size_t i = 0; i < t3.size(); ++i)
            if (sub.sigma_L[i]) t3[i] = 12;
        if (eps == t3 || eps == complement_signature(t3)) return sub.disc;
    }
    return std::nullopt;
}

std::vector<SignatureRep> enumerate_generic_signatures(const FieldContext& field) {
    const DefiningField& nf = field.nf();
    size_t d = nf.aut_count();
    static const int values[5] = {0, 4, 6, 8, 12};
    std::set<Signature> handled;
    std::vector<SignatureRep> out;
    std::vector<size_t> idx(d, 0);
    while (true) {
        Signature eps(d);
        for (size_t i = 0; i < d; ++i) eps[i] = values[idx[i]];
        if (!handled.count(eps)) {
            auto orbit = signature_orbit(nf, eps);
            for (auto& o : orbit) handled.insert(o);
            Signature rep = orbit.front(); // set order: lexicographic minimum
            SignatureType t = classify_signature(rep);
            bool excluded = (t == SignatureType::Type1) || (t == SignatureType::Type2);
            if (!excluded) {
                // Type 3 orbits route through their own bound
                for (auto& o : orbit)
                    if (is_type3(o, field)) excluded = true;
            }
            if (!excluded) out.push_back({rep, t});
        }
        size_t i = 0;
        while (i < d) {
            if (++idx[i] < 5) break;
            idx[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    std::sort(out.begin(), out.end(),
              [](const SignatureRep& a, const SignatureRep& b) { return a.eps < b.eps; });
    return out;
}

std::vector<std::pair<Signature, mpz_class>> type3_signatures(const FieldContext& field) {
    std::vector<std::pair<Signature, mpz_class>> out;
    size_t d = field.nf().aut_count();
    for (const auto& sub : field.imaginary_subfields()) {
        Signature t3(d, 0);
        for (size_t i = 0; i < d; ++i)
            if (sub.sigma_L[i]) t3[i] = 12;
        out.push_back({t3, sub.disc});
        out.push_back({complement_signature(t3), sub.disc});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool congruence_filter(const mpz_class& p, SignatureType stype, const FieldContext& field) {
    if (p < 17) return true;
    bool needs_split_or_ramify = false;
    switch (stype) {
    case SignatureType::Type1: return true;
    case SignatureType::QuadraticNonconstant: needs_split_or_ramify = true; break;
    case SignatureType::SexticConstant:
        if (p % 3 != 2) return false;
        break;
    case SignatureType::SexticNonconstant:
        if (p % 3 != 2) return false;
        needs_split_or_ramify = true;
        break;
    case SignatureType::Type2:
        if (p % 4 != 3) return false;
        break;
    case SignatureType::QuarticNonconstant:
        if (p % 4 != 3) return false;
        needs_split_or_ramify = true;
        break;
    case SignatureType::Mixed:
        if (p % 12 != 1) return false;
        needs_split_or_ramify = true;
        break;
    }
    if (needs_split_or_ramify) {
        auto info = field.splitting(p);
        if (!info) return true; // unknown splitting: keep (superset stays sound)
        if (info->kind == SplitKind::Inert) return false;
    }
    return true;
}

} // namespace isogeny
