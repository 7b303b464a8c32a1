#include "isogeny/galois_backend.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"
#include "isogeny/residue.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include "json.hpp"

namespace isogeny {

namespace {

using nlohmann::json;

mpz_class parse_int(const json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw Error(Errc::parse, "expected integer, got " + j.dump());
}

mpq_class parse_rat(const json& j) {
    if (j.is_object()) {
        mpz_class num = parse_int(j.at("num"));
        mpz_class den = j.contains("den") ? parse_int(j.at("den")) : mpz_class(1);
        if (den == 0) throw Error(Errc::parse, "zero denominator");
        mpq_class r(num, den);
        r.canonicalize();
        return r;
    }
    return mpq_class(parse_int(j));
}

std::vector<mpq_class> parse_rat_vector(const json& j) {
    if (!j.is_array()) throw Error(Errc::parse, "expected array of rationals");
    std::vector<mpq_class> out;
    for (const auto& e : j) out.push_back(parse_rat(e));
    return out;
}

// reduce an NFElement mod (q, theta - r): evaluation of the coefficient
// vector at r over F_q; denominators must be coprime to q
std::optional<mpz_class> eval_mod_root(const NFElement& e, const mpz_class& r, const mpz_class& q) {
    mpz_class acc = 0, rp = 1;
    for (const auto& c : e.coeff) {
        mpz_class den = c.get_den();
        auto dinv = invmod(den % q, q);
        if (!dinv) return std::nullopt;
        mpz_class term = (c.get_num() % q) * *dinv % q;
        acc = (acc + term * rp) % q;
        rp = rp * r % q;
    }
    if (acc < 0) acc += q;
    return acc;
}

} // namespace

std::unique_ptr<GaloisField> GaloisField::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse, "cannot open field data file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_from_string(text);
}

std::unique_ptr<GaloisField> GaloisField::load_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(Errc::parse, e.what());
    }
    auto gf = std::unique_ptr<GaloisField>(new GaloisField());
    try {
        gf->label_ = j.value("label", std::string("unnamed"));
        int degree = j.at("degree").get<int>();
        ZPoly f;
        for (const auto& c : j.at("defining_polynomial")) f.push_back(parse_int(c));
        if (static_cast<int>(f.size()) != degree + 1)
            throw Error(Errc::parse, "defining polynomial length does not match degree");
        if (f.back() != 1) throw Error(Errc::non_monic, "defining polynomial");
        mpz_class disc = parse_int(j.at("discriminant"));

        std::vector<std::vector<mpq_class>> basis;
        if (j.contains("integral_basis"))
            for (const auto& v : j.at("integral_basis")) basis.push_back(parse_rat_vector(v));

        std::vector<QPoly> auts;
        for (const auto& v : j.at("automorphisms")) {
            auto coeffs = parse_rat_vector(v);
            auts.push_back(QPoly(coeffs.begin(), coeffs.end()));
        }
        if (static_cast<int>(auts.size()) != degree)
            throw Error(Errc::non_galois, "automorphism count " + std::to_string(auts.size()) +
                                              " != degree " + std::to_string(degree));

        gf->nf_ = std::make_unique<DefiningField>(std::move(f), disc, std::move(basis),
                                                  std::move(auts), true);

        if (j.contains("unit_generators"))
            for (const auto& v : j.at("unit_generators"))
                gf->units_.push_back(gf->nf_->from_coeffs(parse_rat_vector(v)));
        if (j.contains("torsion_unit"))
            gf->torsion_ = gf->nf_->from_coeffs(parse_rat_vector(j.at("torsion_unit")));

        gf->h_ = j.value("class_number", 1u);

        auto parse_prime_entry = [&](const json& e, bool require_split) {
            PrimeIdealData pd;
            pd.q = parse_int(e.at("q"));
            if (e.contains("root")) {
                pd.root = parse_int(e.at("root"));
                pd.f = 1;
            } else if (e.contains("two_element")) {
                const auto& te = e.at("two_element");
                mpz_class q2 = parse_int(te.at(0));
                if (q2 != pd.q) throw Error(Errc::parse, "two_element prime mismatch");
                ZPoly g;
                for (const auto& c : te.at(1)) g.push_back(parse_int(c));
                g = fppoly::reduce_coeffs(std::move(g), pd.q);
                int dg = fppoly::degree(g);
                if (dg == 1) {
                    ZPoly gm = fppoly::monic(g, pd.q);
                    pd.root = (pd.q - gm[0]) % pd.q;
                    pd.f = 1;
                } else {
                    if (require_split) throw Error(Errc::not_split, "nonlinear two_element for split prime");
                    pd.f = static_cast<unsigned>(dg);
                }
            } else {
                throw Error(Errc::parse, "prime entry needs root or two_element");
            }
            pd.h = e.value("order", 1u);
            pd.gamma = gf->nf_->from_coeffs(parse_rat_vector(e.at("power_generator")));
            if (pd.q == 0 || !is_prime(pd.q)) throw Error(Errc::parse, "bad prime q");
            if (disc % pd.q == 0)
                pd.kind = SplitKind::Ramified;
            else if (pd.f == static_cast<unsigned>(gf->nf_->degree()))
                pd.kind = SplitKind::Inert;
            else
                pd.kind = SplitKind::Split;
            return pd;
        };

        if (j.contains("split_primes"))
            for (const auto& e : j.at("split_primes"))
                gf->split_primes_.push_back(parse_prime_entry(e, true));
        if (j.contains("class_group"))
            for (const auto& e : j.at("class_group"))
                gf->class_group_.push_back(parse_prime_entry(e, false));

        if (j.contains("imaginary_quadratic_subfields")) {
            for (const auto& e : j.at("imaginary_quadratic_subfields")) {
                ImagSubfield s;
                s.disc = parse_int(e.at("discriminant"));
                s.sqrt_embedding = gf->nf_->from_coeffs(parse_rat_vector(e.at("sqrt_embedding")));
                s.hcf_contained = e.value("hcf_contained", false);
                gf->subfields_.push_back(std::move(s));
            }
        }
        if (j.contains("gen_sets")) {
            for (const auto& gs : j.at("gen_sets")) {
                std::vector<size_t> idx;
                for (const auto& i : gs) idx.push_back(i.get<size_t>());
                gf->gen_set_indices_.push_back(std::move(idx));
            }
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::parse, e.what());
    }
    gf->validate();
    return gf;
}

void GaloisField::validate() {
    const DefiningField& nf = *nf_;
    int d = nf.degree();
    const ZPoly& f = nf.poly();

    // disc(f) = (-1)^{d(d-1)/2} Res(f, f'); its quotient by the declared field
    // discriminant is the square of the index of Z[theta]
    {
        QPoly deriv;
        for (size_t i = 1; i < f.size(); ++i) deriv.push_back(mpq_class(f[i]) * static_cast<long>(i));
        mpq_class res = polyq::resultant_monic(f, deriv);
        mpz_class discf = res.get_num();
        if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) discf = -discf;
        if (discf == 0 || discf % discriminant() != 0)
            throw Error(Errc::parse, "declared discriminant does not divide disc(f)");
        index_sq_ = discf / discriminant();
        if (index_sq_ <= 0 || !is_square(index_sq_))
            throw Error(Errc::parse, "disc(f)/disc(K) is not a positive square");
    }

    // units: |Nm(u)| = 1
    for (size_t i = 0; i < units_.size(); ++i) {
        mpq_class nm = nf.norm(units_[i]);
        if (!(nm == 1 || nm == -1))
            throw Error(Errc::bad_generator_norm, "unit generator " + std::to_string(i));
    }

    // split primes: f splits into d distinct linear factors mod q; generator
    // has valuation exactly h at the chosen prime and 0 at its conjugates
    for (const auto& pd : split_primes_) {
        ZPoly fq;
        for (const auto& c : f) fq.push_back(c);
        auto roots = fppoly::roots(fq, pd.q);
        if (static_cast<int>(roots.size()) != d)
            throw Error(Errc::not_split, "q = " + pd.q.get_str() + " is not totally split");
        if (!std::binary_search(roots.begin(), roots.end(), pd.root))
            throw Error(Errc::not_split, "declared root is not a root mod " + pd.q.get_str());
        mpq_class nm = nf.norm(pd.gamma);
        mpz_class expect = pow_z(pd.q, pd.h);
        if (!(nm == mpq_class(expect) || nm == mpq_class(-expect)))
            throw Error(Errc::bad_generator_norm, "split prime q = " + pd.q.get_str());
        auto at_root = eval_mod_root(pd.gamma, pd.root, pd.q);
        if (!at_root || *at_root != 0)
            throw Error(Errc::bad_generator_norm,
                        "generator not in the declared prime above " + pd.q.get_str());
        for (const auto& r : roots) {
            if (r == pd.root) continue;
            auto v = eval_mod_root(pd.gamma, r, pd.q);
            if (!v || *v == 0)
                throw Error(Errc::bad_generator_norm,
                            "generator vanishes at a conjugate prime above " + pd.q.get_str());
        }
    }
    std::sort(split_primes_.begin(), split_primes_.end(),
              [](const PrimeIdealData& a, const PrimeIdealData& b) { return a.q < b.q; });

    // class group entries: norm check |Nm(gamma)| = Nm(I)^h
    for (const auto& pd : class_group_) {
        mpq_class nm = nf.norm(pd.gamma);
        mpz_class expect = pow_z(pd.q, static_cast<unsigned long>(pd.f) * pd.h);
        if (!(nm == mpq_class(expect) || nm == mpq_class(-expect)))
            throw Error(Errc::bad_generator_norm, "class group entry q = " + pd.q.get_str());
    }
    {
        unsigned prod = 1;
        for (const auto& pd : class_group_) prod *= pd.h;
        if (class_group_.empty() && h_ != 1)
            throw Error(Errc::gen_not_generating, "h > 1 but no class group entries");
        if (!class_group_.empty() && prod != h_)
            throw Error(Errc::gen_not_generating,
                        "class group entries do not multiply to the class number");
    }

    // sqrt embeddings: e^2 rational, negative, with the declared discriminant
    for (const auto& s : subfields_) {
        NFElement sq = nf.mul(s.sqrt_embedding, s.sqrt_embedding);
        if (!nf.is_rational(sq)) throw Error(Errc::bad_sqrt, "sqrt embedding squares outside Q");
        mpq_class v = sq.coeff[0];
        if (v >= 0) throw Error(Errc::bad_sqrt, "sqrt embedding is not imaginary");
        // squarefree part of v = num*den (as v = (num*den)/den^2)
        mpz_class m = v.get_num() * v.get_den();
        Factorization fac = factor_integer(abs_z(m));
        mpz_class d0 = m < 0 ? -1 : 1;
        for (auto& [pp, e] : fac.factors)
            if (e % 2 == 1) d0 *= pp;
        mpz_class fund = (((d0 % 4) + 4) % 4 == 1) ? d0 : 4 * d0;
        if (fund != s.disc)
            throw Error(Errc::bad_sqrt, "declared subfield discriminant " + s.disc.get_str() +
                                            " does not match the embedding (" + fund.get_str() + ")");
    }
    // sigma_L indicators
    for (auto& s : subfields_) {
        s.sigma_L.assign(nf.aut_count(), 0);
        for (size_t i = 0; i < nf.aut_count(); ++i)
            if (nf.apply_aut(s.sqrt_embedding, i) == s.sqrt_embedding) s.sigma_L[i] = 1;
    }

    for (const auto& gs : gen_set_indices_)
        for (size_t i : gs)
            if (i >= class_group_.size())
                throw Error(Errc::parse, "gen_sets index out of range");
}

bool GaloisField::rejected_infinite() const {
    return degree() == 2 && discriminant() < 0 && h_ == 1;
}

std::optional<SplittingInfo> GaloisField::splitting(const mpz_class& q) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = splitting_cache_.find(q);
        if (it != splitting_cache_.end()) return it->second;
    }
    std::optional<SplittingInfo> out;
    if (index_sq_ % q == 0) {
        // index prime: the factorisation of f mod q does not mirror splitting
        std::lock_guard<std::mutex> lock(cache_mutex_);
        splitting_cache_[q] = std::nullopt;
        return std::nullopt;
    }
    if (discriminant() % q == 0) {
        // ramified: residue degree = degree of the irreducible factors of the
        // radical of f mod q (uniform for Galois fields)
        ZPoly fq;
        for (const auto& c : nf_->poly()) fq.push_back(c);
        fq = fppoly::reduce_coeffs(std::move(fq), q);
        ZPoly rad = fppoly::monic(fq, q);
        long guard = 0;
        while (fppoly::degree(rad) >= 1 && !fppoly::is_squarefree(rad, q) && ++guard < 64) {
            ZPoly dr;
            for (size_t i = 1; i < rad.size(); ++i) dr.push_back(rad[i] * static_cast<long>(i));
            dr = fppoly::reduce_coeffs(std::move(dr), q);
            if (fppoly::degree(dr) < 0) {
                // rad = h(x^q); Frobenius is the identity on F_q, so compress
                unsigned long qu = mpz_get_ui(q.get_mpz_t());
                ZPoly h;
                for (size_t i = 0; i < rad.size(); i += qu) h.push_back(rad[i]);
                rad = fppoly::monic(std::move(h), q);
                continue;
            }
            ZPoly g = fppoly::gcd(rad, dr, q);
            if (fppoly::degree(g) <= 0) break;
            ZPoly next;
            {
                // rad / g, both monic
                ZPoly rem = rad;
                ZPoly gm = fppoly::monic(g, q);
                int dg = fppoly::degree(gm);
                while (fppoly::degree(rem) >= dg) {
                    int dr2 = fppoly::degree(rem);
                    mpz_class coef = rem[dr2];
                    ZPoly t(dr2 - dg + 1, mpz_class(0));
                    t[dr2 - dg] = coef;
                    if (static_cast<int>(next.size()) < dr2 - dg + 1)
                        next.resize(dr2 - dg + 1, mpz_class(0));
                    next[dr2 - dg] = coef;
                    rem = fppoly::sub(rem, fppoly::mul(t, gm, q), q);
                }
                next = fppoly::trim(std::move(next));
            }
            if (fppoly::degree(next) < 1) break;
            rad = fppoly::monic(std::move(next), q);
        }
        if (fppoly::degree(rad) >= 1 && fppoly::is_squarefree(rad, q)) {
            auto factors = fppoly::factor_squarefree(rad, q);
            unsigned fdeg = static_cast<unsigned>(fppoly::degree(factors.front()));
            bool uniform = true;
            for (const auto& g : factors)
                if (static_cast<unsigned>(fppoly::degree(g)) != fdeg) uniform = false;
            if (uniform) out = SplittingInfo{SplitKind::Ramified, fdeg};
        }
        // unresolved wild cases stay unknown, which downstream treats soundly
    } else {
        ZPoly fq;
        for (const auto& c : nf_->poly()) fq.push_back(c);
        fq = fppoly::reduce_coeffs(std::move(fq), q);
        if (fppoly::degree(fq) != nf_->degree() || !fppoly::is_squarefree(fq, q)) {
            out = std::nullopt; // index prime; splitting unknown
        } else {
            auto factors = fppoly::factor_squarefree(fq, q);
            unsigned fdeg = static_cast<unsigned>(fppoly::degree(factors.front()));
            bool uniform = true;
            for (const auto& g : factors)
                if (static_cast<unsigned>(fppoly::degree(g)) != fdeg) uniform = false;
            if (!uniform) {
                out = std::nullopt; // not Galois-compatible; treat as unknown
            } else if (fdeg == static_cast<unsigned>(nf_->degree())) {
                out = SplittingInfo{SplitKind::Inert, fdeg};
            } else {
                out = SplittingInfo{SplitKind::Split, fdeg};
            }
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    splitting_cache_[q] = out;
    return out;
}

std::optional<PrimeIdealData> GaloisField::next_split_prime(mpz_class& cursor) const {
    for (const auto& pd : split_primes_) {
        if (pd.q > cursor) {
            cursor = pd.q;
            return pd;
        }
    }
    return std::nullopt;
}

std::vector<PrimeIdealData> GaloisField::primes_above(const mpz_class& q) const {
    std::vector<PrimeIdealData> out;
    // inert primes need no external data: the ideal is (q) with generator q
    if (auto info = splitting(q); info && info->kind == SplitKind::Inert) {
        PrimeIdealData pd;
        pd.q = q;
        pd.f = info->f;
        pd.kind = SplitKind::Inert;
        pd.h = 1;
        pd.gamma = nf_->from_rational(mpq_class(q));
        out.push_back(std::move(pd));
        return out;
    }
    for (const auto& pd : split_primes_) {
        if (pd.q != q) continue;
        // all conjugates: sigma_j(q_ideal) has root r' with s_j(r') = r (mod q)
        ZPoly fq;
        for (const auto& c : nf_->poly()) fq.push_back(c);
        auto roots = fppoly::roots(fq, q);
        std::vector<mpz_class> used;
        for (size_t jj = 0; jj < nf_->aut_count(); ++jj) {
            NFElement gamma_j = nf_->apply_aut(pd.gamma, jj);
            std::optional<mpz_class> found;
            for (const auto& r2 : roots) {
                auto v = eval_mod_root(gamma_j, r2, q);
                if (v && *v == 0) {
                    found = r2;
                    break;
                }
            }
            if (!found) continue;
            if (std::find(used.begin(), used.end(), *found) != used.end()) continue;
            used.push_back(*found);
            PrimeIdealData c = pd;
            c.root = *found;
            c.gamma = gamma_j;
            out.push_back(std::move(c));
        }
        return out;
    }
    for (const auto& pd : class_group_)
        if (pd.q == q) out.push_back(pd);
    return out;
}

std::vector<GeneratorData> GaloisField::generator_data(const mpz_class& avoid_p, bool odd_only) const {
    std::vector<GeneratorData> out;
    for (const auto& pd : class_group_) {
        if (avoid_p != 0 && pd.q == avoid_p) return {}; // cannot re-derive an alternative chain
        if (odd_only && pd.q == 2) return {};
        GeneratorData g;
        g.ideal = pd;
        g.order_in_quotient = pd.h; // entries form an independent basis by contract
        g.rel_exponents.assign(out.size(), 0);
        g.alpha = pd.gamma;
        out.push_back(std::move(g));
    }
    return out;
}

ClassDecomposition GaloisField::decompose(const PrimeIdealData& prime,
                                          const std::vector<GeneratorData>& gens) const {
    ClassDecomposition out;
    if (prime.h == 1) {
        out.ok = true;
        out.exponents.assign(gens.size(), 0);
        out.alpha = prime.gamma;
    }
    return out; // nonprincipal primes need ideal arithmetic the file does not carry
}

std::vector<std::vector<PrimeIdealData>> GaloisField::gen_sets() const {
    if (h_ == 1) return {{}};
    std::vector<std::vector<PrimeIdealData>> out;
    if (!gen_set_indices_.empty()) {
        for (const auto& gs : gen_set_indices_) {
            std::vector<PrimeIdealData> set;
            for (size_t i : gs) set.push_back(class_group_[i]);
            out.push_back(std::move(set));
        }
        return out;
    }
    std::vector<PrimeIdealData> all;
    for (const auto& pd : class_group_)
        if (pd.q != 2) all.push_back(pd);
    out.push_back(std::move(all));
    return out;
}

std::optional<PrimeIdealData> GaloisField::nonprincipal_prime() const {
    for (const auto& pd : class_group_)
        if (pd.h > 1) return pd;
    for (const auto& pd : split_primes_)
        if (pd.h > 1) return pd;
    return std::nullopt;
}

} // namespace isogeny
