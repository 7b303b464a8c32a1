#include "isogeny/bounds_generic.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/frobenius.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>

namespace isogeny {

namespace {

mpz_class norm_abs(const DefiningField& nf, const NFElement& e) {
    mpq_class n = nf.norm(e);
    if (n.get_den() != 1) {
        // the elements reaching here are integral, so this indicates a bug
        throw Error(Errc::invalid_argument, "non-integral norm in bound computation");
    }
    return abs_z(n.get_num());
}

} // namespace

mpz_class supersingular_C_shortcut(const Signature& eps, const PrimeIdealData& qdata,
                                   const FieldContext& field) {
    const DefiningField& nf = field.nf();
    unsigned long h = qdata.h;
    if (qdata.q == 2 && qdata.f % 2 == 1) {
        // B(2 eps, q): the norm power stays 12h, only the signature doubles,
        // since prod over the two signs of (gamma^eps -+ q^{6fh}) equals
        // gamma^{2 eps} - Nm(q)^{12h}
        Signature eps2 = eps;
        for (int& a : eps2) a *= 2;
        NFElement g2 = nf.pow_signature(qdata.gamma, eps2);
        mpz_class nm12 = pow_z(qdata.norm(), 12 * h);
        return norm_abs(nf, nf.sub(g2, nf.from_rational(mpq_class(nm12))));
    }
    NFElement ge = nf.pow_signature(qdata.gamma, eps);
    mpz_class nm6 = pow_z(qdata.norm(), 6 * h);
    return norm_abs(nf, nf.sub(ge, nf.from_rational(mpq_class(nm6))));
}

ABCRecord abc_record(const Signature& eps, const PrimeIdealData& qdata, const FieldContext& field) {
    const DefiningField& nf = field.nf();
    unsigned long h = qdata.h;
    ABCRecord out;
    NFElement ge = nf.pow_signature(qdata.gamma, eps);
    mpz_class nm12 = pow_z(qdata.norm(), 12 * h);

    out.A = norm_abs(nf, nf.sub(ge, nf.one()));
    out.B = norm_abs(nf, nf.sub(ge, nf.from_rational(mpq_class(nm12))));
    out.Cs = supersingular_C_shortcut(eps, qdata, field);

    // C_o: lcm over ordinary Frobenius traces t of
    // Nm((gamma^eps)^2 - s_{12h} * gamma^eps + Nm(q)^{12h}),
    // the K-internal form of Nm_{K(beta)/Q}(gamma^eps - beta^{12h}).
    out.Co = 1;
    NFElement ge2 = nf.mul(ge, ge);
    auto traces = enumerate_frobenius_traces(qdata.q, qdata.f);
    for (const auto& fr : traces) {
        if (fr.kind != FrobKind::Ordinary) continue;
        if (fr.t < 0) continue; // s_{12h}(t) = s_{12h}(-t) for even powers
        PowerTrace pt = power_trace(fr.t, qdata.q, qdata.f, 12 * h);
        NFElement val = nf.add(nf.sub(ge2, nf.mul_scalar(ge, mpq_class(pt.s))),
                               nf.from_rational(mpq_class(pt.norm)));
        out.Co = lcm0(out.Co, norm_abs(nf, val));
    }
    out.C = lcm0(out.Co, out.Cs);
    out.ABC = lcm0(lcm0(out.A, out.B), lcm0(out.C, qdata.norm()));
    return out;
}

mpz_class unit_divisibility(const FieldContext& field, const Signature& eps) {
    const DefiningField& nf = field.nf();
    mpz_class g = 0;
    std::vector<NFElement> units = field.unit_generators();
    if (auto t = field.torsion_unit()) units.push_back(*t);
    for (const auto& u : units) {
        NFElement ue = nf.pow_signature(u, eps);
        mpz_class v = norm_abs(nf, nf.sub(ue, nf.one()));
        if (v == 0) continue;
        g = gcd0(g, v);
    }
    return g;
}

namespace {

// Collect the aux primes of the fixed-norm strategy: all primes the backend
// can materialise with norm <= bound, plus an emergency split prime if the
// set has no totally split member.
std::vector<PrimeIdealData> norm_bound_aux(const FieldContext& field, const mpz_class& bound) {
    std::vector<PrimeIdealData> aux;
    bool have_split = false;
    for (mpz_class q = 2; q <= bound; q = next_prime(q)) {
        for (auto& pd : field.primes_above(q)) {
            if (pd.norm() <= bound) {
                if (pd.kind == SplitKind::Split) have_split = true;
                aux.push_back(pd);
            }
        }
    }
    if (!have_split) {
        mpz_class cursor = 1;
        auto pd = field.next_split_prime(cursor);
        if (!pd) throw Error(Errc::aux_empty, "no totally split prime available");
        aux.push_back(*pd); // emergency auxiliary prime
    }
    return aux;
}

} // namespace

GenericBoundResult generic_bound(const FieldContext& field, const AuxStrategy& strategy) {
    GenericBoundResult out;
    auto reps = enumerate_generic_signatures(field);
    std::vector<mpz_class> chains(reps.size(), mpz_class(0));
    for (size_t i = 0; i < reps.size(); ++i) {
        mpz_class seed = unit_divisibility(field, reps[i].eps);
        if (seed != 0) chains[i] = seed;
    }
    auto fold = [&](const PrimeIdealData& pd) {
        for (size_t i = 0; i < reps.size(); ++i) {
            mpz_class abc = abc_record(reps[i].eps, pd, field).ABC;
            chains[i] = chains[i] == 0 ? abc : gcd0(chains[i], abc);
        }
    };
    auto current_bound = [&]() {
        mpz_class b = 1;
        for (auto& c : chains) b = lcm0(b, c);
        return b;
    };

    if (strategy.kind == AuxStrategy::Kind::NormBound) {
        auto aux = norm_bound_aux(field, strategy.norm_bound);
        if (aux.empty()) throw Error(Errc::aux_empty, "empty auxiliary set");
        for (auto& pd : aux) {
            fold(pd);
            out.aux_used.push_back(pd.q);
        }
    } else {
        mpz_class cursor = 1;
        mpz_class last = -1;
        unsigned same = 0;
        unsigned count = 0;
        while (count < strategy.max_aux) {
            auto pd = field.next_split_prime(cursor);
            if (!pd) {
                if (count == 0) throw Error(Errc::aux_empty, "no split primes available");
                break; // file-backed supply exhausted; bound is already valid
            }
            fold(*pd);
            out.aux_used.push_back(pd->q);
            ++count;
            mpz_class b = current_bound();
            if (b == last)
                ++same;
            else {
                last = b;
                same = 1;
            }
            if (same >= strategy.auto_stop) break;
        }
    }

    out.bound = current_bound();
    if (out.bound == 0) throw Error(Errc::aux_empty, "generic bound vanished");
    for (size_t i = 0; i < reps.size(); ++i) out.per_signature.push_back({reps[i], chains[i]});
    return out;
}

mpz_class type_two_not_momose_bound(const FieldContext& field,
                                    const std::vector<std::vector<PrimeIdealData>>& gen_sets) {
    const DefiningField& nf = field.nf();
    Signature eps6(nf.aut_count(), 6);
    mpz_class result = 0;
    for (const auto& gen : gen_sets) {
        // validate the generating set
        unsigned prod = 1;
        for (const auto& pd : gen) {
            if (pd.q == 2) throw Error(Errc::gen_even_characteristic, "Gen contains a prime above 2");
            prod *= pd.h;
        }
        if (!gen.empty() && prod < field.class_number())
            throw Error(Errc::gen_not_generating, "Gen set does not generate the class group");
        if (gen.empty() && field.class_number() != 1)
            throw Error(Errc::gen_not_generating, "empty Gen set with h > 1");
        mpz_class abco = 1;
        for (const auto& pd : gen) {
            ABCRecord r = abc_record(eps6, pd, field);
            mpz_class term = lcm0(lcm0(r.A, r.B), lcm0(r.Co, pd.norm()));
            abco = lcm0(abco, term);
        }
        result = result == 0 ? abco : gcd0(result, abco);
    }
    if (result == 0) result = 1; // no Gen sets supplied
    return result;
}

namespace {

// C*: lcm over nonzero terms only, all Frobenius roots (ordinary and
// supersingular) over the residue field.
mpz_class c_star(const Signature& eps, const PrimeIdealData& qdata, const FieldContext& field) {
    const DefiningField& nf = field.nf();
    unsigned long h = qdata.h;
    NFElement ge = nf.pow_signature(qdata.gamma, eps);
    NFElement ge2 = nf.mul(ge, ge);
    mpz_class out = 1;
    for (const auto& fr : enumerate_frobenius_traces(qdata.q, qdata.f)) {
        if (fr.t < 0 && fr.kind == FrobKind::Ordinary) continue;
        mpz_class term;
        if (fr.kind == FrobKind::Ordinary) {
            PowerTrace pt = power_trace(fr.t, qdata.q, qdata.f, 12 * h);
            NFElement val = nf.add(nf.sub(ge2, nf.mul_scalar(ge, mpq_class(pt.s))),
                                   nf.from_rational(mpq_class(pt.norm)));
            term = norm_abs(nf, val);
        } else {
            // beta^{12h} rational: handled by the shortcut branches
            PowerTrace pt = power_trace(fr.t, qdata.q, qdata.f, 12 * h);
            // beta^{12h} = s_{12h}/2 when rational
            if (pt.s % 2 != 0) continue;
            mpz_class b12h = pt.s / 2;
            NFElement val = nf.sub(ge, nf.from_rational(mpq_class(b12h)));
            term = norm_abs(nf, val);
        }
        if (term != 0) out = lcm0(out, term);
    }
    return out;
}

} // namespace

TypeThreeResult type_three_not_momose_bound(const FieldContext& field,
                                            const std::vector<PrimeIdealData>& aux,
                                            const std::vector<std::vector<PrimeIdealData>>& gen_sets) {
    TypeThreeResult out;
    auto sigs = type3_signatures(field);
    if (sigs.empty()) return out;

    // locate the subfield records
    for (const auto& [eps3, Ldisc] : sigs) {
        const ImagSubfield* sub = nullptr;
        for (const auto& s : field.imaginary_subfields())
            if (s.disc == Ldisc) sub = &s;
        if (!sub) continue;
        mpz_class D;
        if (!sub->hcf_contained) {
            if (aux.empty()) throw Error(Errc::aux_empty, "Type 3 bound needs auxiliary primes");
            bool have_nonprincipal = false;
            for (const auto& pd : aux)
                if (pd.h > 1) have_nonprincipal = true;
            if (field.class_number() > 1 && !have_nonprincipal)
                throw Error(Errc::need_nonprincipal_aux,
                            "Aux must contain a nonprincipal prime for the Type 3 route");
            D = 0;
            for (const auto& pd : aux) {
                mpz_class abc = abc_record(eps3, pd, field).ABC;
                D = D == 0 ? abc : gcd0(D, abc);
            }
            out.per_signature.push_back({eps3, D});
            out.bound = lcm0(out.bound, D);
        } else {
            // gcd over Gen sets of ABC*(eps3, Gen), with Delta_L folded in
            D = 0;
            for (const auto& gen : gen_sets) {
                mpz_class abcs = 1;
                for (const auto& pd : gen) {
                    if (pd.q == 2)
                        throw Error(Errc::gen_even_characteristic, "Gen contains a prime above 2");
                    ABCRecord r = abc_record(eps3, pd, field);
                    mpz_class cs = c_star(eps3, pd, field);
                    mpz_class term = lcm0(lcm0(r.A, r.B), lcm0(cs, pd.norm()));
                    abcs = lcm0(abcs, term);
                }
                D = D == 0 ? abcs : gcd0(D, abcs);
            }
            if (D == 0) D = 1;
            mpz_class folded = lcm0(D, abs_z(Ldisc));
            out.per_signature.push_back({eps3, folded});
            out.bound = lcm0(out.bound, folded);
        }
        if (out.bound == 0)
            throw Error(Errc::need_nonprincipal_aux, "Type 3 bound vanished; aux set insufficient");
    }
    return out;
}

BoundLedger mmib(const FieldContext& field, const MmibConfig& config) {
    BoundLedger ledger;

    // assemble the aux set for the Type 3 route alongside the generic bound:
    // the generic chain's primes, plus a nonprincipal prime when required
    ledger.generic = generic_bound(field, config.aux);

    std::vector<mpz_class> aux_qs = ledger.generic.aux_used;
    std::sort(aux_qs.begin(), aux_qs.end());
    aux_qs.erase(std::unique(aux_qs.begin(), aux_qs.end()), aux_qs.end());
    std::vector<PrimeIdealData> aux;
    for (const auto& q : aux_qs) {
        for (auto& pd : field.primes_above(q)) aux.push_back(pd);
    }
    bool needs_nonprincipal = field.class_number() > 1 && !field.imaginary_subfields().empty();
    if (needs_nonprincipal) {
        bool have = false;
        for (const auto& pd : aux)
            if (pd.h > 1) have = true;
        if (!have) {
            auto np = field.nonprincipal_prime();
            if (!np)
                throw Error(Errc::need_nonprincipal_aux,
                            "no nonprincipal prime available for the Type 3 route");
            aux.push_back(*np);
        }
    }

    auto gen_sets = field.gen_sets();
    ledger.type_two_not_momose = type_two_not_momose_bound(field, gen_sets);
    ledger.type_three = type_three_not_momose_bound(field, aux, gen_sets);
    for (const auto& s : field.imaginary_subfields())
        if (s.hcf_contained) ledger.cm_caveat = true;

    ledger.mmib = lcm0(ledger.generic.bound,
                       lcm0(ledger.type_two_not_momose, ledger.type_three.bound));
    if (ledger.mmib == 0) throw Error(Errc::invalid_argument, "MMIB vanished");
    return ledger;
}

} // namespace isogeny
