#include "isogeny/pipeline.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/factoring.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "json.hpp"

namespace isogeny {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void attach(std::map<mpz_class, PrimeProvenance>& prov, const mpz_class& p, const std::string& route,
            const std::optional<Signature>& eps) {
    auto& e = prov[p];
    e.routes.insert(route);
    if (eps) {
        if (std::find(e.signatures.begin(), e.signatures.end(), *eps) == e.signatures.end())
            e.signatures.push_back(*eps);
        e.signature_types.insert(signature_type_name(classify_signature(*eps)));
    }
}

} // namespace

SupersetReport run_combined(const FieldContext& field, const RunConfig& config) {
    SupersetReport report;
    report.field_label = field.label();
    report.degree = field.degree();
    report.discriminant = field.discriminant();
    report.class_number = field.class_number();

    if (field.rejected_infinite())
        throw Error(Errc::reject_infinite,
                    "imaginary quadratic field of class number one: the isogeny prime set is "
                    "infinite (the field contains the Hilbert class field of an imaginary "
                    "quadratic field)");

    auto t0 = Clock::now();
    MmibConfig mc{config.aux};
    report.ledger = mmib(field, mc);
    report.timings_ms["mmib"] = ms_since(t0);

    // Type 1
    t0 = Clock::now();
    std::vector<mpz_class> t1aux = config.type1_aux;
    if (t1aux.empty()) {
        // default: odd primes below 20 that the backend can materialise,
        // topped up with the backend's odd split primes so a file-backed
        // field still drives a gcd over several auxiliary primes
        for (mpz_class q : {3, 5, 7, 11, 13, 17, 19})
            if (!field.primes_above(q).empty()) t1aux.push_back(q);
        mpz_class cursor = 1;
        while (t1aux.size() < 7) {
            auto pd = field.next_split_prime(cursor);
            if (!pd) break;
            if (pd->q == 2) continue;
            if (std::find(t1aux.begin(), t1aux.end(), pd->q) == t1aux.end())
                t1aux.push_back(pd->q);
        }
        std::sort(t1aux.begin(), t1aux.end());
    }
    BFIRecord bfi = bfi_record_cached(field.degree(), config.bfi_cache_path);
    report.type1 = type_one_bound(field, t1aux, bfi);
    report.timings_ms["type1"] = ms_since(t0);

    // Type 2
    t0 = Clock::now();
    if (config.semistable) {
        report.type2.grh_bound = type2_grh_bound(field.degree(), field.discriminant());
        report.type2.cap = 0;
        report.type2.skipped_semistable = true;
        report.unconditional = true;
        report.caveats.push_back("SEMISTABLE_NO_TYPE2: Momose Type 2 primes do not arise for "
                                 "semistable curves; the scan was skipped");
    } else {
        Type2ScanConfig sc;
        sc.cap = config.type2_cap;
        sc.shards = config.shards;
        sc.checkpoint_path = config.checkpoint_path;
        sc.resume_path = config.resume_path;
        report.type2 = type2_scan(field, sc);
        if (report.type2.cap_below_grh_bound)
            report.caveats.push_back("CAP_BELOW_GRH_BOUND: Momose Type 2 primes were scanned to " +
                                     report.type2.cap.get_str() + " but the GRH bound is " +
                                     report.type2.grh_bound.get_str());
    }
    report.timings_ms["type2"] = ms_since(t0);

    // Candidate assembly with provenance
    t0 = Clock::now();
    auto& prov = report.provenance;
    for (mpz_class p : {2, 3, 5, 7, 11, 13}) attach(prov, p, "small-prime", std::nullopt);
    for (const auto& p : mazur_set())
        if (p >= 17) attach(prov, p, "mazur", std::nullopt);

    auto note_factoring = [&](const FactoredInteger& f, const std::string& what) {
        if (f.timed_out) report.caveats.push_back(what + ": " + f.caveat);
    };

    // generic route, grouped per signature type before factoring
    {
        std::map<SignatureType, mpz_class> type_lcm;
        for (const auto& [rep, chain] : report.ledger.generic.per_signature)
            type_lcm[rep.type] = lcm0(type_lcm.count(rep.type) ? type_lcm[rep.type] : mpz_class(1), chain);
        for (const auto& [stype, value] : type_lcm) {
            if (value == 0) continue;
            FactoredInteger f = factor_with_ledger(value);
            note_factoring(f, std::string("generic/") + signature_type_name(stype));
            for (const auto& p : f.prime_divisors()) {
                for (const auto& [rep, chain] : report.ledger.generic.per_signature) {
                    if (rep.type != stype) continue;
                    if (chain != 0 && chain % p == 0) attach(prov, p, "generic", rep.eps);
                }
            }
        }
    }
    // type 2 (signature) not Momose route
    {
        Signature eps6(field.nf().aut_count(), 6);
        if (report.ledger.type_two_not_momose > 1) {
            FactoredInteger f = factor_with_ledger(report.ledger.type_two_not_momose);
            note_factoring(f, "type2-not-momose");
            for (const auto& p : f.prime_divisors()) attach(prov, p, "type2-not-momose", eps6);
        }
    }
    // type 3 not Momose route
    for (const auto& [eps3, value] : report.ledger.type_three.per_signature) {
        if (value == 0 || value == 1) continue;
        FactoredInteger f = factor_with_ledger(value);
        note_factoring(f, "type3-not-momose");
        for (const auto& p : f.prime_divisors()) attach(prov, p, "type3-not-momose", eps3);
    }
    // type 1 route: the formal-immersion bad primes are not divisibility
    // constraints, so no character data attaches to them; the aux-divisor
    // part carries the constant-zero signature
    {
        FactoredInteger fb = factor_with_ledger(report.type1.bfi_product);
        note_factoring(fb, "type1-bfi");
        for (const auto& p : fb.prime_divisors()) attach(prov, p, "type1-bfi", std::nullopt);
        Signature eps0(field.nf().aut_count(), 0);
        FactoredInteger f = factor_with_ledger(report.type1.d_aux);
        note_factoring(f, "type1");
        for (const auto& p : f.prime_divisors()) attach(prov, p, "type1", eps0);
    }
    // type 2 scan survivors
    {
        Signature eps6(field.nf().aut_count(), 6);
        for (const auto& p : report.type2.survivors) attach(prov, p, "type2", eps6);
    }
    report.timings_ms["assembly"] = ms_since(t0);

    // Filters
    t0 = Clock::now();
    for (auto& [p, entry] : prov) {
        if (p < 17 || mazur_set().count(p)) {
            entry.kept = true;
            entry.filter_trail.push_back("unconditional");
            continue;
        }
        if (entry.routes.count("type1-bfi")) {
            // a bad formal immersion prime cannot be ruled out by character
            // arguments; it stays in the superset
            entry.kept = true;
            entry.filter_trail.push_back("bad-formal-immersion:kept");
            continue;
        }
        // congruence conditions per attached signature
        std::vector<Signature> surviving;
        for (const auto& eps : entry.signatures)
            if (congruence_filter(p, classify_signature(eps), field)) surviving.push_back(eps);
        if (surviving.empty()) {
            entry.kept = false;
            entry.filter_trail.push_back("congruence:discard");
            continue;
        }
        entry.filter_trail.push_back("congruence:pass");
        if (config.use_ice) {
            bool keep = ice_filter(field, p, surviving, config.ice);
            entry.filter_trail.push_back(keep ? "ice:pass" : "ice:discard");
            if (!keep) {
                entry.kept = false;
                continue;
            }
        }
        entry.kept = true;
    }
    report.timings_ms["weeding"] = ms_since(t0);

    for (const auto& [p, entry] : prov)
        if (entry.kept) report.superset.push_back(p);
    std::sort(report.superset.begin(), report.superset.end());

    if (!report.unconditional)
        report.caveats.push_back("GRH: the Momose Type 2 route is conditional on the Generalised "
                                 "Riemann Hypothesis");
    if (report.ledger.cm_caveat)
        report.caveats.push_back("CM_EXCLUDED: the field contains the Hilbert class field of an "
                                 "imaginary quadratic subfield; CM (Momose Type 3) isogeny primes "
                                 "are excluded from the superset");
    return report;
}

std::string SupersetReport::to_json(bool include_timings) const {
    nlohmann::json j;
    j["field"] = {{"label", field_label},
                  {"degree", degree},
                  {"discriminant", discriminant.get_str()},
                  {"class_number", class_number}};
    j["superset"] = nlohmann::json::array();
    for (const auto& p : superset) j["superset"].push_back(p.get_str());
    j["unconditional"] = unconditional;
    j["caveats"] = caveats;

    nlohmann::json bounds;
    bounds["generic"] = ledger.generic.bound.get_str();
    nlohmann::json per_sig = nlohmann::json::object();
    for (const auto& [rep, chain] : ledger.generic.per_signature)
        per_sig[signature_str(rep.eps)] = chain.get_str();
    bounds["generic_per_signature"] = per_sig;
    {
        nlohmann::json aux = nlohmann::json::array();
        for (const auto& q : ledger.generic.aux_used) aux.push_back(q.get_str());
        bounds["generic_aux"] = aux;
    }
    bounds["type_two_not_momose"] = ledger.type_two_not_momose.get_str();
    bounds["type_three_not_momose"] = ledger.type_three.bound.get_str();
    bounds["mmib"] = ledger.mmib.get_str();
    bounds["type_one"] = type1.bound.get_str();
    bounds["type_one_bfi"] = type1.bfi_product.get_str();
    bounds["type_one_d_aux"] = type1.d_aux.get_str();
    j["bounds"] = bounds;

    nlohmann::json t2;
    t2["grh_bound"] = type2.grh_bound.get_str();
    t2["cap"] = type2.cap.get_str();
    t2["skipped_semistable"] = type2.skipped_semistable;
    t2["survivors"] = nlohmann::json::array();
    for (const auto& p : type2.survivors) t2["survivors"].push_back(p.get_str());
    j["type2_scan"] = t2;

    nlohmann::json prov = nlohmann::json::object();
    for (const auto& [p, e] : provenance) {
        nlohmann::json pe;
        pe["kept"] = e.kept;
        pe["routes"] = std::vector<std::string>(e.routes.begin(), e.routes.end());
        pe["signature_types"] =
            std::vector<std::string>(e.signature_types.begin(), e.signature_types.end());
        nlohmann::json sigs = nlohmann::json::array();
        for (const auto& s : e.signatures) sigs.push_back(signature_str(s));
        pe["signatures"] = sigs;
        pe["filters"] = e.filter_trail;
        prov[p.get_str()] = pe;
    }
    j["provenance"] = prov;

    if (include_timings) {
        nlohmann::json t = nlohmann::json::object();
        for (const auto& [k, v] : timings_ms) t[k] = v;
        j["timings_ms"] = t;
    }
    return j.dump(2);
}

std::string SupersetReport::to_text() const {
    std::ostringstream os;
    os << "Field " << field_label << " (degree " << degree << ", discriminant "
       << discriminant.get_str() << ", class number " << class_number << ")\n";
    os << (unconditional ? "Unconditional (semistable mode)\n" : "Conditional on GRH\n");
    os << "Possible isogeny primes:";
    for (const auto& p : superset) os << " " << p.get_str();
    os << "\n";
    {
        std::vector<mpz_class> beyond;
        for (const auto& p : superset)
            if (!mazur_set().count(p)) beyond.push_back(p);
        os << "Beyond the rational isogeny primes:";
        if (beyond.empty())
            os << " (none)";
        else
            for (const auto& p : beyond) os << " " << p.get_str();
        os << "\n";
    }
    os << "\nRoute detail (candidate: routes | signature types | filters):\n";
    for (const auto& [p, e] : provenance) {
        os << "  " << p.get_str() << (e.kept ? "  kept    " : "  removed ");
        bool first = true;
        for (const auto& r : e.routes) {
            os << (first ? "" : ",") << r;
            first = false;
        }
        os << " | ";
        first = true;
        for (const auto& t : e.signature_types) {
            os << (first ? "" : ",") << t;
            first = false;
        }
        os << " | ";
        first = true;
        for (const auto& f : e.filter_trail) {
            os << (first ? "" : ",") << f;
            first = false;
        }
        os << "\n";
    }
    if (!caveats.empty()) {
        os << "\nCaveats:\n";
        for (const auto& c : caveats) os << "  - " << c << "\n";
    }
    return os.str();
}

} // namespace isogeny
