#pragma once

#include <map>
#include <set>
#include <string>

#include "isogeny/bounds_generic.hpp"
#include "isogeny/bounds_type1.hpp"
#include "isogeny/bounds_type2.hpp"
#include "isogeny/field_context.hpp"
#include "isogeny/weeding_ice.hpp"

namespace isogeny {

struct RunConfig {
    AuxStrategy aux;                  // generic-bound auxiliary strategy
    std::vector<mpz_class> type1_aux; // odd rational primes; empty = default
    mpz_class type2_cap = 1000000;
    unsigned shards = 1;
    std::string checkpoint_path;
    std::string resume_path;
    bool semistable = false;
    bool use_ice = true;
    IceConfig ice;
    std::string bfi_cache_path;
};

struct PrimeProvenance {
    std::set<std::string> routes;
    std::vector<Signature> signatures;    // attached signatures (deduplicated)
    std::set<std::string> signature_types;
    std::vector<std::string> filter_trail;
    bool kept = true;
};

struct SupersetReport {
    std::string field_label;
    int degree = 0;
    mpz_class discriminant;
    unsigned class_number = 1;
    std::vector<mpz_class> superset;
    std::map<mpz_class, PrimeProvenance> provenance; // all candidates, kept or not
    BoundLedger ledger;
    TypeOneResult type1;
    Type2ScanResult type2;
    std::vector<std::string> caveats;
    bool unconditional = false;
    std::map<std::string, double> timings_ms;

    std::string to_json(bool include_timings = true) const;
    std::string to_text() const;
};

SupersetReport run_combined(const FieldContext& field, const RunConfig& config);

} // namespace isogeny
