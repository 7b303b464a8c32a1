#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isogeny/field_context.hpp"

namespace isogeny {

// Smallest integer B such that every p > B violates
// p <= (8 d log(12 p) + 16 log|disc| + 10 d + 6)^4,
// by monotone fixed-point iteration from an overestimate.
mpz_class type2_grh_bound(int d, const mpz_class& disc);

// Condition-CC test: false means p is eliminated (some prime q of the field
// with q^f < p/4, f odd, q^{2f}+q^f+1 != 0 mod p, splits in Q(sqrt(-p))).
bool satisfies_condition_cc(const FieldContext& field, const mpz_class& p);

struct Type2ScanResult {
    mpz_class grh_bound;
    mpz_class cap;
    std::vector<mpz_class> survivors;
    bool cap_below_grh_bound = false;
    bool skipped_semistable = false;
};

struct Type2ScanConfig {
    mpz_class cap = 1000000;
    unsigned shards = 1;
    std::string checkpoint_path; // empty = no checkpointing
    std::string resume_path;     // empty = fresh scan
};

// Exhaustive scan of p = 3 mod 4 in [17, cap], sharded over blocks of 2^16
// candidates, checkpointed, with a deterministic merge.
Type2ScanResult type2_scan(const FieldContext& field, const Type2ScanConfig& config);

} // namespace isogeny
