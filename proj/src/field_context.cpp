#include "isogeny/field_context.hpp"

#include "isogeny/intmath.hpp"

namespace isogeny {

const char* split_kind_name(SplitKind k) {
    switch (k) {
    case SplitKind::Split: return "split";
    case SplitKind::Inert: return "inert";
    case SplitKind::Ramified: return "ramified";
    }
    return "unknown";
}

mpz_class PrimeIdealData::norm() const { return pow_z(q, f); }

} // namespace isogeny
