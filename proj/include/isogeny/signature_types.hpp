#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isogeny {

// Exponent vector over the d embeddings, entries in {0, 4, 6, 8, 12}.
using Signature = std::vector<int>;

enum class SignatureType {
    Type1,
    QuadraticNonconstant,
    SexticConstant,
    SexticNonconstant,
    Type2,
    QuarticNonconstant,
    Mixed,
};

const char* signature_type_name(SignatureType t);
std::string signature_str(const Signature& eps);

} // namespace isogeny
