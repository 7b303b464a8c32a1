#pragma once

#include <stdexcept>
#include <string>

namespace isogeny {

// Error codes surfaced across the library. CLI maps these to exit codes.
enum class Errc {
    parse,
    non_monic,
    aut_not_root,
    bad_generator_norm,
    bad_sqrt,
    not_split,
    non_galois,
    reject_infinite,
    index_out_of_range,
    signature_length,
    aux_empty,
    even_aux,
    gen_not_generating,
    gen_even_characteristic,
    need_nonprincipal_aux,
    unsupported_degree,
    search_exhausted,
    factoring_timeout,
    alpha_not_coprime,
    invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace isogeny
