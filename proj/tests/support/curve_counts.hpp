#pragma once

// Brute-force trace sets of elliptic curves over small finite fields, used as
// the oracle for the Waterhouse enumeration. Counts points on every smooth
// Weierstrass curve over F_{q^f} via table-based field arithmetic.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace testsupport {

class SmallField {
  public:
    // order n = p^k <= 32
    SmallField(unsigned p, unsigned k) : p_(p), k_(k) {
        n_ = 1;
        for (unsigned i = 0; i < k; ++i) n_ *= p;
        if (n_ > 64) throw std::runtime_error("field too large");
        build();
    }

    unsigned order() const { return n_; }
    unsigned characteristic() const { return p_; }

    unsigned add(unsigned a, unsigned b) const { return add_[a * n_ + b]; }
    unsigned sub(unsigned a, unsigned b) const { return sub_[a * n_ + b]; }
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * n_ + b]; }
    unsigned neg(unsigned a) const { return sub(0, a); }
    unsigned inv(unsigned a) const { return inv_[a]; }

    // trace to F_p (used for char-2 point counting)
    unsigned abs_trace(unsigned a) const { return trace_[a]; }

  private:
    unsigned p_, k_, n_;
    std::vector<unsigned> add_, sub_, mul_, inv_, trace_;

    // elements are vectors of F_p digits; multiplication modulo an irreducible
    // polynomial found by exhaustive search
    void build();
};

// All Frobenius traces realised by elliptic curves over F_{q^f}.
std::set<long> brute_force_traces(unsigned q, unsigned f);

} // namespace testsupport
