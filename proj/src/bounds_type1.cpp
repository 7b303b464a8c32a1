#include "isogeny/bounds_type1.hpp"

#include "isogeny/bounds_generic.hpp"
#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"
#include "isogeny/polyq.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>

#include "json.hpp"

namespace isogeny {

mpz_class BFIRecord::bad_product() const {
    mpz_class prod = 1;
    for (mpz_class p = 11; p < sgfip; p = next_prime(p)) prod *= p;
    for (const auto& p : sporadic) prod *= p;
    return prod;
}

mpz_class BFIRecord::agfi_product(const mpz_class& q) const {
    auto it = agfi.find(q);
    if (it == agfi.end()) return 1;
    mpz_class prod = 1;
    for (const auto& p : it->second) prod *= p;
    return prod;
}

BFIRecord bfi_record(int degree) {
    struct Row {
        int d;
        long sgfip;
        std::vector<long> sporadic;
    };
    static const std::vector<Row> table = {
        {2, 23, {37}},
        {3, 41, {43, 73}},
        {4, 47, {53, 61, 67, 73, 97}},
        {5, 59, {61, 67, 73, 97}},
        {6, 71, {73, 79, 83, 97, 103, 109, 113}},
        {7, 101, {103, 107, 109, 113, 127, 137, 157}},
        {8, 131, {137, 149, 157, 163, 193}},
        {9, 131, {137, 139, 149, 151, 157, 163, 181, 193}},
        {10, 167, {181, 193, 197, 211, 241}},
    };
    for (const auto& row : table) {
        if (row.d == degree) {
            BFIRecord r;
            r.degree = degree;
            r.sgfip = row.sgfip;
            for (long p : row.sporadic) r.sporadic.push_back(p);
            return r;
        }
    }
    throw Error(Errc::unsupported_degree, "no formal immersion data for degree " + std::to_string(degree));
}

std::map<int, BFIRecord> load_bfi_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse, "cannot open BFI data file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::parse, e.what());
    }
    std::map<int, BFIRecord> out;
    for (auto& [key, val] : j.items()) {
        if (key == "provenance") continue;
        BFIRecord r;
        r.degree = std::stoi(key);
        r.sgfip = mpz_class(val.at("sgfip").get<long>());
        for (const auto& p : val.at("sporadic")) r.sporadic.push_back(mpz_class(p.get<long>()));
        if (val.contains("agfi")) {
            for (auto& [q, list] : val.at("agfi").items()) {
                std::vector<mpz_class> ps;
                for (const auto& p : list) ps.push_back(mpz_class(p.get<long>()));
                r.agfi[mpz_class(q)] = std::move(ps);
            }
        }
        // consistency: every listed prime is >= 11, sporadic primes above sgfip
        if (r.sgfip < 11) throw Error(Errc::parse, "sgfip below 11 in BFI data");
        for (const auto& p : r.sporadic)
            if (p < r.sgfip) throw Error(Errc::parse, "sporadic prime below sgfip in BFI data");
        out[r.degree] = std::move(r);
    }
    return out;
}

void save_bfi_file(const std::string& path, const std::map<int, BFIRecord>& table) {
    nlohmann::json j;
    j["provenance"] = "Table 5";
    for (const auto& [d, r] : table) {
        nlohmann::json e;
        e["sgfip"] = r.sgfip.get_si();
        e["sporadic"] = nlohmann::json::array();
        for (const auto& p : r.sporadic) e["sporadic"].push_back(p.get_si());
        e["agfi"] = nlohmann::json::object();
        for (const auto& [q, list] : r.agfi) {
            nlohmann::json l = nlohmann::json::array();
            for (const auto& p : list) l.push_back(p.get_si());
            e["agfi"][q.get_str()] = l;
        }
        j[std::to_string(d)] = e;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(2) << "\n";
    }
    std::rename(tmp.c_str(), path.c_str());
}

BFIRecord bfi_record_cached(int degree, const std::string& cache_path) {
    if (!cache_path.empty()) {
        std::ifstream probe(cache_path);
        if (probe) {
            auto table = load_bfi_file(cache_path);
            auto it = table.find(degree);
            if (it != table.end()) return it->second;
        }
    }
    return bfi_record(degree);
}

namespace {

// the matrix entries depend only on residues; rows n with gcd(n, M) > 1 use
// the same least-nonnegative-residue rule
int eps_any(const mpz_class& M, const mpz_class& a) {
    mpz_class r = a % M;
    if (r < 0) r += M;
    return 2 * r < M ? 0 : 1;
}

} // namespace

int eps_M(const mpz_class& M, const mpz_class& a) {
    if (M < 3 || mpz_even_p(M.get_mpz_t()))
        throw Error(Errc::invalid_argument, "eps_M needs odd M >= 3");
    mpz_class r = a % M;
    if (r < 0) r += M;
    if (gcd0(r, M) != 1) throw Error(Errc::invalid_argument, "eps_M needs gcd(a, M) = 1");
    return 2 * r < M ? 0 : 1;
}

std::vector<std::vector<mpz_class>> formal_immersion_matrix(int d, const mpz_class& u,
                                                            const mpz_class& M) {
    std::vector<mpz_class> units;
    for (mpz_class a = 1; a < M; ++a)
        if (gcd0(a, M) == 1) units.push_back(a);
    std::vector<std::vector<mpz_class>> R(d, std::vector<mpz_class>(units.size()));
    for (int n = 1; n <= d; ++n) {
        for (size_t j = 0; j < units.size(); ++j) {
            const mpz_class& a = units[j];
            mpz_class ainv = *invmod(a, M);
            R[n - 1][j] = eps_any(M, n * a) - eps_any(M, n * u * ainv);
        }
    }
    return R;
}

mpz_class construct_M(int d) {
    mpz_class parent_bound = 65 * pow_z(mpz_class(2 * d), 6);
    for (mpz_class M = 3; M <= parent_bound; M += 2) {
        std::vector<mpz_class> units;
        for (mpz_class a = 1; a < M; ++a)
            if (gcd0(a, M) == 1) units.push_back(a);
        // per-u rank checks run in parallel; the result is their conjunction
        std::vector<std::future<bool>> futs;
        size_t nthreads = std::min<size_t>(units.size(), 8);
        size_t chunk = (units.size() + nthreads - 1) / nthreads;
        for (size_t t = 0; t < nthreads; ++t) {
            size_t lo = t * chunk, hi = std::min(units.size(), lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
                for (size_t i = lo; i < hi; ++i) {
                    auto R = formal_immersion_matrix(d, units[i], M);
                    if (polyq::rank_bareiss(R) != d) return false;
                }
                return true;
            }));
        }
        bool all_ok = true;
        for (auto& f : futs)
            if (!f.get()) all_ok = false;
        if (all_ok) return M;
    }
    throw Error(Errc::search_exhausted, "no M below Parent's bound for degree " + std::to_string(d));
}

TypeOneResult type_one_bound(const FieldContext& field, const std::vector<mpz_class>& aux_q,
                             const BFIRecord& bfi) {
    if (aux_q.empty()) throw Error(Errc::aux_empty, "Type 1 bound needs auxiliary rational primes");
    for (const auto& q : aux_q)
        if (q == 2) throw Error(Errc::even_aux, "Type 1 auxiliary primes must be odd");

    const DefiningField& nf = field.nf();
    Signature eps0(nf.aut_count(), 0);
    TypeOneResult out;
    out.bfi_product = bfi.bad_product();
    out.d_aux = 0;
    for (const auto& q : aux_q) {
        auto primes = field.primes_above(q);
        if (primes.empty()) continue; // backend cannot materialise this prime
        for (const auto& pd : primes) {
            ABCRecord r = abc_record(eps0, pd, field);
            mpz_class term = lcm0(lcm0(r.B, r.C), lcm0(pd.norm(), bfi.agfi_product(q)));
            out.d_aux = out.d_aux == 0 ? term : gcd0(out.d_aux, term);
        }
        out.aux_used.push_back(q);
    }
    if (out.d_aux == 0) throw Error(Errc::aux_empty, "no usable Type 1 auxiliary primes");
    out.bound = lcm0(out.bfi_product, out.d_aux);
    return out;
}

} // namespace isogeny
