#include "isogeny/bounds_type2.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"

namespace isogeny {

mpz_class type2_grh_bound(int d, const mpz_class& disc) {
    if (d < 1 || disc == 0) throw Error(Errc::invalid_argument, "type2_grh_bound arguments");
    long double logdisc = 0;
    {
        // log|disc| via mpz -> double mantissa/exponent split
        signed long exp2;
        double m = mpz_get_d_2exp(&exp2, disc.get_mpz_t());
        logdisc = std::log(std::fabs((long double)m)) + (long double)exp2 * std::log(2.0L);
    }
    auto rhs = [&](long double p) {
        long double t = 8.0L * d * std::log(12.0L * p) + 16.0L * logdisc + 10.0L * d + 6.0L;
        return t * t * t * t;
    };
    long double b = 1e30L; // overestimate
    for (int i = 0; i < 200; ++i) {
        long double nb = rhs(b);
        if (std::fabs(nb - b) < 0.5L) {
            b = nb;
            break;
        }
        b = nb;
    }
    // smallest integer B with rhs(B) < B + 1, i.e. every p > B fails p <= rhs(p)
    mpz_class B(std::ceil((double)b));
    while (rhs((long double)B.get_d() + 1.0L) >= (long double)B.get_d() + 1.0L) ++B;
    while (B > 1 && rhs((long double)B.get_d()) < (long double)B.get_d()) --B;
    return B;
}

namespace {

// primes q of the field usable in the Condition-CC loop: odd residue degree,
// cached ascending with their norms
struct UsableAux {
    mpz_class q;
    unsigned f;
    mpz_class norm;
};

std::vector<UsableAux> usable_aux_up_to(const FieldContext& field, const mpz_class& bound,
                                        std::vector<UsableAux>& cache, mpz_class& cache_cursor) {
    while (cache_cursor < bound) {
        mpz_class q = next_prime(cache_cursor);
        cache_cursor = q;
        auto info = field.splitting(q);
        if (!info) continue; // unknown splitting: skip soundly
        if (info->f % 2 == 0) continue;
        cache.push_back({q, info->f, pow_z(q, info->f)});
    }
    return cache;
}

bool splits_in_Q_sqrt_minus_p(const mpz_class& q, const mpz_class& p) {
    if (q == 2) {
        // 2 splits iff -p = 1 mod 8
        mpz_class r = (-p) % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    return kronecker(-p, q) == 1;
}

} // namespace

bool satisfies_condition_cc(const FieldContext& field, const mpz_class& p) {
    // local cache rebuilt per call; the scanner uses the batched path below
    std::vector<UsableAux> cache;
    mpz_class cursor = 1;
    auto aux = usable_aux_up_to(field, p / 4 + 1, cache, cursor);
    for (const auto& a : aux) {
        if (4 * a.norm >= p) continue;
        if (a.q == p) continue;
        mpz_class w = (powmod(a.norm, 2, p) + a.norm + 1) % p;
        if (w == 0) continue;
        if (splits_in_Q_sqrt_minus_p(a.q, p)) return false;
    }
    return true;
}

namespace {

constexpr unsigned long kBlockSize = 1 << 16;

struct Checkpoint {
    std::string field_label;
    mpz_class cap;
    unsigned shards = 1;
    std::set<unsigned long> completed_blocks;
    std::set<mpz_class> survivors;
};

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse, "cannot open checkpoint " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::parse, e.what());
    }
    Checkpoint c;
    c.field_label = j.at("field").get<std::string>();
    c.cap = mpz_class(j.at("cap").get<std::string>());
    c.shards = j.at("shards").get<unsigned>();
    for (const auto& b : j.at("completed_blocks")) c.completed_blocks.insert(b.get<unsigned long>());
    for (const auto& s : j.at("survivors")) c.survivors.insert(mpz_class(s.get<std::string>()));
    return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    nlohmann::json j;
    j["field"] = c.field_label;
    j["cap"] = c.cap.get_str();
    j["shards"] = c.shards;
    j["block_size"] = kBlockSize;
    j["completed_blocks"] = nlohmann::json::array();
    for (auto b : c.completed_blocks) j["completed_blocks"].push_back(b);
    j["survivors"] = nlohmann::json::array();
    for (const auto& s : c.survivors) j["survivors"].push_back(s.get_str());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump() << "\n";
    }
    std::rename(tmp.c_str(), path.c_str());
}

} // namespace

Type2ScanResult type2_scan(const FieldContext& field, const Type2ScanConfig& config) {
    Type2ScanResult result;
    result.grh_bound = type2_grh_bound(field.degree(), field.discriminant());
    result.cap = config.cap;
    result.cap_below_grh_bound = config.cap < result.grh_bound;

    Checkpoint ck;
    ck.field_label = field.label();
    ck.cap = config.cap;
    ck.shards = std::max(1u, config.shards);
    if (!config.resume_path.empty()) {
        Checkpoint prev = load_checkpoint(config.resume_path);
        if (prev.field_label != ck.field_label || prev.cap != ck.cap)
            throw Error(Errc::invalid_argument, "checkpoint does not match this run");
        ck = std::move(prev);
    }

    if (config.cap < 17) {
        if (!config.checkpoint_path.empty()) save_checkpoint(config.checkpoint_path, ck);
        return result;
    }

    // shared aux cache: all usable q with q^f < cap/4, built once up front
    std::vector<UsableAux> aux;
    {
        std::vector<UsableAux> cache;
        mpz_class cursor = 1;
        // q itself is at most cap/4 (f >= 1)
        usable_aux_up_to(field, config.cap / 4 + 2, cache, cursor);
        aux = std::move(cache);
    }

    mpz_class blocks_z = mpz_class(config.cap - 17) / static_cast<unsigned long>(kBlockSize) + 1;
    unsigned long total_blocks = mpz_get_ui(blocks_z.get_mpz_t());

    std::mutex mu;
    std::vector<std::thread> workers;
    unsigned shards = ck.shards;

    auto scan_block = [&](unsigned long blk, std::set<mpz_class>& local) {
        mpz_class lo = 17 + mpz_class(blk) * kBlockSize;
        mpz_class hi = std::min(mpz_class(lo + kBlockSize - 1), config.cap);
        // iterate primes p = 3 mod 4 in [lo, hi]
        mpz_class p = lo - 1;
        while (true) {
            p = next_prime(p);
            if (p > hi) break;
            if (p % 4 != 3) continue;
            bool survives = true;
            for (const auto& a : aux) {
                if (4 * a.norm >= p) break; // aux sorted ascending by q; norms not monotone
                if (a.q == p) continue;
                mpz_class w = (powmod(a.norm, 2, p) + a.norm + 1) % p;
                if (w == 0) continue;
                if (splits_in_Q_sqrt_minus_p(a.q, p)) {
                    survives = false;
                    break;
                }
            }
            if (survives) local.insert(p);
        }
    };

    // norms are not monotone in q for mixed residue degrees; sort aux by norm
    std::sort(aux.begin(), aux.end(),
              [](const UsableAux& x, const UsableAux& y) { return x.norm < y.norm; });

    auto worker = [&](unsigned shard) {
        for (unsigned long blk = shard; blk < total_blocks; blk += shards) {
            {
                std::lock_guard<std::mutex> lock(mu);
                if (ck.completed_blocks.count(blk)) continue;
            }
            std::set<mpz_class> local;
            scan_block(blk, local);
            std::lock_guard<std::mutex> lock(mu);
            ck.completed_blocks.insert(blk);
            for (auto& s : local) ck.survivors.insert(s);
            if (!config.checkpoint_path.empty()) save_checkpoint(config.checkpoint_path, ck);
        }
    };

    if (shards == 1) {
        worker(0);
    } else {
        for (unsigned s = 0; s < shards; ++s) workers.emplace_back(worker, s);
        for (auto& w : workers) w.join();
    }

    for (const auto& s : ck.survivors)
        if (s <= config.cap) result.survivors.push_back(s);
    std::sort(result.survivors.begin(), result.survivors.end());
    return result;
}

} // namespace isogeny
