// Command line driver: computes a finite superset of the isogeny primes of a
// quadratic field (native arithmetic) or of a Galois number field supplied as
// a field-data file.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "isogeny/errors.hpp"
#include "isogeny/intmath.hpp"
#include "isogeny/galois_backend.hpp"
#include "isogeny/pipeline.hpp"
#include "isogeny/quad_backend.hpp"

using namespace isogeny;

namespace {

int run(const FieldContext& field, const RunConfig& config, const std::string& format,
        const std::string& out_path) {
    SupersetReport report = run_combined(field, config);
    std::string payload = format == "json" ? report.to_json() : report.to_text();
    if (out_path.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 1;
        }
        out << payload << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isogeny prime supersets for quadratic and Galois number fields"};
    app.require_subcommand(1);

    std::string aux_bound, type1_aux_csv, type2_cap = "1000000";
    unsigned auto_stop = 4, shards = 1, ice_aux = 10;
    bool semistable = false, no_ice = false;
    std::string format = "text", out_path, bfi_cache, checkpoint, resume;

    app.add_option("--aux-bound", aux_bound,
                   "fixed-norm auxiliary strategy with this norm bound (default: auto-stop)");
    app.add_option("--auto-stop", auto_stop, "auto-stop after this many identical bounds")
        ->default_val(4);
    app.add_option("--type1-aux", type1_aux_csv, "comma separated odd auxiliary primes");
    app.add_option("--type2-cap", type2_cap, "scan Momose Type 2 candidates up to this bound")
        ->default_val("1000000");
    app.add_option("--shards", shards, "worker shards for the Type 2 scan")->default_val(1);
    app.add_option("--resume", resume, "resume a Type 2 scan from this checkpoint file");
    app.add_option("--checkpoint", checkpoint, "write Type 2 scan checkpoints to this file");
    app.add_flag("--semistable", semistable, "restrict to semistable isogeny primes (unconditional)");
    app.add_flag("--no-ice", no_ice, "disable isogeny character enumeration weeding");
    app.add_option("--ice-aux", ice_aux, "tested split primes per candidate in the ICE filter")
        ->default_val(10);
    app.add_option("--format", format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "write the report to this path");
    app.add_option("--bfi-cache", bfi_cache, "formal immersion data cache file");

    std::string D_str;
    auto* quad = app.add_subcommand("quadratic", "quadratic field Q(sqrt(D)) for squarefree D");
    quad->add_option("D", D_str, "squarefree integer D")->required();

    std::string field_path;
    auto* galois = app.add_subcommand("galois", "Galois field from a field-data JSON file");
    galois->add_option("path", field_path, "field data file")->required();

    CLI11_PARSE(app, argc, argv);

    RunConfig config;
    if (!aux_bound.empty()) {
        config.aux.kind = AuxStrategy::Kind::NormBound;
        config.aux.norm_bound = mpz_class(aux_bound);
    } else {
        config.aux.kind = AuxStrategy::Kind::AutoStop;
        config.aux.auto_stop = auto_stop;
    }
    if (!type1_aux_csv.empty()) {
        std::stringstream ss(type1_aux_csv);
        std::string item;
        while (std::getline(ss, item, ',')) config.type1_aux.push_back(mpz_class(item));
    }
    config.type2_cap = mpz_class(type2_cap);
    config.shards = shards;
    config.checkpoint_path = checkpoint;
    config.resume_path = resume;
    config.semistable = semistable;
    config.use_ice = !no_ice;
    config.ice.aux_count = ice_aux;
    config.bfi_cache_path = bfi_cache;

    try {
        if (quad->parsed()) {
            mpz_class D(D_str);
            if (abs_z(D) > 10000000)
                throw Error(Errc::invalid_argument, "|D| is limited to 10^7");
            QuadField field(D);
            if (field.rejected_infinite())
                throw Error(Errc::reject_infinite,
                            "Q(sqrt(" + D.get_str() +
                                ")) is imaginary quadratic of class number one; its isogeny "
                                "prime set is infinite");
            return run(field, config, format, out_path);
        }
        auto field = GaloisField::load(field_path);
        return run(*field, config, format, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case Errc::parse:
        case Errc::non_monic:
        case Errc::aut_not_root:
        case Errc::bad_generator_norm:
        case Errc::bad_sqrt:
        case Errc::not_split:
        case Errc::non_galois:
            return 3; // data-file validation failure
        default:
            return 2; // invalid field / configuration
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
