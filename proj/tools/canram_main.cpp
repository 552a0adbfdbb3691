#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "canram/canonical.hpp"
#include "canram/category.hpp"
#include "canram/diagram.hpp"
#include "canram/enumerate.hpp"
#include "canram/errors.hpp"
#include "canram/json_io.hpp"
#include "canram/preadjunction.hpp"
#include "canram/structures.hpp"
#include "canram/transfers.hpp"

namespace {

using canram::Json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitBudget = 3;

struct Config {
    std::string input;
    std::string output;
    std::uint64_t max_colorings = 1'000'000;
    std::uint64_t max_points = canram::kGObjDefaultCap;
    int workers = 1;
    int indexing = 0;
};

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json config_json(const Config& cfg) {
    return Json{{"input", cfg.input.empty() ? Json(nullptr) : Json(cfg.input)},
                {"max_colorings", cfg.max_colorings},
                {"max_points", cfg.max_points},
                {"workers", cfg.workers},
                {"indexing", cfg.indexing}};
}

void emit(const Config& cfg, const std::string& command, const Json& result) {
    Json report{{"tool", "canram"},
                {"version", kVersion},
                {"command", command},
                {"config", config_json(cfg)},
                {"timestamp", iso_timestamp()},
                {"result", result}};
    if (cfg.output.empty())
        std::cout << report.dump(2) << '\n';
    else
        canram::save_json(cfg.output, report);
}

Json must_input(const Config& cfg) {
    if (cfg.input.empty()) throw canram::input_error("this command needs --input");
    return canram::load_json(cfg.input);
}

canram::JsonOptions jopts(const Config& cfg) { return {cfg.indexing}; }

// Parse and fully validate one structure, so every command sees sound data.
canram::OrderedStructure checked_structure(const Json& j, const Config& cfg) {
    canram::OrderedStructure s = canram::structure_from_json(j, jopts(cfg));
    if (auto report = canram::validate(s); !report.ok())
        throw canram::input_error("invalid " + std::string(canram::kind_name(s.kind)) +
                                  ": axiom '" + report.violations.front().axiom +
                                  "': " + report.violations.front().detail);
    return s;
}

canram::TightSet scale_from(const Json& j, const char* key) {
    if (!j.contains(key)) throw canram::input_error(std::string("missing field '") + key + "'");
    return canram::tight_set_from_json(j.at(key));
}

int run_validate(const Config& cfg) {
    const Json in = must_input(cfg);
    const Json items = in.is_array() ? in : Json::array({in});
    Json results = Json::array();
    bool all_ok = true;
    for (const auto& item : items) {
        canram::OrderedStructure s = canram::structure_from_json(item, jopts(cfg));
        const auto report = canram::validate(s);
        all_ok = all_ok && report.ok();
        Json r = canram::validation_to_json(report);
        r["kind"] = canram::kind_name(s.kind);
        r["n"] = s.n;
        results.push_back(std::move(r));
        if (!report.ok())
            std::cerr << "invalid " << canram::kind_name(s.kind) << ": axiom '"
                      << report.violations.front().axiom << "'\n";
    }
    emit(cfg, "validate", results);
    return all_ok ? kExitOk : kExitInput;
}

int run_hom(const Config& cfg, const std::string& a_path, const std::string& b_path) {
    const auto a = checked_structure(canram::load_json(a_path), cfg);
    const auto b = checked_structure(canram::load_json(b_path), cfg);
    const auto hom = canram::enumerate_embeddings(a, b);
    Json maps = Json::array();
    for (const auto& e : hom) maps.push_back(canram::embedding_map_to_json(e.map, jopts(cfg)));
    emit(cfg, "hom", Json{{"count", hom.size()}, {"maps", std::move(maps)}});
    return kExitOk;
}

int run_functor(const Config& cfg, const std::string& name, const std::string& dir) {
    const auto s = checked_structure(must_input(cfg), cfg);
    canram::OrderedStructure out = [&] {
        if (name == "gra-edig") {
            if (dir == "to_digraph") return canram::graph_to_digraph(s);
            if (dir == "to_graph") return canram::digraph_to_graph(s);
            throw canram::input_error("gra-edig direction must be to_digraph or to_graph");
        }
        if (name == "gra-tour") {
            if (dir == "to_tournament") return canram::graph_to_tournament(s);
            if (dir == "to_graph") return canram::tournament_to_graph(s);
            throw canram::input_error("gra-tour direction must be to_tournament or to_graph");
        }
        throw canram::input_error("unknown functor '" + name + "' (use gra-edig or gra-tour)");
    }();
    emit(cfg, "functor " + name + " " + dir, canram::structure_to_json(out, jopts(cfg)));
    return kExitOk;
}

int run_encode(const Config& cfg, const std::string& mode) {
    const Json in = must_input(cfg);
    if (mode == "dagger") {
        const auto rel =
            checked_structure(in.contains("structure") ? in.at("structure") : in, cfg);
        const auto enc = canram::EncodingSignature::for_arities(rel.relational().arities);
        const auto hyper = canram::dagger(rel);
        emit(cfg, "encode dagger",
             Json{{"structure", canram::structure_to_json(hyper, jopts(cfg))},
                  {"signature", canram::encoding_signature_to_json(enc)}});
        return kExitOk;
    }
    if (mode == "star") {
        const auto hyper =
            checked_structure(in.contains("structure") ? in.at("structure") : in, cfg);
        if (!in.contains("signature"))
            throw canram::input_error("encode star needs a 'signature' field");
        const auto enc = canram::encoding_signature_from_json(in.at("signature"));
        const auto rel = canram::star(hyper, enc);
        emit(cfg, "encode star", canram::structure_to_json(rel, jopts(cfg)));
        return kExitOk;
    }
    throw canram::input_error("encode mode must be dagger or star");
}

int run_compress(const Config& cfg) {
    const Json in = must_input(cfg);
    const Json& list = in.is_array() ? in : in.at("parts");
    std::vector<canram::OrderedStructure> parts;
    for (const auto& item : list) parts.push_back(checked_structure(item, cfg));
    const auto result = canram::compress_signature(parts);
    Json out = canram::compression_to_json(result);
    emit(cfg, "compress", out);
    return kExitOk;
}

struct CanInputs {
    canram::StructureRef a, b, c;
};

CanInputs can_inputs(const Json& in, const Config& cfg) {
    return {canram::share(checked_structure(in.at("a"), cfg)),
            canram::share(checked_structure(in.at("b"), cfg)),
            canram::share(checked_structure(in.at("c"), cfg))};
}

int run_can_check(const Config& cfg) {
    const Json in = must_input(cfg);
    const auto [a, b, c] = can_inputs(in, cfg);
    if (!in.contains("coloring") || !in.contains("witness"))
        throw canram::input_error("can check needs 'coloring' and 'witness' fields");
    const auto chi = canram::coloring_from_json(in.at("coloring"));
    const Json& wj = in.at("witness");
    canram::CanonicalWitness wit{
        {b, c, canram::embedding_map_from_json(wj.at("w"), jopts(cfg))}, {}};
    if (wj.contains("positions"))
        for (int p : canram::embedding_map_from_json(wj.at("positions"), jopts(cfg)))
            wit.positions.push_back(p);
    if (!canram::is_embedding(*b, *c, wit.w.map))
        throw canram::input_error("witness map is not an embedding of b into c");
    for (int p : wit.positions)
        if (p < 0 || p >= a->n) throw canram::input_error("witness position out of range");
    const auto hom_ab = canram::enumerate_embeddings(a, b);
    const auto hom_ac = canram::enumerate_embeddings(a, c);
    const bool ok = canram::is_canonical_witness(chi, wit, hom_ab, hom_ac);
    emit(cfg, "can check", Json{{"canonical", ok}});
    return ok ? kExitOk : kExitRefuted;
}

int run_can_search(const Config& cfg) {
    const Json in = must_input(cfg);
    const auto [a, b, c] = can_inputs(in, cfg);
    if (!in.contains("coloring")) throw canram::input_error("can search needs a 'coloring' field");
    const auto chi = canram::coloring_from_json(in.at("coloring"));
    const auto wit = canram::find_canonical_witness(chi, a, b, c);
    emit(cfg, "can search",
         Json{{"witness", wit ? canram::witness_to_json(*wit, jopts(cfg)) : Json(nullptr)}});
    return wit ? kExitOk : kExitRefuted;
}

int run_can_verify(const Config& cfg) {
    const Json in = must_input(cfg);
    const auto [a, b, c] = can_inputs(in, cfg);
    canram::VerifyOptions opts;
    opts.max_colorings = cfg.max_colorings;
    opts.workers = cfg.workers;
    const auto verdict = canram::verify_can_arrow(a, b, c, opts);
    emit(cfg, "can verify", canram::verdict_to_json(verdict));
    switch (verdict.outcome) {
        case canram::CanOutcome::Holds: return kExitOk;
        case canram::CanOutcome::Fails: return kExitRefuted;
        case canram::CanOutcome::Inconclusive: return kExitBudget;
    }
    return kExitInput;
}

int run_erc(const Config& cfg, int k, int m, int n_max) {
    canram::VerifyOptions opts;
    opts.max_colorings = cfg.max_colorings;
    opts.workers = cfg.workers;
    const auto report = canram::erc_search(k, m, n_max, opts);
    emit(cfg, "erc", canram::erc_report_to_json(report));
    if (report.found_n) return kExitOk;
    for (const auto& step : report.steps)
        if (step.outcome == canram::CanOutcome::Inconclusive) return kExitBudget;
    return kExitRefuted;
}

int run_preadj(const Config& cfg, const std::string& mode) {
    if (mode == "fobj") {
        const Json in = must_input(cfg);
        const auto space = checked_structure(in.at("space"), cfg);
        const auto scale = scale_from(in, "scale");
        emit(cfg, "preadj fobj",
             canram::structure_to_json(canram::f_obj(space, scale), jopts(cfg)));
        return kExitOk;
    }
    if (mode == "gobj") {
        const Json in = must_input(cfg);
        const auto poset = checked_structure(in.at("poset"), cfg);
        const auto scale = scale_from(in, "scale");
        emit(cfg, "preadj gobj",
             canram::structure_to_json(canram::g_obj(poset, scale, cfg.max_points), jopts(cfg)));
        return kExitOk;
    }
    if (mode == "phi") {
        const Json in = must_input(cfg);
        const auto space = checked_structure(in.at("space"), cfg);
        const auto target = canram::share(checked_structure(in.at("target"), cfg));
        const auto scale = scale_from(in, "scale");
        const auto level = canram::share(canram::f_obj(space, scale));
        canram::Embedding u{level, target,
                            canram::embedding_map_from_json(in.at("u"), jopts(cfg))};
        if (!canram::is_embedding(*level, *target, u.map))
            throw canram::input_error("u is not an embedding of the level poset into the target");
        const auto image = canram::phi(u, space, scale);
        emit(cfg, "preadj phi",
             Json{{"map", canram::embedding_map_to_json(image.map, jopts(cfg))},
                  {"tuple_space", canram::structure_to_json(*image.target, jopts(cfg))}});
        return kExitOk;
    }
    if (mode == "sweep") {
        canram::CpaSweepOptions opts;
        opts.workers = cfg.workers;
        opts.scales = {canram::make_tight_set({canram::rat(0), canram::rat(1)}),
                       canram::make_tight_set(
                           {canram::rat(0), canram::rat(1), canram::rat(2)})};
        if (!cfg.input.empty()) {
            const Json in = canram::load_json(cfg.input);
            if (in.contains("max_points"))
                opts.max_points = in.at("max_points").get<int>();
            if (in.contains("scales")) {
                opts.scales.clear();
                for (const auto& s : in.at("scales"))
                    opts.scales.push_back(canram::tight_set_from_json(s));
            }
        }
        const auto report = canram::run_cpa_sweep(opts);
        emit(cfg, "preadj sweep", canram::cpa_report_to_json(report));
        return report.ok ? kExitOk : kExitRefuted;
    }
    throw canram::input_error("preadj mode must be fobj, gobj, phi, or sweep");
}

int run_transfer_demo(const Config& cfg) {
    canram::StructureRef a_pos, b_pos, c_dig;
    std::optional<canram::Coloring> chi_in;
    if (!cfg.input.empty()) {
        const Json in = canram::load_json(cfg.input);
        a_pos = canram::share(checked_structure(in.at("a"), cfg));
        b_pos = canram::share(checked_structure(in.at("b"), cfg));
        c_dig = canram::share(checked_structure(in.at("c"), cfg));
        if (in.contains("coloring")) chi_in = canram::coloring_from_json(in.at("coloring"));
    } else {
        a_pos = canram::share(canram::make_poset_strict(1, {}));
        b_pos = canram::share(canram::make_poset_strict(2, {{0, 1}}));
        c_dig = canram::share(canram::make_digraph_up(3, {{0, 1}, {0, 2}, {1, 2}}));
    }
    if (a_pos->kind != canram::Kind::PosetLE || b_pos->kind != canram::Kind::PosetLE ||
        c_dig->kind != canram::Kind::ReflexiveDigraphLE)
        throw canram::input_error("transfer demo expects posets a, b and a digraph c");

    const auto a_dig = canram::share(canram::as_digraph(*a_pos));
    const auto b_dig = canram::share(canram::as_digraph(*b_pos));
    auto [diagram, edig] = canram::build_binary_diagram(a_dig, b_dig, c_dig, cfg.workers);
    const auto pos = canram::pos_closure_cocone(diagram, edig);

    Json legs_valid = Json::array();
    for (const auto& leg : pos.legs)
        legs_valid.push_back(canram::is_embedding(*leg.source, *pos.tip, leg.map));

    const auto hom_ad = canram::enumerate_embeddings(a_pos, pos.tip);
    canram::Coloring chi;
    if (chi_in) {
        if (chi_in->colors.size() != hom_ad.size())
            throw canram::input_error("coloring does not cover hom(a, closed tip)");
        chi = *chi_in;
    } else {
        chi.colors.resize(hom_ad.size());
        for (std::size_t i = 0; i < chi.colors.size(); ++i)
            chi.colors[i] = static_cast<int>(i);
    }

    Json result{{"diagram", canram::diagram_to_json(diagram, jopts(cfg))},
                {"edig_cocone", canram::cocone_to_json(edig, jopts(cfg))},
                {"pos_cocone", canram::cocone_to_json(pos, jopts(cfg))},
                {"legs_valid", std::move(legs_valid)},
                {"coloring", canram::coloring_to_json(chi)}};

    const auto prime = canram::transfer_coloring(chi, a_pos, pos, edig);
    result["transferred"] = canram::coloring_to_json(prime);

    canram::WitnessSearch search(a_dig, b_dig, c_dig);
    const auto wit_prime = search.find(prime.colors);
    result["witness"] =
        wit_prime ? canram::witness_to_json(*wit_prime, jopts(cfg)) : Json(nullptr);
    if (wit_prime) {
        try {
            const auto pulled = canram::transfer_witness(chi, *wit_prime, a_pos, pos, edig);
            result["pulled_back"] = canram::witness_to_json(pulled, jopts(cfg));
            result["pulled_back_valid"] = true;
        } catch (const canram::internal_inconsistency& ex) {
            result["pulled_back"] = Json(nullptr);
            result["pulled_back_valid"] = false;
            result["pulled_back_error"] = ex.what();
        }
    }
    emit(cfg, "transfer demo", result);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    if (const char* env = std::getenv("CANRAM_MAX_COLORINGS"))
        cfg.max_colorings = std::strtoull(env, nullptr, 10);

    CLI::App app{"Finite canonical Ramsey toolbox"};
    app.require_subcommand(1);
    app.add_option("--input", cfg.input, "input JSON file");
    app.add_option("--output", cfg.output, "report file (default: stdout)");
    app.add_option("--max-colorings", cfg.max_colorings, "coloring budget for verifications");
    app.add_option("--max-points", cfg.max_points, "size cap for generated structures");
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--indexing", cfg.indexing, "external position indexing (0 or 1)")
        ->check(CLI::Range(0, 1));

    auto* validate_cmd = app.add_subcommand("validate", "check structure axioms");

    std::string hom_a, hom_b;
    auto* hom_cmd = app.add_subcommand("hom", "enumerate embeddings between two structures");
    hom_cmd->add_option("a", hom_a, "source structure file")->required();
    hom_cmd->add_option("b", hom_b, "target structure file")->required();

    std::string functor_name, functor_dir;
    auto* functor_cmd = app.add_subcommand("functor", "apply an isomorphism functor");
    functor_cmd->add_option("name", functor_name, "gra-edig or gra-tour")->required();
    functor_cmd->add_option("dir", functor_dir, "direction")->required();

    std::string encode_mode;
    auto* encode_cmd = app.add_subcommand("encode", "relational/hypergraph encoding");
    encode_cmd->add_option("mode", encode_mode, "dagger or star")->required();

    auto* compress_cmd = app.add_subcommand("compress", "deduplicate signature families");

    auto* can_cmd = app.add_subcommand("can", "canonical arrow operations");
    can_cmd->require_subcommand(1);
    auto* can_check = can_cmd->add_subcommand("check", "test one witness");
    auto* can_search = can_cmd->add_subcommand("search", "find a witness for one coloring");
    auto* can_verify = can_cmd->add_subcommand("verify", "verify the arrow over all colorings");

    int erc_k = 0, erc_m = 0, erc_n_max = 0;
    auto* erc_cmd = app.add_subcommand("erc", "minimal chain size for the canonical arrow");
    erc_cmd->add_option("k", erc_k, "pattern size")->required();
    erc_cmd->add_option("m", erc_m, "middle size")->required();
    erc_cmd->add_option("n_max", erc_n_max, "largest size to try")->required();

    std::string preadj_mode;
    auto* preadj_cmd = app.add_subcommand("preadj", "metric/poset pre-adjunction");
    preadj_cmd->add_option("mode", preadj_mode, "fobj, gobj, phi, or sweep")->required();

    auto* transfer_cmd = app.add_subcommand("transfer", "binary diagram transfer");
    std::string transfer_mode;
    transfer_cmd->add_option("mode", transfer_mode, "demo")->required();

    for (auto* cmd : {validate_cmd, hom_cmd, functor_cmd, encode_cmd, compress_cmd, can_cmd,
                      erc_cmd, preadj_cmd, transfer_cmd})
        cmd->fallthrough();
    for (auto* cmd : {can_check, can_search, can_verify}) cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return run_validate(cfg);
        if (hom_cmd->parsed()) return run_hom(cfg, hom_a, hom_b);
        if (functor_cmd->parsed()) return run_functor(cfg, functor_name, functor_dir);
        if (encode_cmd->parsed()) return run_encode(cfg, encode_mode);
        if (compress_cmd->parsed()) return run_compress(cfg);
        if (can_cmd->parsed()) {
            if (can_check->parsed()) return run_can_check(cfg);
            if (can_search->parsed()) return run_can_search(cfg);
            if (can_verify->parsed()) return run_can_verify(cfg);
        }
        if (erc_cmd->parsed()) return run_erc(cfg, erc_k, erc_m, erc_n_max);
        if (preadj_cmd->parsed()) return run_preadj(cfg, preadj_mode);
        if (transfer_cmd->parsed()) {
            if (transfer_mode != "demo")
                throw canram::input_error("transfer mode must be demo");
            return run_transfer_demo(cfg);
        }
        std::cerr << "error: no command selected\n";
        return kExitInput;
    } catch (const canram::budget_exceeded& ex) {
        std::cerr << "budget exceeded: " << ex.what() << "\n";
        return kExitBudget;
    } catch (const canram::internal_inconsistency& ex) {
        std::cerr << "internal inconsistency: " << ex.what() << "\n";
        return kExitRefuted;
    } catch (const canram::input_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInput;
    } catch (const Json::exception& ex) {
        std::cerr << "error: malformed JSON: " << ex.what() << "\n";
        return kExitInput;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInput;
    }
}
