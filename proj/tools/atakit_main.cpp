// atakit — decision procedures for one-clock alternating timed automata:
// membership, emptiness, universality, containment, and the lossy-channel
// reduction as a stress generator.

#include "ata/channels.hpp"
#include "ata/decision.hpp"
#include "ata/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ata::Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ata::Ata load_ata(const std::string& path, bool lenient) {
    ata::Ata a = ata::parse_ata(slurp(path));
    ata::PartitionReport rep = ata::check_partition(a, !lenient);
    if (!rep.ok())
        throw ata::IllFormedAutomaton(path + ": guard partition violated: " +
                                      rep.to_string(a));
    return a;
}

struct Options {
    bool json = false;
    bool lenient = false;
    bool ancestor_pruning = false;
    bool no_trap_pruning = false;
    double budget = 0.0;

    ata::SearchOptions search() const {
        ata::SearchOptions s;
        s.ancestor_pruning_only = ancestor_pruning;
        s.prune_traps = !no_trap_pruning;
        if (budget > 0.0) s.budget_seconds = budget;
        return s;
    }
};

void emit(const Options& opt, const nlohmann::json& j, const std::string& text) {
    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

int cmd_member(const Options& opt, const std::string& ata_path,
               const std::string& word_path) {
    ata::Ata a = load_ata(ata_path, opt.lenient);
    ata::TimedWord w = ata::parse_timed_word(slurp(word_path));
    bool in = ata::accepts(a, w);
    nlohmann::json j;
    j["verdict"] = in ? "accepted" : "rejected";
    j["word"] = w.to_string();
    emit(opt, j, in ? "accepted" : "rejected");
    return in ? 0 : 1;
}

int cmd_empty(const Options& opt, const std::string& ata_path) {
    ata::Ata a = load_ata(ata_path, opt.lenient);
    ata::EmptinessResult r = ata::check_empty(a, opt.search());
    nlohmann::json j = ata::report_json(r.is_empty ? "empty" : "nonempty", r.witness,
                                        r.path, a, r.stats);
    std::string text = r.is_empty ? "empty"
                                  : "nonempty; witness: " + r.witness.to_string();
    emit(opt, j, text);
    return r.is_empty ? 0 : 1;
}

int cmd_universal(const Options& opt, const std::string& ata_path) {
    ata::Ata a = load_ata(ata_path, opt.lenient);
    ata::UniversalityResult r = ata::check_universal(a, opt.search());
    nlohmann::json j;
    j["verdict"] = r.universal ? "universal" : "not_universal";
    j["witness"] = r.counterexample.to_string();
    j["region_path"] = nlohmann::json::array();
    j["nodes_expanded"] = r.stats.nodes_expanded;
    j["nodes_pruned"] = r.stats.nodes_pruned;
    j["elapsed_ms"] = r.stats.elapsed_ms;
    std::string text = r.universal
                           ? "universal"
                           : "not universal; rejected word: " +
                                 r.counterexample.to_string();
    emit(opt, j, text);
    return r.universal ? 0 : 1;
}

int cmd_contains(const Options& opt, const std::string& a_path,
                 const std::string& b_path) {
    ata::Ata a = load_ata(a_path, opt.lenient);
    ata::Ata b = load_ata(b_path, opt.lenient);
    ata::ContainmentResult r = ata::check_contains(a, b, opt.search());
    nlohmann::json j;
    j["verdict"] = r.contained ? "contained" : "not_contained";
    j["witness"] = r.counterexample.to_string();
    j["region_path"] = nlohmann::json::array();
    j["nodes_expanded"] = r.stats.nodes_expanded;
    j["nodes_pruned"] = r.stats.nodes_pruned;
    j["elapsed_ms"] = r.stats.elapsed_ms;
    std::string text = r.contained ? "contained"
                                   : "not contained; separating word: " +
                                         r.counterexample.to_string();
    emit(opt, j, text);
    return r.contained ? 0 : 1;
}

int cmd_gen_lcs(const Options& opt, const std::string& lcs_path,
                const std::string& out_path) {
    ata::ChannelSystem s = ata::parse_lcs(slurp(lcs_path));
    if (s.goal_state < 0) throw ata::Error(lcs_path + ": missing 'goal' line");
    ata::Ata a = ata::build_reduction_ata(s, s.goal_state, s.goal_channel);
    std::ofstream out(out_path);
    if (!out) throw ata::Error("cannot write '" + out_path + "'");
    out << ata::print_ata(a);
    nlohmann::json j;
    j["verdict"] = "generated";
    j["locations"] = a.locations.size();
    j["letters"] = a.alphabet.size();
    j["out"] = out_path;
    emit(opt, j,
         "wrote " + out_path + " (" + std::to_string(a.locations.size()) +
             " locations over " + std::to_string(a.alphabet.size()) + " letters)");
    return 0;
}

int cmd_validate_encoding(const Options& opt, const std::string& lcs_path,
                          const std::string& word_path) {
    ata::ChannelSystem s = ata::parse_lcs(slurp(lcs_path));
    if (s.goal_state < 0) throw ata::Error(lcs_path + ": missing 'goal' line");
    ata::TimedWord w = ata::parse_timed_word(slurp(word_path));
    ata::EncodingReport rep = ata::validate_encoding(s, w, s.goal_state, s.goal_channel);
    nlohmann::json j;
    j["verdict"] = rep.ok ? "ok" : "violation";
    j["condition"] = rep.condition;
    j["detail"] = rep.detail;
    emit(opt, j, rep.to_string());
    return rep.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-clock alternating timed automata toolkit"};
    app.require_subcommand(1);

    Options opt;
    std::string report_mode = "text";
    app.add_option("--report", report_mode, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget", opt.budget, "wall-clock budget in seconds");
    app.add_flag("--lenient", opt.lenient,
                 "check the guard partition only for reachable locations");
    app.add_flag("--ancestor-pruning", opt.ancestor_pruning,
                 "prune only against ancestors (can blow up; default prunes "
                 "against all kept nodes)");
    app.add_flag("--no-trap-pruning", opt.no_trap_pruning,
                 "disable rejecting-trap pruning");

    std::string ata_path, ata_path2, word_path, lcs_path, out_path;

    auto* member = app.add_subcommand("member", "timed word membership");
    member->add_option("automaton", ata_path)->required();
    member->add_option("word", word_path)->required();

    auto* empty = app.add_subcommand("empty", "language emptiness");
    empty->add_option("automaton", ata_path)->required();

    auto* universal = app.add_subcommand("universal", "language universality");
    universal->add_option("automaton", ata_path)->required();

    auto* contains = app.add_subcommand("contains", "language containment L(A) in L(B)");
    contains->add_option("automaton_a", ata_path)->required();
    contains->add_option("automaton_b", ata_path2)->required();

    auto* gen = app.add_subcommand("gen-lcs", "emit the reduction automaton of a "
                                              "lossy channel system");
    gen->add_option("system", lcs_path)->required();
    gen->add_option("--out", out_path, "output .ata path")->required();

    auto* val = app.add_subcommand("validate-encoding",
                                   "check a timed word against the computation "
                                   "encoding conditions");
    val->add_option("system", lcs_path)->required();
    val->add_option("word", word_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    opt.json = report_mode == "json";

    try {
        if (member->parsed()) return cmd_member(opt, ata_path, word_path);
        if (empty->parsed()) return cmd_empty(opt, ata_path);
        if (universal->parsed()) return cmd_universal(opt, ata_path);
        if (contains->parsed()) return cmd_contains(opt, ata_path, ata_path2);
        if (gen->parsed()) return cmd_gen_lcs(opt, lcs_path, out_path);
        if (val->parsed()) return cmd_validate_encoding(opt, lcs_path, word_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
