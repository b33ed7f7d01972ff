#include "ata/decision.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace ata {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;

    static Deadline from(const SearchOptions& opts) {
        Deadline d;
        if (opts.budget_seconds)
            d.at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*opts.budget_seconds));
        return d;
    }
    void check(const char* what) const {
        if (at && Clock::now() > *at)
            throw TimeoutError(std::string(what) + ": budget exhausted");
    }
};

bool word_hits_traps(const RegionWord& w, const std::vector<bool>& trap) {
    for (const auto& letter : w.letters)
        for (const auto& [q, r] : letter)
            if (trap[q]) return true;
    return false;
}

} // namespace

std::vector<bool> rejecting_traps(const Ata& a) {
    std::vector<bool> trap(a.locations.size());
    for (size_t q = 0; q < trap.size(); ++q) trap[q] = !a.accepting[q];
    // Greatest fixpoint: stay a trap only if every disjunct of every rule
    // necessarily produces another trap location.
    bool changed = true;
    while (changed) {
        changed = false;
        for (LocId q = 0; q < static_cast<LocId>(trap.size()); ++q) {
            if (!trap[q]) continue;
            bool escapes = false;
            for (const auto& cells : a.rules[q]) {
                for (const auto& r : cells) {
                    if (r.guard.is_empty()) continue;
                    for (const auto& conjunct : to_dnf(r.formula)) {
                        bool produces_trap = false;
                        for (const auto& [to, reset] : conjunct)
                            if (trap[to]) { produces_trap = true; break; }
                        if (!produces_trap) { escapes = true; break; }
                    }
                    if (escapes) break;
                }
                if (escapes) break;
            }
            if (escapes) {
                trap[q] = false;
                changed = true;
            }
        }
    }
    return trap;
}

namespace {

struct Node {
    RegionWord word;
    int parent = -1;
    LetterId letter = -1;
    int depth = 0;
};

std::vector<PathStep> path_to(const std::vector<Node>& nodes, int idx) {
    std::vector<PathStep> path;
    for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent)
        path.push_back({nodes[i].letter, nodes[i].word});
    std::reverse(path.begin(), path.end());
    return path;
}

std::string path_serial(const Ata& a, const std::vector<PathStep>& path) {
    std::string out;
    for (const auto& step : path) {
        out += a.alphabet[step.letter];
        out += " -> ";
        out += region_word_to_string(step.word, a);
        out += " ; ";
    }
    return out;
}

} // namespace

EmptinessResult check_empty(const Ata& a, const SearchOptions& opts) {
    require_partition(a);
    Deadline deadline = Deadline::from(opts);
    auto started = Clock::now();
    std::vector<bool> trap = opts.prune_traps ? rejecting_traps(a)
                                              : std::vector<bool>(a.locations.size(), false);

    EmptinessResult result;
    auto finish = [&](bool empty, std::vector<PathStep> path) {
        result.is_empty = empty;
        result.path = std::move(path);
        if (!empty) result.witness = concretize_witness(a, result.path);
        result.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - started).count();
        return result;
    };

    std::vector<Node> nodes;
    nodes.push_back({initial_region_word(a), -1, -1, 0});
    if (is_bad_word(nodes[0].word, a)) return finish(false, {});
    if (word_hits_traps(nodes[0].word, trap)) return finish(true, {});

    std::set<RegionWord> seen{nodes[0].word};
    std::vector<int> level{0};

    while (!level.empty()) {
        std::vector<int> next_level;
        std::vector<int> bad_nodes;
        for (int idx : level) {
            deadline.check("check_empty");
            result.stats.nodes_expanded++;
            if (opts.max_nodes && result.stats.nodes_expanded > opts.max_nodes)
                throw TimeoutError("check_empty: node limit exceeded");
            auto succs = successors(nodes[idx].word, a);
            for (auto& [letter, word] : succs) {
                if (word_hits_traps(word, trap)) {
                    result.stats.nodes_pruned++;
                    continue;
                }
                if (seen.count(word)) {
                    result.stats.nodes_pruned++;
                    continue;
                }
                bool dominated = false;
                if (opts.ancestor_pruning_only) {
                    for (int anc = idx; anc >= 0 && !dominated; anc = nodes[anc].parent)
                        dominated = preceq(nodes[anc].word, word);
                } else {
                    // Kept nodes never exceed the child's depth in this
                    // breadth-first order, so minimal witness depth survives.
                    for (const auto& n : nodes)
                        if (preceq(n.word, word)) { dominated = true; break; }
                }
                if (dominated) {
                    result.stats.nodes_pruned++;
                    continue;
                }
                seen.insert(word);
                nodes.push_back({std::move(word), idx, letter, nodes[idx].depth + 1});
                int child = static_cast<int>(nodes.size() - 1);
                if (is_bad_word(nodes[child].word, a))
                    bad_nodes.push_back(child);
                else
                    next_level.push_back(child);
            }
        }
        if (!bad_nodes.empty()) {
            // Shortest by construction; break depth ties on the serialized path.
            int best = bad_nodes[0];
            std::string best_key = path_serial(a, path_to(nodes, best));
            for (size_t i = 1; i < bad_nodes.size(); ++i) {
                std::string key = path_serial(a, path_to(nodes, bad_nodes[i]));
                if (key < best_key) {
                    best = bad_nodes[i];
                    best_key = std::move(key);
                }
            }
            return finish(false, path_to(nodes, best));
        }
        level = std::move(next_level);
    }
    return finish(true, {});
}

UniversalityResult check_universal(const Ata& a, const SearchOptions& opts) {
    EmptinessResult r = check_empty(complement(a), opts);
    UniversalityResult out;
    out.universal = r.is_empty;
    out.counterexample = std::move(r.witness);
    out.stats = r.stats;
    return out;
}

ContainmentResult check_contains(const Ata& a, const Ata& b,
                                 const SearchOptions& opts) {
    EmptinessResult r = check_empty(combine(a, complement(b), CombineMode::And), opts);
    ContainmentResult out;
    out.contained = r.is_empty;
    out.counterexample = std::move(r.witness);
    out.stats = r.stats;
    return out;
}

namespace {

Rat max_fract(const ConfigSet& p) {
    Rat m(0);
    for (const auto& [q, v] : p) m = std::max(m, rat_fract(v));
    return m;
}

bool has_zero_fract(const ConfigSet& p) {
    for (const auto& [q, v] : p)
        if (rat_fract(v) == Rat(0)) return true;
    return false;
}

/// One discrete move of a delayed configuration set under explicit
/// per-configuration disjunct choices.
ConfigSet apply_choices(const ConfigSet& p, const std::vector<Dnf>& dnfs,
                        const std::vector<size_t>& pick) {
    std::vector<Config> merged;
    for (size_t i = 0; i < p.size(); ++i) {
        const Rat& moved = p[i].second;
        for (const auto& [to, reset] : dnfs[i][pick[i]])
            merged.push_back({to, reset ? Rat(0) : moved});
    }
    return make_config_set(std::move(merged));
}

/// Everything about a delayed set that determines which abstractions its
/// discrete moves can produce: per configuration its region, the rank of
/// its fractional part, and whether that part is zero. Two delays with
/// equal signatures behave identically, so the ladder samples one of each.
using LadderSignature = std::vector<std::tuple<int, int, bool>>;

LadderSignature ladder_signature(const ConfigSet& p, long long cmax) {
    std::set<Rat> fracts;
    for (const auto& [q, v] : p) fracts.insert(rat_fract(v));
    LadderSignature sig;
    sig.reserve(p.size());
    for (const auto& [q, v] : p) {
        Rat f = rat_fract(v);
        int rank = static_cast<int>(std::distance(fracts.begin(), fracts.find(f)));
        sig.push_back({region_of(v, cmax).index, rank, f == Rat(0)});
    }
    return sig;
}

} // namespace

TimedWord concretize_witness(const Ata& a, const std::vector<PathStep>& path) {
    const long long cmax = a.cmax();
    ConfigSet current = {{a.initial, Rat(0)}};
    Rat now(0);
    TimedWord witness;

    for (const auto& step : path) {
        bool committed = false;
        // Walk the delay ladder of the current concrete set: while a zero
        // fractional part is present, half the gap to the next boundary
        // opens it; otherwise the exact remaining amount reaches the
        // boundary. Stop when the arrangement cycles.
        std::set<LadderSignature> seen;
        Rat extra(0);
        while (true) {
            ConfigSet moved = delayed(current, extra);
            if (!seen.insert(ladder_signature(moved, cmax)).second) break;

            // All disjunct-choice combinations at this delay.
            std::vector<Dnf> dnfs;
            dnfs.reserve(moved.size());
            for (const auto& [q, v] : moved)
                dnfs.push_back(to_dnf(applicable_rule(a, q, step.letter, v).formula));
            std::vector<size_t> pick(moved.size(), 0);
            bool more = true;
            while (more) {
                ConfigSet next = apply_choices(moved, dnfs, pick);
                if (preceq(abstract_H(next, cmax), step.word)) {
                    now += extra;
                    witness.items.push_back({a.alphabet[step.letter], now});
                    current = std::move(next);
                    committed = true;
                    break;
                }
                size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (++pick[i] < dnfs[i].size()) break;
                    pick[i] = 0;
                }
                more = i < pick.size();
            }
            if (committed || moved.empty()) break;

            Rat gap = Rat(1) - max_fract(moved);
            extra += has_zero_fract(moved) ? gap / 2 : gap;
        }
        if (!committed)
            throw Error("witness concretization failed to realize the region path");
    }

    if (!accepts(a, witness))
        throw Error("internal error: concretized witness rejected");
    return witness;
}

nlohmann::json report_json(const std::string& verdict, const TimedWord& witness,
                           const std::vector<PathStep>& path, const Ata& a,
                           const SearchStats& stats) {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["witness"] = witness.to_string();
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : path) {
        nlohmann::json e;
        e["letter"] = a.alphabet[s.letter];
        e["word"] = region_word_to_string(s.word, a);
        steps.push_back(std::move(e));
    }
    j["region_path"] = std::move(steps);
    j["nodes_expanded"] = stats.nodes_expanded;
    j["nodes_pruned"] = stats.nodes_pruned;
    j["elapsed_ms"] = stats.elapsed_ms;
    return j;
}

} // namespace ata
