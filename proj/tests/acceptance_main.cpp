// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are wall-clock and part of the verdict.

#include "ata/decision.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ata;
using testutil::Rng;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

bool has_unit_pair(const TimedWord& w) {
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (w.items[j].time - w.items[i].time == Rat(1)) return true;
    return false;
}

TimedWord word_without_unit_pair(Rng& rng, size_t len) {
    while (true) {
        TimedWord w;
        Rat t(0);
        for (size_t i = 0; i < len; ++i) {
            t += Rat(rng.int_in(0, 6), 7);
            w.items.push_back({"a", t});
        }
        if (!has_unit_pair(w)) return w;
    }
}

TimedWord word_with_unit_pair(Rng& rng, size_t len) {
    while (true) {
        TimedWord w;
        Rat t(0);
        for (size_t i = 0; i + 1 < len; ++i) {
            t += Rat(rng.int_in(0, 5), rng.int_in(1, 4));
            w.items.push_back({"a", t});
        }
        size_t anchor = rng.below(w.size());
        w.items.push_back({"a", w.items[anchor].time + Rat(1)});
        std::sort(w.items.begin(), w.items.end(),
                  [](const TimedLetter& x, const TimedLetter& y) {
                      return x.time < y.time;
                  });
        if (has_unit_pair(w)) return w;
    }
}

// --------------------------------------------------------------------------
// criterion bodies
// --------------------------------------------------------------------------

bool run_example_behavior(std::string& detail) {
    Ata ex1 = testutil::example_one();
    if (!accepts(ex1, parse_timed_word("a@0.3 a@0.7"))) {
        detail = "close pair rejected";
        return false;
    }
    if (accepts(ex1, parse_timed_word("a@0.3 a@1.3"))) {
        detail = "unit pair accepted";
        return false;
    }
    Rng rng(101);
    for (int i = 0; i < 20; ++i) {
        TimedWord w = word_without_unit_pair(rng, 2 + rng.below(3));
        if (!accepts(ex1, w)) {
            detail = "rejected pair-free word " + w.to_string();
            return false;
        }
    }
    for (int i = 0; i < 20; ++i) {
        TimedWord w = word_with_unit_pair(rng, 2 + rng.below(3));
        if (accepts(ex1, w)) {
            detail = "accepted unit-pair word " + w.to_string();
            return false;
        }
    }
    return true;
}

bool run_complement_duality(std::string& detail) {
    Rng rng(202);
    for (int round = 0; round < 200; ++round) {
        Ata a = testutil::random_ata(rng);
        Ata na = complement(a);
        for (int k = 0; k < 5; ++k) {
            TimedWord w = testutil::random_word(rng, a.alphabet);
            if (accepts(na, w) == accepts(a, w)) {
                std::ostringstream os;
                os << "duality failed on round " << round << ", word "
                   << w.to_string();
                detail = os.str();
                return false;
            }
        }
    }
    return true;
}

bool run_worked_H_example(std::string& detail) {
    Ata a = testutil::worked_example();
    LocId q1 = a.find_location("q1");
    LocId q2 = a.find_location("q2");
    LocId q3 = a.find_location("q3");
    ConfigSet p = {{q1, Rat(1, 2)}, {q2, Rat(6, 5)}, {q3, Rat(11, 5)}};
    RegionWord w = abstract_H(p, 2);
    if (region_word_to_string(w, a) != "{q2:(1,2), q3:(2,inf)} {q1:(0,1)}") {
        detail = "H gave " + region_word_to_string(w, a);
        return false;
    }
    RegionWord first = make_region_word(
        {make_region_letter({{q1, Region::point(0)}}),
         make_region_letter({{q1, Region::open_between(1)}}),
         make_region_letter({{q2, Region::open_between(1)}})},
        true);
    RegionWord second = make_region_word(
        {make_region_letter({{q1, Region::open_between(1)}}),
         make_region_letter({{q2, Region::open_between(1)},
                             {q2, Region::tail(2)},
                             {q3, Region::tail(2)}})},
        false);
    auto succ = successors(w, a);
    for (const RegionWord* target : {&first, &second}) {
        if (std::find(succ.begin(), succ.end(), std::make_pair(LetterId{0}, *target)) ==
            succ.end()) {
            detail = "missing successor " + region_word_to_string(*target, a);
            return false;
        }
    }
    return true;
}

bool run_bisimulation(std::string& detail) {
    Rng rng(404);
    for (int round = 0; round < 300; ++round) {
        Ata a = testutil::random_ata(rng);
        long long cmax = a.cmax();
        ConfigSet p = testutil::random_config_set(rng, a);
        LetterId letter = static_cast<LetterId>(rng.below(a.alphabet.size()));
        Rat delay(rng.int_in(0, 6), rng.int_in(1, 3));
        RegionWord w = abstract_H(p, cmax);
        auto abstract_succs = successors(w, a);

        for (const auto& p2 : configuration_successors(p, a, letter, delay)) {
            RegionWord w2 = abstract_H(p2, cmax);
            if (std::find(abstract_succs.begin(), abstract_succs.end(),
                          std::make_pair(letter, w2)) == abstract_succs.end()) {
                detail = "concrete successor missing in round " +
                         std::to_string(round);
                return false;
            }
        }

        std::set<std::pair<LetterId, RegionWord>> realized;
        ConfigSet base = testutil::canonical_preimage(w, cmax, 4);
        Rat t(0);
        for (int step = 0; step < 80; ++step) {
            ConfigSet moved = delayed(base, t);
            for (LetterId l = 0; l < static_cast<LetterId>(a.alphabet.size()); ++l)
                for (const auto& p2 : configuration_successors(moved, a, l, Rat(0)))
                    realized.insert({l, abstract_H(p2, cmax)});
            Rat maxf(0);
            bool zero = false;
            for (const auto& [q, v] : moved) {
                maxf = std::max(maxf, rat_fract(v));
                if (rat_fract(v) == Rat(0)) zero = true;
            }
            Rat gap = Rat(1) - maxf;
            t += zero ? gap / 2 : gap;
        }
        for (const auto& entry : abstract_succs) {
            if (!realized.count(entry)) {
                detail = "abstract successor not realizable in round " +
                         std::to_string(round);
                return false;
            }
        }
    }
    return true;
}

bool run_wqo_laws(std::string& detail) {
    // greedy order check, exhaustive over a two-pair alphabet
    std::vector<RegionLetter> pool = {
        make_region_letter({{0, Region::open_between(0)}}),
        make_region_letter({{1, Region::tail(1)}}),
        make_region_letter({{0, Region::open_between(0)}, {1, Region::tail(1)}}),
    };
    auto words = testutil::enumerate_words(pool, 3, 1);
    for (const auto& w1 : words) {
        for (const auto& w2 : words) {
            if (w1.letters.size() + w2.letters.size() > 6) continue;
            if (preceq(w1, w2) != testutil::brute_force_preceq(w1, w2)) {
                detail = "greedy and brute-force embedding disagree";
                return false;
            }
        }
    }

    Rng rng(505);
    int badness_rounds = 0, sim_rounds = 0;
    while (badness_rounds < 200) {
        Ata a = testutil::random_ata(rng);
        long long cmax = a.cmax();
        RegionWord w2 = abstract_H(testutil::random_config_set(rng, a), cmax);
        RegionWord w1 = abstract_H(testutil::random_config_set(rng, a), cmax);
        ++badness_rounds;
        if (preceq(w1, w2) && is_bad_word(w2, a) && !is_bad_word(w1, a)) {
            detail = "badness not downward closed";
            return false;
        }
    }
    while (sim_rounds < 200) {
        testutil::RandomAtaParams params;
        params.max_locations = 2;
        params.max_cmax = 1;
        Ata a = testutil::random_ata(rng, params);
        long long cmax = a.cmax();
        ConfigSet p2 = testutil::random_config_set(rng, a, 3, 2);
        ConfigSet p1;
        for (const auto& c : p2)
            if (!rng.flip() || p1.empty()) p1.push_back(c);
        p1 = make_config_set(std::move(p1));
        RegionWord w2 = abstract_H(p2, cmax);
        RegionWord w1 = abstract_H(p1, cmax);
        if (!preceq(w1, w2)) continue;
        ++sim_rounds;
        auto s1 = successors(w1, a);
        for (const auto& [letter, t2] : successors(w2, a)) {
            bool matched = false;
            for (const auto& [l1, t1] : s1)
                if (l1 == letter && preceq(t1, t2)) {
                    matched = true;
                    break;
                }
            if (!matched) {
                detail = "inverse domination is not a simulation here";
                return false;
            }
        }
    }
    return true;
}

bool run_decision_soundness(std::string& detail) {
    Rng rng(606);
    SearchOptions opts;
    opts.budget_seconds = 30.0;
    int nonempty = 0;
    for (int round = 0; round < 100; ++round) {
        Ata a = testutil::random_ata(rng);
        EmptinessResult r = check_empty(a, opts);
        if (!r.is_empty) {
            ++nonempty;
            if (!accepts(a, r.witness)) {
                detail = "witness rejected in round " + std::to_string(round);
                return false;
            }
        }
        if (round % 4 == 0) {
            UniversalityResult u = check_universal(a, opts);
            if (!u.universal && accepts(a, u.counterexample)) {
                detail = "universality counterexample accepted in round " +
                         std::to_string(round);
                return false;
            }
        }
    }
    if (nonempty == 0) {
        detail = "no nonempty instance sampled";
        return false;
    }
    return true;
}

bool run_decision_completeness(std::string& detail) {
    Rng rng(707);
    SearchOptions opts;
    opts.budget_seconds = 30.0;
    int compared = 0;
    for (int round = 0; round < 50; ++round) {
        testutil::RandomAtaParams params;
        params.max_locations = 3;
        params.max_cmax = 1;
        Ata a = testutil::random_ata(rng, params);

        std::set<RegionWord> seen;
        std::vector<RegionWord> frontier{initial_region_word(a)};
        seen.insert(frontier[0]);
        bool found_bad = is_bad_word(frontier[0], a);
        bool terminated = false;
        for (int depth = 0; depth < 8 && !found_bad; ++depth) {
            std::vector<RegionWord> next;
            for (const auto& w : frontier) {
                for (const auto& [l, w2] : successors(w, a)) {
                    if (is_bad_word(w2, a)) found_bad = true;
                    if (seen.insert(w2).second) next.push_back(w2);
                }
                if (found_bad) break;
            }
            frontier = std::move(next);
            if (frontier.empty()) {
                terminated = true;
                break;
            }
            if (seen.size() > 50000) break;
        }
        if (!found_bad && !terminated) continue;
        ++compared;
        EmptinessResult r = check_empty(a, opts);
        if (r.is_empty != !found_bad) {
            detail = "pruned and unpruned verdicts differ in round " +
                     std::to_string(round);
            return false;
        }
    }
    if (compared < 25) {
        detail = "only " + std::to_string(compared) + " instances terminated";
        return false;
    }
    return true;
}

bool run_reduction_crosscheck(std::string& detail) {
    auto corpus = testutil::channel_corpus();
    if (corpus.size() != 20) {
        detail = "corpus size";
        return false;
    }
    SearchOptions opts;
    opts.budget_seconds = 60.0;
    int reachable_count = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        ChannelSystem s = parse_lcs(corpus[i]);
        if (s.goal_state < 0) {
            detail = "system " + std::to_string(i) + " lacks a goal";
            return false;
        }
        bool reachable = lossy_reachable(s, {s.goal_state, s.goal_channel}, 3);
        if (reachable) ++reachable_count;
        Ata a = build_reduction_ata(s, s.goal_state, s.goal_channel);
        EmptinessResult r = check_empty(a, opts);
        if (r.is_empty == reachable) {
            detail = "system " + std::to_string(i) + ": emptiness says " +
                     (r.is_empty ? "empty" : "nonempty") + " but reachability says " +
                     (reachable ? "reachable" : "unreachable");
            return false;
        }
        if (!r.is_empty) {
            auto rep = validate_encoding(s, r.witness, s.goal_state, s.goal_channel);
            if (!rep.ok) {
                detail = "system " + std::to_string(i) +
                         " witness fails encoding check: " + rep.to_string();
                return false;
            }
        }
        std::printf("      system %02zu: %s, %llu nodes expanded, %llu pruned\n", i,
                    reachable ? "reachable" : "unreachable",
                    static_cast<unsigned long long>(r.stats.nodes_expanded),
                    static_cast<unsigned long long>(r.stats.nodes_pruned));
    }
    if (reachable_count < 5 || reachable_count > 15) {
        detail = "corpus balance off: " + std::to_string(reachable_count) +
                 " reachable";
        return false;
    }
    return true;
}

} // namespace

int main() {
    // Criterion 9 (termination discipline) is enforced throughout: every
    // decision call in criteria 6-8 carries a budget, and a TimeoutError
    // fails the criterion.
    std::vector<Criterion> criteria = {
        {"1 running-example behavior", 1.0, run_example_behavior},
        {"2 complement duality", 30.0, run_complement_duality},
        {"3 worked abstraction example", 1.0, run_worked_H_example},
        {"4 abstraction bisimulation", 60.0, run_bisimulation},
        {"5 domination order laws", 60.0, run_wqo_laws},
        {"6 decision soundness", 120.0, run_decision_soundness},
        {"7 decision completeness", 120.0, run_decision_completeness},
        {"8 reduction cross-check", 600.0, run_reduction_crosscheck},
    };

    int failures = 0;
    bool budgets_ok = true;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > c.budget_seconds) {
            ok = false;
            budgets_ok = false;
            if (detail.empty())
                detail = "exceeded budget of " + std::to_string(c.budget_seconds) + "s";
        }
        std::printf("%s  [%s] (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                    elapsed, detail.empty() ? "" : " — ", detail.c_str());
        if (!ok) ++failures;
    }
    std::printf("%s  [9 termination discipline] (budgets %s)\n",
                budgets_ok ? "PASS" : "FAIL",
                budgets_ok ? "respected" : "violated");
    if (!budgets_ok) ++failures;
    return failures == 0 ? 0 : 1;
}
