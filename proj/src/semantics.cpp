#include "ata/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ata {

std::vector<Rat> TimedWord::delays() const {
    std::vector<Rat> out;
    out.reserve(items.size());
    Rat prev(0);
    for (const auto& it : items) {
        out.push_back(it.time - prev);
        prev = it.time;
    }
    return out;
}

std::string TimedWord::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out << " ";
        out << items[i].letter << "@" << rat_to_string(items[i].time);
    }
    return out.str();
}

void validate_timed_word(const TimedWord& w) {
    Rat prev(0);
    for (const auto& it : w.items) {
        if (it.time < Rat(0)) throw Error("negative timestamp in timed word");
        if (it.time < prev) throw Error("decreasing timestamps in timed word");
        prev = it.time;
    }
}

ConfigSet make_config_set(std::vector<Config> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

ConfigSet delayed(const ConfigSet& p, const Rat& t) {
    ConfigSet out = p;
    for (auto& [q, v] : out) v += t;
    return out;
}

std::string config_set_to_string(const ConfigSet& p, const Ata& a) {
    std::ostringstream out;
    out << "{";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out << ", ";
        out << "(" << a.locations[p[i].first] << "," << rat_to_string(p[i].second)
            << ")";
    }
    out << "}";
    return out.str();
}

bool is_bad(const ConfigSet& p, const Ata& a) {
    for (const auto& [q, v] : p)
        if (!a.accepting[q]) return false;
    return true;
}

const Rule& applicable_rule(const Ata& a, LocId q, LetterId letter, const Rat& v) {
    const Rule* found = nullptr;
    for (const auto& r : a.rules.at(q).at(letter)) {
        if (!r.guard.contains(v)) continue;
        if (found)
            throw IllFormedAutomaton("overlapping guards at (" + a.locations[q] +
                                     ", " + a.alphabet[letter] + ") for value " +
                                     rat_to_string(v));
        found = &r;
    }
    if (!found)
        throw IllFormedAutomaton("no applicable rule at (" + a.locations[q] + ", " +
                                 a.alphabet[letter] + ") for value " +
                                 rat_to_string(v));
    return *found;
}

std::vector<ConfigSet> configuration_successors(const ConfigSet& p, const Ata& a,
                                                LetterId letter, const Rat& delay) {
    // Per-configuration option lists: one next-set per DNF disjunct.
    std::vector<std::vector<ConfigSet>> options;
    options.reserve(p.size());
    for (const auto& [q, v] : p) {
        Rat moved = v + delay;
        const Rule& rule = applicable_rule(a, q, letter, moved);
        Dnf dnf = to_dnf(rule.formula);
        std::vector<ConfigSet> opt;
        opt.reserve(dnf.size());
        for (const auto& conjunct : dnf) {
            std::vector<Config> next;
            next.reserve(conjunct.size());
            for (const auto& [to, reset] : conjunct)
                next.push_back({to, reset ? Rat(0) : moved});
            opt.push_back(make_config_set(std::move(next)));
        }
        options.push_back(std::move(opt));
    }

    std::set<ConfigSet> results;
    std::vector<size_t> pick(options.size(), 0);
    while (true) {
        std::vector<Config> merged;
        for (size_t i = 0; i < options.size(); ++i)
            merged.insert(merged.end(), options[i][pick[i]].begin(),
                          options[i][pick[i]].end());
        results.insert(make_config_set(std::move(merged)));
        // odometer
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return {results.begin(), results.end()};
}

namespace {

bool accepts_rec(const Ata& a, const std::vector<LetterId>& letters,
                 const std::vector<Rat>& delays, size_t pos, const ConfigSet& p,
                 std::map<std::pair<size_t, ConfigSet>, bool>& memo) {
    if (pos == letters.size()) return is_bad(p, a);
    auto key = std::make_pair(pos, p);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool found = false;
    for (const auto& succ : configuration_successors(p, a, letters[pos], delays[pos])) {
        if (accepts_rec(a, letters, delays, pos + 1, succ, memo)) {
            found = true;
            break;
        }
    }
    memo.emplace(key, found);
    return found;
}

} // namespace

bool accepts(const Ata& a, const TimedWord& w) {
    validate_timed_word(w);
    std::vector<LetterId> letters;
    letters.reserve(w.size());
    for (const auto& it : w.items) {
        LetterId l = a.find_letter(it.letter);
        if (l < 0) throw Error("letter '" + it.letter + "' not in alphabet");
        letters.push_back(l);
    }
    std::map<std::pair<size_t, ConfigSet>, bool> memo;
    ConfigSet start = {{a.initial, Rat(0)}};
    return accepts_rec(a, letters, w.delays(), 0, start, memo);
}

} // namespace ata
