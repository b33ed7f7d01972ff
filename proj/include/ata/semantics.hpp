#pragma once

#include "ata/automaton.hpp"
#include "ata/rational.hpp"

#include <string>
#include <vector>

namespace ata {

/// Finite timed word. Timestamps are absolute and nondecreasing; the
/// delay view (time since the previous letter) is derived.
struct TimedLetter {
    std::string letter;
    Rat time;
    bool operator==(const TimedLetter&) const = default;
};

struct TimedWord {
    std::vector<TimedLetter> items;

    bool empty() const { return items.empty(); }
    size_t size() const { return items.size(); }
    std::vector<Rat> delays() const;
    std::string to_string() const; // "a@3/10 a@13/10"
    bool operator==(const TimedWord&) const = default;
};

/// Throws Error unless timestamps are nonnegative and nondecreasing.
void validate_timed_word(const TimedWord& w);

using Config = std::pair<LocId, Rat>; // (location, clock value)

/// State of the configuration-set transition system: finite set of
/// configurations, canonically sorted.
using ConfigSet = std::vector<Config>;

ConfigSet make_config_set(std::vector<Config> items);
ConfigSet delayed(const ConfigSet& p, const Rat& t);
std::string config_set_to_string(const ConfigSet& p, const Ata& a);

/// All locations accepting (vacuously true for the empty set).
bool is_bad(const ConfigSet& p, const Ata& a);

/// The unique rule of (q, letter) whose guard holds at value v. Throws
/// IllFormedAutomaton when no rule or more than one applies.
const Rule& applicable_rule(const Ata& a, LocId q, LetterId letter, const Rat& v);

/// One step of the transition system: delay every clock by t, then let
/// every configuration pick one disjunct of its rule's DNF independently;
/// the successor is the union of the chosen next-sets. Returns all choice
/// combinations, deduplicated and sorted.
std::vector<ConfigSet> configuration_successors(const ConfigSet& p, const Ata& a,
                                                LetterId letter, const Rat& delay);

/// Word membership: some choice sequence leads from {(q0, 0)} to a set
/// whose locations are all accepting. Depth-first search over choice
/// combinations, memoized on (position, configuration set).
bool accepts(const Ata& a, const TimedWord& w);

} // namespace ata
