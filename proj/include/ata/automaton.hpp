#pragma once

#include "ata/errors.hpp"
#include "ata/guard.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ata {

using LocId = int;
using LetterId = int;

/// Positive boolean formula over (location, reset) leaves. No constants:
/// at least one leaf everywhere.
struct PosBool {
    enum class Kind { Leaf, And, Or };

    Kind kind = Kind::Leaf;
    LocId loc = 0;
    bool reset = false;          // leaf only; true = reset the clock
    std::vector<PosBool> kids;   // And/Or only, size >= 2

    static PosBool leaf(LocId q, bool reset_flag);
    static PosBool conj(std::vector<PosBool> kids);
    static PosBool disj(std::vector<PosBool> kids);

    bool purely_existential() const; // no And anywhere
    bool purely_universal() const;   // no Or anywhere
    /// And <-> Or, leaves unchanged.
    PosBool dual() const;
    template <typename F>
    void for_each_leaf(F&& f) const {
        if (kind == Kind::Leaf) {
            f(loc, reset);
            return;
        }
        for (const auto& k : kids) k.for_each_leaf(f);
    }

    bool operator==(const PosBool&) const = default;
};

using DnfLeaf = std::pair<LocId, bool>; // (location, reset)
using Conjunct = std::vector<DnfLeaf>;  // sorted, no duplicates
using Dnf = std::vector<Conjunct>;      // absorption applied, order-stable

/// Disjunctive normal form of a positive formula. Conjuncts are
/// deduplicated and absorption is applied (no conjunct is a superset of
/// another); surviving conjuncts keep their first-occurrence order.
Dnf to_dnf(const PosBool& b);

/// One transition cell: when the (unique) guard holds, the formula fires.
struct Rule {
    Guard guard;
    GuardExpr guard_text; // source syntax, preserved for printing
    PosBool formula;
    int source_line = 0;

    bool operator==(const Rule& o) const {
        return guard == o.guard && guard_text == o.guard_text &&
               formula == o.formula;
    }
};

/// One-clock alternating timed automaton. Rule rows are indexed by
/// (location, letter); the (Partition) requirement says each row's guards
/// partition the nonnegative reals exactly.
struct Ata {
    std::vector<std::string> locations; // index = LocId
    std::vector<std::string> alphabet;  // index = LetterId
    LocId initial = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<std::vector<Rule>>> rules; // [loc][letter] -> cells

    long long cmax() const;
    LocId find_location(std::string_view name) const;  // -1 if absent
    LetterId find_letter(std::string_view name) const; // -1 if absent
    LocId add_location(const std::string& name, bool is_accepting);
    void add_rule(LocId q, LetterId a, Rule r);

    bool operator==(const Ata& o) const {
        return locations == o.locations && alphabet == o.alphabet &&
               initial == o.initial && accepting == o.accepting &&
               rules == o.rules;
    }
};

bool is_purely_existential(const Ata& a);
bool is_purely_universal(const Ata& a);

struct PartitionViolation {
    enum class Kind { MissingRow, Gap, Overlap };
    LocId loc = 0;
    LetterId letter = 0;
    Kind kind = Kind::MissingRow;
    Guard where; // offending interval set
    std::string describe(const Ata& a) const;
};

struct PartitionReport {
    std::vector<PartitionViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string(const Ata& a) const;
};

/// Checks the (Partition) condition row by row. With strict=true every
/// declared location is checked; otherwise only locations syntactically
/// reachable from the initial one.
PartitionReport check_partition(const Ata& a, bool strict = true);

/// Throws IllFormedAutomaton unless check_partition(a) is clean.
void require_partition(const Ata& a);

/// Dualized automaton: And <-> Or in every rule, accepting set flipped.
/// Recognizes exactly the complement language (the (Partition) condition
/// makes the game determined under dualization).
Ata complement(const Ata& a);

enum class CombineMode { And, Or };

/// Product via a fresh initial location whose rows pair the two operands'
/// initial rows cell by cell, combining the formulas with And or Or.
/// Recognizes the intersection resp. union.
Ata combine(const Ata& a, const Ata& b, CombineMode mode);

/// Fills partition gaps and missing rows with a fresh non-accepting sink
/// that self-loops on every letter. Overlaps are left untouched.
Ata complete_with_sink(const Ata& a, const std::string& sink_name = "sink");

/// Plain nondeterministic one-clock timed automaton (rule list form).
struct NtaRule {
    LocId from = 0;
    LetterId letter = 0;
    GuardExpr guard;
    LocId to = 0;
    bool reset = false;
};

struct Nta {
    std::vector<std::string> locations;
    std::vector<std::string> alphabet;
    LocId initial = 0;
    std::vector<bool> accepting;
    std::vector<NtaRule> rules;
};

/// Purely existential equivalent of a plain nondeterministic automaton:
/// rows are rebuilt over the cells of the boolean algebra generated by all
/// guards, empty successor cells fall through to a fresh rejecting sink.
Ata from_nta(const Nta& n);

} // namespace ata
