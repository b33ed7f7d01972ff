#include "ata/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ata {

// ---------------------------------------------------------------------------
// PosBool / DNF
// ---------------------------------------------------------------------------

PosBool PosBool::leaf(LocId q, bool reset_flag) {
    PosBool b;
    b.kind = Kind::Leaf;
    b.loc = q;
    b.reset = reset_flag;
    return b;
}

namespace {

// Associative connectives are kept flat so structurally equal means
// textually equal after printing.
std::vector<PosBool> flatten(std::vector<PosBool> kids, PosBool::Kind kind) {
    std::vector<PosBool> out;
    for (auto& k : kids) {
        if (k.kind == kind)
            for (auto& sub : k.kids) out.push_back(std::move(sub));
        else
            out.push_back(std::move(k));
    }
    return out;
}

} // namespace

PosBool PosBool::conj(std::vector<PosBool> kids) {
    if (kids.size() == 1) return std::move(kids[0]);
    PosBool b;
    b.kind = Kind::And;
    b.kids = flatten(std::move(kids), Kind::And);
    return b;
}

PosBool PosBool::disj(std::vector<PosBool> kids) {
    if (kids.size() == 1) return std::move(kids[0]);
    PosBool b;
    b.kind = Kind::Or;
    b.kids = flatten(std::move(kids), Kind::Or);
    return b;
}

bool PosBool::purely_existential() const {
    if (kind == Kind::And) return false;
    for (const auto& k : kids)
        if (!k.purely_existential()) return false;
    return true;
}

bool PosBool::purely_universal() const {
    if (kind == Kind::Or) return false;
    for (const auto& k : kids)
        if (!k.purely_universal()) return false;
    return true;
}

PosBool PosBool::dual() const {
    PosBool out = *this;
    if (kind == Kind::And) out.kind = Kind::Or;
    else if (kind == Kind::Or) out.kind = Kind::And;
    for (size_t i = 0; i < kids.size(); ++i) out.kids[i] = kids[i].dual();
    return out;
}

namespace {

Conjunct merge_conjuncts(const Conjunct& a, const Conjunct& b) {
    Conjunct out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
}

Dnf dnf_rec(const PosBool& b) {
    switch (b.kind) {
        case PosBool::Kind::Leaf:
            return {Conjunct{{b.loc, b.reset}}};
        case PosBool::Kind::Or: {
            Dnf out;
            for (const auto& k : b.kids) {
                Dnf sub = dnf_rec(k);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return out;
        }
        case PosBool::Kind::And: {
            Dnf out = {Conjunct{}};
            for (const auto& k : b.kids) {
                Dnf sub = dnf_rec(k);
                Dnf next;
                next.reserve(out.size() * sub.size());
                for (const auto& c1 : out)
                    for (const auto& c2 : sub)
                        next.push_back(merge_conjuncts(c1, c2));
                out = std::move(next);
            }
            return out;
        }
    }
    return {};
}

bool conjunct_subset(const Conjunct& small, const Conjunct& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

Dnf to_dnf(const PosBool& b) {
    Dnf raw = dnf_rec(b);
    // Dedup, then absorption: drop any conjunct with a strict subset
    // elsewhere (or an equal earlier one). First occurrences survive.
    Dnf out;
    for (size_t i = 0; i < raw.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < raw.size() && !dominated; ++j) {
            if (i == j) continue;
            if (raw[j].size() < raw[i].size() ||
                (raw[j].size() == raw[i].size() && j < i)) {
                dominated = conjunct_subset(raw[j], raw[i]);
            }
        }
        if (!dominated && std::find(out.begin(), out.end(), raw[i]) == out.end())
            out.push_back(raw[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ata basics
// ---------------------------------------------------------------------------

long long Ata::cmax() const {
    long long m = 0;
    for (const auto& row : rules)
        for (const auto& cells : row)
            for (const auto& r : cells)
                m = std::max(m, r.guard.max_constant());
    return m;
}

LocId Ata::find_location(std::string_view name) const {
    for (size_t i = 0; i < locations.size(); ++i)
        if (locations[i] == name) return static_cast<LocId>(i);
    return -1;
}

LetterId Ata::find_letter(std::string_view name) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<LetterId>(i);
    return -1;
}

LocId Ata::add_location(const std::string& name, bool is_accepting) {
    locations.push_back(name);
    accepting.push_back(is_accepting);
    rules.emplace_back(alphabet.size());
    return static_cast<LocId>(locations.size() - 1);
}

void Ata::add_rule(LocId q, LetterId a, Rule r) {
    rules.at(q).at(a).push_back(std::move(r));
}

bool is_purely_existential(const Ata& a) {
    for (const auto& row : a.rules)
        for (const auto& cells : row)
            for (const auto& r : cells)
                if (!r.formula.purely_existential()) return false;
    return true;
}

bool is_purely_universal(const Ata& a) {
    for (const auto& row : a.rules)
        for (const auto& cells : row)
            for (const auto& r : cells)
                if (!r.formula.purely_universal()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Partition check
// ---------------------------------------------------------------------------

namespace {

std::vector<bool> reachable_locations(const Ata& a) {
    std::vector<bool> seen(a.locations.size(), false);
    std::vector<LocId> work{a.initial};
    seen[a.initial] = true;
    while (!work.empty()) {
        LocId q = work.back();
        work.pop_back();
        for (const auto& cells : a.rules[q]) {
            for (const auto& r : cells) {
                r.formula.for_each_leaf([&](LocId to, bool) {
                    if (!seen[to]) {
                        seen[to] = true;
                        work.push_back(to);
                    }
                });
            }
        }
    }
    return seen;
}

} // namespace

std::string PartitionViolation::describe(const Ata& a) const {
    std::ostringstream out;
    out << a.locations[loc] << "/" << a.alphabet[letter] << ": ";
    switch (kind) {
        case Kind::MissingRow: out << "no rule"; break;
        case Kind::Gap: out << "gap " << where.to_string(); break;
        case Kind::Overlap: out << "overlap " << where.to_string(); break;
    }
    return out.str();
}

std::string PartitionReport::to_string(const Ata& a) const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        out << violations[i].describe(a);
    }
    return out.str();
}

PartitionReport check_partition(const Ata& a, bool strict) {
    PartitionReport report;
    std::vector<bool> relevant = strict ? std::vector<bool>(a.locations.size(), true)
                                        : reachable_locations(a);
    for (LocId q = 0; q < static_cast<LocId>(a.locations.size()); ++q) {
        if (!relevant[q]) continue;
        for (LetterId l = 0; l < static_cast<LetterId>(a.alphabet.size()); ++l) {
            const auto& cells = a.rules[q][l];
            if (cells.empty()) {
                report.violations.push_back(
                    {q, l, PartitionViolation::Kind::MissingRow, Guard::full()});
                continue;
            }
            Guard covered = Guard::empty_set();
            Guard overlap = Guard::empty_set();
            for (const auto& r : cells) {
                if (r.guard.is_empty()) continue;
                overlap = overlap.unite(covered.intersect(r.guard));
                covered = covered.unite(r.guard);
            }
            if (!overlap.is_empty())
                report.violations.push_back(
                    {q, l, PartitionViolation::Kind::Overlap, overlap});
            Guard gap = covered.complement();
            if (!gap.is_empty())
                report.violations.push_back(
                    {q, l, PartitionViolation::Kind::Gap, gap});
        }
    }
    return report;
}

void require_partition(const Ata& a) {
    PartitionReport r = check_partition(a);
    if (!r.ok())
        throw IllFormedAutomaton("guard partition violated: " + r.to_string(a));
}

// ---------------------------------------------------------------------------
// Boolean closure
// ---------------------------------------------------------------------------

Ata complement(const Ata& a) {
    require_partition(a);
    Ata out = a;
    for (size_t q = 0; q < out.rules.size(); ++q) {
        out.accepting[q] = !out.accepting[q];
        for (auto& cells : out.rules[q])
            for (auto& r : cells) r.formula = r.formula.dual();
    }
    return out;
}

namespace {

PosBool remap_formula(const PosBool& b, LocId offset) {
    PosBool out = b;
    if (out.kind == PosBool::Kind::Leaf) {
        out.loc += offset;
    } else {
        for (size_t i = 0; i < b.kids.size(); ++i)
            out.kids[i] = remap_formula(b.kids[i], offset);
    }
    return out;
}

std::string fresh_name(const std::vector<std::string>& taken,
                       const std::string& base) {
    std::string name = base;
    int n = 0;
    while (std::find(taken.begin(), taken.end(), name) != taken.end())
        name = base + "_" + std::to_string(++n);
    return name;
}

} // namespace

Ata combine(const Ata& a, const Ata& b, CombineMode mode) {
    std::set<std::string> sa(a.alphabet.begin(), a.alphabet.end());
    std::set<std::string> sb(b.alphabet.begin(), b.alphabet.end());
    if (sa != sb)
        throw AlphabetMismatch("combine: operands have different alphabets");
    require_partition(a);
    require_partition(b);

    Ata out;
    out.alphabet = a.alphabet;
    // letter id of each b-letter in the combined (= a's) alphabet
    std::vector<LetterId> bmap(b.alphabet.size());
    for (size_t i = 0; i < b.alphabet.size(); ++i)
        bmap[i] = static_cast<LetterId>(
            std::find(out.alphabet.begin(), out.alphabet.end(), b.alphabet[i]) -
            out.alphabet.begin());

    std::vector<std::string> names;
    names.push_back("u0");
    for (const auto& n : a.locations) names.push_back("l." + n);
    for (const auto& n : b.locations) names.push_back("r." + n);

    bool init_acc = mode == CombineMode::And
                        ? (a.accepting[a.initial] && b.accepting[b.initial])
                        : (a.accepting[a.initial] || b.accepting[b.initial]);
    out.add_location(names[0], init_acc);
    const LocId a_off = 1;
    const LocId b_off = static_cast<LocId>(1 + a.locations.size());
    for (size_t q = 0; q < a.locations.size(); ++q)
        out.add_location(names[1 + q], a.accepting[q]);
    for (size_t q = 0; q < b.locations.size(); ++q)
        out.add_location(names[1 + a.locations.size() + q], b.accepting[q]);
    out.initial = 0;

    for (size_t q = 0; q < a.locations.size(); ++q)
        for (size_t l = 0; l < a.alphabet.size(); ++l)
            for (const auto& r : a.rules[q][l])
                out.add_rule(a_off + static_cast<LocId>(q), static_cast<LetterId>(l),
                             {r.guard, r.guard_text, remap_formula(r.formula, a_off), 0});
    for (size_t q = 0; q < b.locations.size(); ++q)
        for (size_t l = 0; l < b.alphabet.size(); ++l)
            for (const auto& r : b.rules[q][l])
                out.add_rule(b_off + static_cast<LocId>(q), bmap[l],
                             {r.guard, r.guard_text, remap_formula(r.formula, b_off), 0});

    // Fresh initial row: pairwise guard-cell intersections of the two
    // initial rows, formulas joined by the requested connective.
    for (LetterId l = 0; l < static_cast<LetterId>(out.alphabet.size()); ++l) {
        LetterId la = l;
        LetterId lb = b.find_letter(out.alphabet[l]);
        for (const auto& ra : a.rules[a.initial][la]) {
            for (const auto& rb : b.rules[b.initial][lb]) {
                Guard g = ra.guard.intersect(rb.guard);
                if (g.is_empty()) continue;
                std::vector<PosBool> kids;
                kids.push_back(remap_formula(ra.formula, a_off));
                kids.push_back(remap_formula(rb.formula, b_off));
                PosBool f = mode == CombineMode::And ? PosBool::conj(std::move(kids))
                                                     : PosBool::disj(std::move(kids));
                out.add_rule(0, l, {g, guard_to_expr(g), std::move(f), 0});
            }
        }
    }
    return out;
}

Ata complete_with_sink(const Ata& a, const std::string& sink_name) {
    Ata out = a;
    LocId sink = -1;
    auto ensure_sink = [&]() {
        if (sink >= 0) return;
        sink = out.add_location(fresh_name(out.locations, sink_name), false);
        for (LetterId l = 0; l < static_cast<LetterId>(out.alphabet.size()); ++l)
            out.add_rule(sink, l,
                         {Guard::full(), GuardExpr::tt(), PosBool::leaf(sink, false), 0});
    };
    const size_t original = a.locations.size();
    for (size_t q = 0; q < original; ++q) {
        for (LetterId l = 0; l < static_cast<LetterId>(out.alphabet.size()); ++l) {
            Guard covered = Guard::empty_set();
            for (const auto& r : out.rules[q][l]) covered = covered.unite(r.guard);
            Guard gap = covered.complement();
            if (gap.is_empty()) continue;
            ensure_sink();
            out.add_rule(static_cast<LocId>(q), l,
                         {gap, guard_to_expr(gap), PosBool::leaf(sink, false), 0});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// from_nta
// ---------------------------------------------------------------------------

Ata from_nta(const Nta& n) {
    Ata out;
    out.alphabet = n.alphabet;
    for (size_t q = 0; q < n.locations.size(); ++q)
        out.add_location(n.locations[q], n.accepting[q]);
    out.initial = n.initial;
    LocId sink = out.add_location(fresh_name(out.locations, "sink"), false);

    // Denotations of every rule guard; cells are the atoms of the boolean
    // algebra they generate, computed by grouping elementary pieces by
    // which guards cover them.
    std::vector<Guard> denote;
    denote.reserve(n.rules.size());
    long long bound = 0;
    for (const auto& r : n.rules) {
        denote.push_back(normalize_guard(r.guard));
        bound = std::max(bound, denote.back().max_constant());
    }
    auto piece_probe = [&](long long piece) {
        long long k = piece / 2;
        return piece % 2 == 0 ? Rat(k) : Rat(2 * k + 1, 2);
    };
    std::map<std::vector<bool>, Guard> cells; // signature -> cell
    for (long long piece = 0; piece <= 2 * bound + 1; ++piece) {
        Rat probe = piece_probe(piece);
        std::vector<bool> sig(denote.size());
        for (size_t i = 0; i < denote.size(); ++i) sig[i] = denote[i].contains(probe);
        Interval iv;
        long long k = piece / 2;
        iv.lo = k;
        iv.lo_open = (piece % 2 == 1);
        if (piece == 2 * bound + 1) {
            iv.hi_unbounded = true;
        } else {
            iv.hi = piece % 2 == 0 ? k : k + 1;
            iv.hi_open = (piece % 2 == 1);
        }
        auto [it, inserted] = cells.try_emplace(sig, Guard::make({iv}));
        if (!inserted) it->second = it->second.unite(Guard::make({iv}));
    }

    for (LocId q = 0; q < static_cast<LocId>(n.locations.size()); ++q) {
        for (LetterId l = 0; l < static_cast<LetterId>(n.alphabet.size()); ++l) {
            for (const auto& [sig, cell] : cells) {
                std::vector<DnfLeaf> succ;
                for (size_t i = 0; i < n.rules.size(); ++i) {
                    const auto& r = n.rules[i];
                    if (r.from == q && r.letter == l && sig[i])
                        succ.push_back({r.to, r.reset});
                }
                std::sort(succ.begin(), succ.end());
                succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
                PosBool f = PosBool::leaf(sink, false);
                if (!succ.empty()) {
                    std::vector<PosBool> leaves;
                    for (const auto& [to, reset] : succ)
                        leaves.push_back(PosBool::leaf(to, reset));
                    f = PosBool::disj(std::move(leaves));
                }
                out.add_rule(q, l, {cell, guard_to_expr(cell), std::move(f), 0});
            }
        }
    }
    for (LetterId l = 0; l < static_cast<LetterId>(n.alphabet.size()); ++l)
        out.add_rule(sink, l,
                     {Guard::full(), GuardExpr::tt(), PosBool::leaf(sink, false), 0});
    return out;
}

} // namespace ata
