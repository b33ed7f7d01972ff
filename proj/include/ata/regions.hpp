#pragma once

#include "ata/automaton.hpp"
#include "ata/semantics.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ata {

/// Clock region relative to a bound cmax: integer points {0}..{cmax},
/// open unit intervals between them, and the unbounded tail (cmax, inf).
/// Encoded as an index so that ascending index = ascending position:
/// 2i = {i}, 2i+1 = (i,i+1) for i < cmax, 2*cmax+1 = (cmax, inf).
struct Region {
    int index = 0;

    static Region point(long long i) { return {static_cast<int>(2 * i)}; }
    static Region open_between(long long i) { return {static_cast<int>(2 * i + 1)}; }
    static Region tail(long long cmax) { return {static_cast<int>(2 * cmax + 1)}; }

    bool is_point() const { return index % 2 == 0; }
    long long low() const { return index / 2; }
    bool is_tail(long long cmax) const { return index == 2 * cmax + 1; }
    std::string to_string(long long cmax) const;

    auto operator<=>(const Region&) const = default;
};

/// The 2*(cmax+1) regions in ascending order.
std::vector<Region> regions(long long cmax);

Region region_of(const Rat& v, long long cmax);

/// A rational value inside the region (its integer point, its midpoint,
/// or cmax + 1/2 for the tail).
Rat region_probe(const Region& r, long long cmax);

/// One letter of the abstraction alphabet: a nonempty set of
/// (location, region) pairs sharing the same fractional part.
using RegionLetter = std::vector<std::pair<LocId, Region>>; // sorted, unique

RegionLetter make_region_letter(std::vector<std::pair<LocId, Region>> pairs);
bool letter_subset(const RegionLetter& small, const RegionLetter& big);

/// Word over region letters, ordered by ascending fractional part. Point
/// regions can only occur in the first letter. front_punctual records
/// whether the first letter's fractional part is zero; it is forced by
/// the letter content except when the front holds only tail regions, in
/// which case both variants denote different sets of configuration sets.
struct RegionWord {
    std::vector<RegionLetter> letters;
    bool front_punctual = true;

    bool empty() const { return letters.empty(); }
    auto operator<=>(const RegionWord&) const = default;
};

/// Builds a word and normalizes the punctuality flag against the front
/// letter content. Asserts the points-only-in-front invariant.
RegionWord make_region_word(std::vector<RegionLetter> letters, bool front_punctual);

/// "{q2:(1,2), q3:(2,inf)} {q1:(0,1)}"; empty word prints "(empty)".
std::string region_word_to_string(const RegionWord& w,
                                  const std::vector<std::string>& loc_names,
                                  long long cmax);
std::string region_word_to_string(const RegionWord& w, const Ata& a);

/// The H encoding: group configurations by fractional part, ascending,
/// keeping (location, region) pairs. The empty set maps to the empty word.
RegionWord abstract_H(const ConfigSet& p, long long cmax);

/// Root of the abstract system: H({(q0, 0)}).
RegionWord initial_region_word(const Ata& a);

/// One slice of time passing. A punctual front opens its point regions
/// ({i} -> (i,i+1), {cmax} -> tail) and becomes non-punctual; otherwise
/// the last letter rotates to the front with (i,i+1) -> {i+1}, tails
/// unchanged, and the front becomes punctual. Rejects the empty word.
RegionWord delay_step(const RegionWord& w, long long cmax);

/// All abstractions reachable by letting time pass: repeated delay_step
/// until repetition. Equals { abstract_H(p + t) : t >= 0 } for every p
/// with abstract_H(p) = w.
std::vector<RegionWord> delay_closure(const RegionWord& w, long long cmax);

/// Reusable scratch state for successor computations: memoized disjunctive
/// normal forms of rule formulas, keyed by rule identity. Valid while the
/// automaton it was used with stays alive and unmodified.
class DnfCache {
public:
    const Dnf& of(const Rule& r);

private:
    std::map<const Rule*, Dnf> memo_;
};

/// Discrete step on a region word: every pair picks disjuncts of its
/// unique guard cell's DNF; pairs that can stand for several clock values
/// (tail regions) may activate any nonempty subset of disjuncts at once.
/// Non-reset leaves keep their slot and region, reset leaves enter the
/// fract-zero front.
std::vector<RegionWord> discrete_successors(const RegionWord& w, const Ata& a,
                                            LetterId letter);

/// All labeled successors in the abstract transition system: discrete
/// steps from every element of the delay closure, with value-multiplicity
/// bounds carried through the shifts (a pair pinned to a point or bounded
/// interval keeps standing for one value even once it saturates).
std::vector<std::pair<LetterId, RegionWord>> successors(const RegionWord& w,
                                                        const Ata& a);
std::vector<std::pair<LetterId, RegionWord>> successors(const RegionWord& w,
                                                        const Ata& a,
                                                        DnfCache& cache);

/// Monotone domination: a strictly increasing index map with letterwise
/// set inclusion. A punctual front may only embed into a punctual front,
/// and a non-punctual word never embeds into a punctual front letter.
/// Greedy left-to-right matching, which is complete for this order.
bool preceq(const RegionWord& w1, const RegionWord& w2);

/// Every location in every letter accepting (vacuously true when empty).
bool is_bad_word(const RegionWord& w, const Ata& a);

} // namespace ata
