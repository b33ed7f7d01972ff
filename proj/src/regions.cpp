#include "ata/regions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace ata {

std::string Region::to_string(long long cmax) const {
    std::ostringstream out;
    if (is_point()) {
        out << "[" << low() << "]";
    } else if (is_tail(cmax)) {
        out << "(" << cmax << ",inf)";
    } else {
        out << "(" << low() << "," << low() + 1 << ")";
    }
    return out.str();
}

std::vector<Region> regions(long long cmax) {
    std::vector<Region> out;
    out.reserve(static_cast<size_t>(2 * (cmax + 1)));
    for (long long i = 0; i <= 2 * cmax + 1; ++i)
        out.push_back({static_cast<int>(i)});
    return out;
}

Region region_of(const Rat& v, long long cmax) {
    if (v > Rat(cmax)) return Region::tail(cmax);
    if (rat_is_integral(v)) return Region::point(rat_floor(v));
    return Region::open_between(rat_floor(v));
}

Rat region_probe(const Region& r, long long cmax) {
    if (r.is_point()) return Rat(r.low());
    if (r.is_tail(cmax)) return Rat(2 * cmax + 1, 2);
    return Rat(2 * r.low() + 1, 2);
}

RegionLetter make_region_letter(std::vector<std::pair<LocId, Region>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

bool letter_subset(const RegionLetter& small, const RegionLetter& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

namespace {

bool has_point(const RegionLetter& l) {
    for (const auto& [q, r] : l)
        if (r.is_point()) return true;
    return false;
}

} // namespace

RegionWord make_region_word(std::vector<RegionLetter> letters, bool front_punctual) {
    RegionWord w;
    w.letters = std::move(letters);
    for (size_t i = 1; i < w.letters.size(); ++i) {
        (void)i;
        assert(!has_point(w.letters[i]) && "point regions only in the first letter");
    }
    if (w.letters.empty()) {
        w.front_punctual = true;
    } else if (has_point(w.letters.front())) {
        w.front_punctual = true;
    } else {
        w.front_punctual = front_punctual;
    }
    return w;
}

std::string region_word_to_string(const RegionWord& w,
                                  const std::vector<std::string>& loc_names,
                                  long long cmax) {
    if (w.empty()) return "(empty)";
    std::ostringstream out;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out << " ";
        out << "{";
        for (size_t j = 0; j < w.letters[i].size(); ++j) {
            if (j) out << ", ";
            const auto& [q, r] = w.letters[i][j];
            out << loc_names[q] << ":" << r.to_string(cmax);
        }
        out << "}";
    }
    return out.str();
}

std::string region_word_to_string(const RegionWord& w, const Ata& a) {
    return region_word_to_string(w, a.locations, a.cmax());
}

RegionWord abstract_H(const ConfigSet& p, long long cmax) {
    // fract -> letter, ascending by construction of std::map
    std::map<Rat, std::vector<std::pair<LocId, Region>>> groups;
    for (const auto& [q, v] : p)
        groups[rat_fract(v)].push_back({q, region_of(v, cmax)});
    std::vector<RegionLetter> letters;
    letters.reserve(groups.size());
    bool punctual = !groups.empty() && groups.begin()->first == Rat(0);
    for (auto& [fract, pairs] : groups)
        letters.push_back(make_region_letter(std::move(pairs)));
    return make_region_word(std::move(letters), punctual);
}

RegionWord initial_region_word(const Ata& a) {
    return make_region_word({make_region_letter({{a.initial, Region::point(0)}})},
                            true);
}

RegionWord delay_step(const RegionWord& w, long long cmax) {
    if (w.empty()) throw Error("delay_step on the empty region word");
    if (w.front_punctual) {
        // Open every point region of the front letter; tails stay put.
        std::vector<RegionLetter> letters = w.letters;
        std::vector<std::pair<LocId, Region>> front;
        for (const auto& [q, r] : letters.front()) {
            if (!r.is_point()) {
                front.push_back({q, r});
            } else if (r.low() == cmax) {
                front.push_back({q, Region::tail(cmax)});
            } else {
                front.push_back({q, Region::open_between(r.low())});
            }
        }
        letters.front() = make_region_letter(std::move(front));
        return make_region_word(std::move(letters), false);
    }
    // Rotate the last letter to the front; its open intervals close onto
    // the next integer, tails stay tails.
    std::vector<RegionLetter> letters;
    letters.reserve(w.letters.size());
    std::vector<std::pair<LocId, Region>> moved;
    for (const auto& [q, r] : w.letters.back()) {
        if (r.is_tail(cmax)) {
            moved.push_back({q, r});
        } else {
            moved.push_back({q, Region::point(r.low() + 1)});
        }
    }
    letters.push_back(make_region_letter(std::move(moved)));
    for (size_t i = 0; i + 1 < w.letters.size(); ++i) letters.push_back(w.letters[i]);
    return make_region_word(std::move(letters), true);
}

std::vector<RegionWord> delay_closure(const RegionWord& w, long long cmax) {
    std::vector<RegionWord> out;
    std::set<RegionWord> seen;
    RegionWord cur = w;
    while (seen.insert(cur).second) {
        out.push_back(cur);
        if (cur.empty()) break;
        cur = delay_step(cur, cmax);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multiplicity-annotated delay closure. A pair standing for a point or a
// bounded open interval pins exactly one clock value, so it can activate
// only one disjunct per step; the unbounded tail region admits arbitrarily
// many values with the same fractional part. The annotation tracks how many
// distinct values a pair can stand for across delays (pins merge when their
// regions collapse into the tail).
// ---------------------------------------------------------------------------

namespace {

constexpr long long kUnbounded = -1;

struct AnnPair {
    LocId loc;
    Region region;
    long long mult; // kUnbounded or a positive count
    auto operator<=>(const AnnPair&) const = default;
};

using AnnLetter = std::vector<AnnPair>;

struct AnnWord {
    std::vector<AnnLetter> letters;
    bool front_punctual = true;
    auto operator<=>(const AnnWord&) const = default;
};

long long merge_mult(long long a, long long b) {
    if (a == kUnbounded || b == kUnbounded) return kUnbounded;
    return a + b;
}

AnnLetter normalize_ann_letter(AnnLetter pairs) {
    std::sort(pairs.begin(), pairs.end(),
              [](const AnnPair& x, const AnnPair& y) {
                  return std::tie(x.loc, x.region) < std::tie(y.loc, y.region);
              });
    AnnLetter out;
    for (auto& p : pairs) {
        if (!out.empty() && out.back().loc == p.loc && out.back().region == p.region)
            out.back().mult = merge_mult(out.back().mult, p.mult);
        else
            out.push_back(p);
    }
    return out;
}

AnnWord annotate(const RegionWord& w, long long cmax) {
    AnnWord out;
    out.front_punctual = w.front_punctual;
    for (const auto& letter : w.letters) {
        AnnLetter al;
        for (const auto& [q, r] : letter)
            al.push_back({q, r, r.is_tail(cmax) ? kUnbounded : 1});
        out.letters.push_back(normalize_ann_letter(std::move(al)));
    }
    return out;
}

RegionWord strip(const AnnWord& w) {
    std::vector<RegionLetter> letters;
    for (const auto& al : w.letters) {
        RegionLetter l;
        for (const auto& p : al) l.push_back({p.loc, p.region});
        letters.push_back(make_region_letter(std::move(l)));
    }
    return make_region_word(std::move(letters), w.front_punctual);
}

AnnWord ann_delay_step(const AnnWord& w, long long cmax) {
    if (w.front_punctual) {
        AnnWord out = w;
        AnnLetter front;
        for (const auto& p : w.letters.front()) {
            if (!p.region.is_point()) {
                front.push_back(p);
            } else if (p.region.low() == cmax) {
                front.push_back({p.loc, Region::tail(cmax), p.mult});
            } else {
                front.push_back({p.loc, Region::open_between(p.region.low()), p.mult});
            }
        }
        out.letters.front() = normalize_ann_letter(std::move(front));
        out.front_punctual = false;
        return out;
    }
    AnnWord out;
    AnnLetter moved;
    for (const auto& p : w.letters.back()) {
        if (p.region.is_tail(cmax))
            moved.push_back(p);
        else
            moved.push_back({p.loc, Region::point(p.region.low() + 1), p.mult});
    }
    out.letters.push_back(normalize_ann_letter(std::move(moved)));
    for (size_t i = 0; i + 1 < w.letters.size(); ++i) out.letters.push_back(w.letters[i]);
    out.front_punctual = true;
    return out;
}

std::vector<AnnWord> ann_delay_closure(const AnnWord& w, long long cmax) {
    std::vector<AnnWord> out;
    std::set<AnnWord> seen;
    AnnWord cur = w;
    while (seen.insert(cur).second) {
        out.push_back(cur);
        if (cur.letters.empty()) break;
        cur = ann_delay_step(cur, cmax);
    }
    return out;
}

std::vector<RegionWord> ann_discrete_successors(const AnnWord& w, const Ata& a,
                                                LetterId letter, DnfCache& cache) {
    if (w.letters.empty()) return {strip(w)};
    const long long cmax = a.cmax();

    struct PairRef {
        size_t slot;
        Region region;
    };
    std::vector<PairRef> pairs;
    std::vector<std::vector<Conjunct>> options;
    for (size_t slot = 0; slot < w.letters.size(); ++slot) {
        for (const auto& p : w.letters[slot]) {
            const Rule& rule =
                applicable_rule(a, p.loc, letter, region_probe(p.region, cmax));
            const Dnf& dnf = cache.of(rule);
            std::vector<Conjunct> opts;
            size_t max_size = p.mult == kUnbounded
                                  ? dnf.size()
                                  : std::min<size_t>(dnf.size(),
                                                     static_cast<size_t>(p.mult));
            if (max_size > 1) {
                for (size_t mask = 1; mask < (size_t{1} << dnf.size()); ++mask) {
                    if (static_cast<size_t>(__builtin_popcountll(mask)) > max_size)
                        continue;
                    Conjunct merged;
                    for (size_t i = 0; i < dnf.size(); ++i) {
                        if (!(mask & (size_t{1} << i))) continue;
                        Conjunct tmp;
                        std::set_union(merged.begin(), merged.end(), dnf[i].begin(),
                                       dnf[i].end(), std::back_inserter(tmp));
                        merged = std::move(tmp);
                    }
                    if (std::find(opts.begin(), opts.end(), merged) == opts.end())
                        opts.push_back(std::move(merged));
                }
            } else {
                opts = dnf;
            }
            pairs.push_back({slot, p.region});
            options.push_back(std::move(opts));
        }
    }

    std::set<RegionWord> results;
    std::vector<size_t> pick(options.size(), 0);
    while (true) {
        std::vector<std::vector<std::pair<LocId, Region>>> slots(w.letters.size());
        std::vector<std::pair<LocId, Region>> resets;
        for (size_t i = 0; i < pairs.size(); ++i) {
            for (const auto& [to, reset] : options[i][pick[i]]) {
                if (reset)
                    resets.push_back({to, Region::point(0)});
                else
                    slots[pairs[i].slot].push_back({to, pairs[i].region});
            }
        }
        std::vector<RegionLetter> letters;
        bool punctual;
        if (w.front_punctual) {
            slots[0].insert(slots[0].end(), resets.begin(), resets.end());
            punctual = true;
            for (auto& s : slots)
                if (!s.empty()) letters.push_back(make_region_letter(std::move(s)));
        } else {
            punctual = !resets.empty();
            if (!resets.empty())
                letters.push_back(make_region_letter(std::move(resets)));
            for (auto& s : slots)
                if (!s.empty()) letters.push_back(make_region_letter(std::move(s)));
        }
        results.insert(make_region_word(std::move(letters), punctual));

        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return {results.begin(), results.end()};
}

} // namespace

const Dnf& DnfCache::of(const Rule& r) {
    auto it = memo_.find(&r);
    if (it == memo_.end()) it = memo_.emplace(&r, to_dnf(r.formula)).first;
    return it->second;
}

std::vector<RegionWord> discrete_successors(const RegionWord& w, const Ata& a,
                                            LetterId letter) {
    DnfCache cache;
    return ann_discrete_successors(annotate(w, a.cmax()), a, letter, cache);
}

std::vector<std::pair<LetterId, RegionWord>> successors(const RegionWord& w,
                                                        const Ata& a) {
    DnfCache cache;
    return successors(w, a, cache);
}

std::vector<std::pair<LetterId, RegionWord>> successors(const RegionWord& w,
                                                        const Ata& a,
                                                        DnfCache& cache) {
    // The annotations travel through the delay closure: a pair whose
    // region was pinned before the shift stays pinned after it, even once
    // its region saturates into the tail.
    std::set<std::pair<LetterId, RegionWord>> out;
    for (const auto& shifted : ann_delay_closure(annotate(w, a.cmax()), a.cmax())) {
        for (LetterId l = 0; l < static_cast<LetterId>(a.alphabet.size()); ++l) {
            for (const auto& succ : ann_discrete_successors(shifted, a, l, cache))
                out.insert({l, succ});
        }
    }
    return {out.begin(), out.end()};
}

namespace {

bool greedy_embed(const std::vector<RegionLetter>& small, size_t si,
                  const std::vector<RegionLetter>& big, size_t bi) {
    while (si < small.size()) {
        while (bi < big.size() && !letter_subset(small[si], big[bi])) ++bi;
        if (bi >= big.size()) return false;
        ++si;
        ++bi;
    }
    return true;
}

} // namespace

bool preceq(const RegionWord& w1, const RegionWord& w2) {
    if (w1.empty()) return true;
    if (w1.front_punctual) {
        // A zero-fract group can only come from the other word's
        // zero-fract group, which is its front letter.
        if (w2.empty() || !w2.front_punctual) return false;
        if (!letter_subset(w1.letters[0], w2.letters[0])) return false;
        return greedy_embed(w1.letters, 1, w2.letters, 1);
    }
    // No zero-fract group in w1: skip w2's if it has one.
    size_t start = w2.front_punctual ? 1 : 0;
    return greedy_embed(w1.letters, 0, w2.letters, start);
}

bool is_bad_word(const RegionWord& w, const Ata& a) {
    for (const auto& letter : w.letters)
        for (const auto& [q, r] : letter)
            if (!a.accepting[q]) return false;
    return true;
}

} // namespace ata
