#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace testutil {

std::string fixture_path(const std::string& name) {
    return std::string(ATAKIT_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Ata load_fixture_ata(const std::string& name) {
    return parse_ata(read_file(fixture_path(name)));
}

Ata example_one() {
    return load_fixture_ata("example1.ata");
}

Ata worked_example() {
    return load_fixture_ata("worked.ata");
}

Ata accept_everything(const std::vector<std::string>& alphabet) {
    Ata a;
    a.alphabet = alphabet;
    LocId q = a.add_location("q", true);
    a.initial = q;
    for (LetterId l = 0; l < static_cast<LetterId>(alphabet.size()); ++l)
        a.add_rule(q, l, {Guard::full(), GuardExpr::tt(), PosBool::leaf(q, false), 0});
    return a;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

namespace {

PosBool random_formula(Rng& rng, int n_locs, int depth) {
    if (depth == 0 || rng.below(3) == 0)
        return PosBool::leaf(static_cast<LocId>(rng.below(n_locs)), rng.flip());
    std::vector<PosBool> kids;
    kids.push_back(random_formula(rng, n_locs, depth - 1));
    kids.push_back(random_formula(rng, n_locs, depth - 1));
    return rng.flip() ? PosBool::conj(std::move(kids))
                      : PosBool::disj(std::move(kids));
}

} // namespace

Ata random_ata(Rng& rng, const RandomAtaParams& params) {
    Ata a;
    int n_letters = 1 + static_cast<int>(rng.below(params.max_letters));
    for (int i = 0; i < n_letters; ++i)
        a.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    int n_locs = 1 + static_cast<int>(rng.below(params.max_locations));
    for (int i = 0; i < n_locs; ++i)
        a.add_location("q" + std::to_string(i), rng.flip());
    a.initial = 0;
    long long cmax = rng.int_in(0, params.max_cmax);

    for (LocId q = 0; q < n_locs; ++q) {
        for (LetterId l = 0; l < n_letters; ++l) {
            // Random partition of the elementary pieces into contiguous
            // cells: pick sorted piece boundaries.
            int n_pieces = static_cast<int>(2 * cmax + 2);
            int n_cells = 1 + static_cast<int>(
                                  rng.below(std::min<size_t>(params.max_cells, n_pieces)));
            std::set<int> cuts; // boundary after piece index
            while (static_cast<int>(cuts.size()) < n_cells - 1)
                cuts.insert(1 + static_cast<int>(rng.below(n_pieces - 1)));
            std::vector<int> bounds(cuts.begin(), cuts.end());
            bounds.push_back(n_pieces);
            int from = 0;
            for (int to : bounds) {
                // pieces [from, to) form one guard cell
                std::vector<Interval> ivs;
                for (int p = from; p < to; ++p) {
                    Interval iv;
                    iv.lo = p / 2;
                    iv.lo_open = (p % 2 == 1);
                    if (p == n_pieces - 1) {
                        iv.hi_unbounded = true;
                    } else {
                        iv.hi = p % 2 == 0 ? p / 2 : p / 2 + 1;
                        iv.hi_open = (p % 2 == 1);
                    }
                    ivs.push_back(iv);
                }
                Guard g = Guard::make(ivs);
                a.add_rule(q, l,
                           {g, guard_to_expr(g), random_formula(rng, n_locs, 2), 0});
                from = to;
            }
        }
    }
    return a;
}

TimedWord random_word(Rng& rng, const std::vector<std::string>& alphabet,
                      size_t max_len, long long max_whole) {
    TimedWord w;
    size_t len = rng.below(max_len + 1);
    Rat t(0);
    for (size_t i = 0; i < len; ++i) {
        long long den = rng.int_in(1, 4);
        t += Rat(rng.int_in(0, max_whole), den);
        w.items.push_back({alphabet[rng.below(alphabet.size())], t});
    }
    return w;
}

ConfigSet random_config_set(Rng& rng, const Ata& a, size_t max_size,
                            long long max_whole) {
    std::vector<Config> items;
    size_t n = rng.below(max_size + 1);
    for (size_t i = 0; i < n; ++i) {
        long long den = rng.int_in(1, 3);
        items.push_back({static_cast<LocId>(rng.below(a.locations.size())),
                         Rat(rng.int_in(0, max_whole * den), den)});
    }
    return make_config_set(std::move(items));
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

namespace {

bool game_formula(const Ata& a, const std::vector<LetterId>& letters,
                  const std::vector<Rat>& delays, size_t phase, const PosBool& f,
                  const Rat& moved);

bool game_position(const Ata& a, const std::vector<LetterId>& letters,
                   const std::vector<Rat>& delays, size_t phase, LocId q,
                   const Rat& v) {
    if (phase == letters.size()) return a.accepting[q];
    Rat moved = v + delays[phase];
    const Rule& rule = applicable_rule(a, q, letters[phase], moved);
    return game_formula(a, letters, delays, phase, rule.formula, moved);
}

bool game_formula(const Ata& a, const std::vector<LetterId>& letters,
                  const std::vector<Rat>& delays, size_t phase, const PosBool& f,
                  const Rat& moved) {
    switch (f.kind) {
        case PosBool::Kind::Leaf:
            return game_position(a, letters, delays, phase + 1, f.loc,
                                 f.reset ? Rat(0) : moved);
        case PosBool::Kind::And:
            // Adam picks the subformula: Eve must win them all.
            for (const auto& k : f.kids)
                if (!game_formula(a, letters, delays, phase, k, moved)) return false;
            return true;
        case PosBool::Kind::Or:
            for (const auto& k : f.kids)
                if (game_formula(a, letters, delays, phase, k, moved)) return true;
            return false;
    }
    return false;
}

} // namespace

bool game_oracle_accepts(const Ata& a, const TimedWord& w) {
    std::vector<LetterId> letters;
    for (const auto& it : w.items) letters.push_back(a.find_letter(it.letter));
    return game_position(a, letters, w.delays(), 0, a.initial, Rat(0));
}

bool nta_accepts(const Nta& n, const TimedWord& w) {
    std::set<Config> reachable{{n.initial, Rat(0)}};
    auto delays = w.delays();
    for (size_t i = 0; i < w.size(); ++i) {
        LetterId letter = -1;
        for (size_t l = 0; l < n.alphabet.size(); ++l)
            if (n.alphabet[l] == w.items[i].letter) letter = static_cast<LetterId>(l);
        std::set<Config> next;
        for (const auto& [q, v] : reachable) {
            Rat moved = v + delays[i];
            for (const auto& r : n.rules) {
                if (r.from != q || r.letter != letter) continue;
                if (!r.guard.eval(moved)) continue;
                next.insert({r.to, r.reset ? Rat(0) : moved});
            }
        }
        reachable = std::move(next);
    }
    for (const auto& [q, v] : reachable)
        if (n.accepting[q]) return true;
    return false;
}

Nta random_nta(Rng& rng) {
    Nta n;
    n.alphabet = {"a"};
    int n_locs = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < n_locs; ++i) {
        n.locations.push_back("p" + std::to_string(i));
        n.accepting.push_back(rng.flip());
    }
    n.initial = 0;
    size_t n_rules = 1 + rng.below(4);
    for (size_t i = 0; i < n_rules; ++i) {
        using K = GuardExpr::Kind;
        static const K kinds[] = {K::Lt, K::Le, K::Eq, K::Ne, K::Gt, K::Ge};
        GuardExpr g = rng.below(4) == 0
                          ? GuardExpr::tt()
                          : GuardExpr::atom(kinds[rng.below(6)], rng.int_in(0, 2));
        n.rules.push_back({static_cast<LocId>(rng.below(n_locs)), 0, g,
                           static_cast<LocId>(rng.below(n_locs)), rng.flip()});
    }
    return n;
}

// ---------------------------------------------------------------------------
// Region-word helpers
// ---------------------------------------------------------------------------

namespace {

bool embed_from(const RegionWord& w1, const RegionWord& w2, size_t i, size_t j,
                bool first_must_hit_front) {
    if (i == w1.letters.size()) return true;
    for (size_t k = j; k < w2.letters.size(); ++k) {
        if (first_must_hit_front && i == 0 && k > 0) return false;
        if (letter_subset(w1.letters[i], w2.letters[k]) &&
            embed_from(w1, w2, i + 1, k + 1, first_must_hit_front))
            return true;
    }
    return false;
}

} // namespace

bool brute_force_preceq(const RegionWord& w1, const RegionWord& w2) {
    if (w1.empty()) return true;
    if (w1.front_punctual) {
        if (w2.empty() || !w2.front_punctual) return false;
        return embed_from(w1, w2, 0, 0, true);
    }
    size_t start = w2.front_punctual ? 1 : 0;
    if (w2.letters.size() < start) return false;
    RegionWord w2tail;
    w2tail.letters.assign(w2.letters.begin() + start, w2.letters.end());
    w2tail.front_punctual = false;
    return embed_from(w1, w2tail, 0, 0, false);
}

ConfigSet canonical_preimage(const RegionWord& w, long long cmax, int boost) {
    std::vector<Config> items;
    const size_t m = w.letters.size();
    for (size_t i = 0; i < m; ++i) {
        // Distinct ascending fractional parts; zero for a punctual front.
        Rat fract = w.front_punctual
                        ? Rat(static_cast<long long>(i), static_cast<long long>(m + 1))
                        : Rat(static_cast<long long>(i + 1),
                              static_cast<long long>(m + 2));
        for (const auto& [q, r] : w.letters[i]) {
            if (r.is_point()) {
                items.push_back({q, Rat(r.low())});
            } else if (r.is_tail(cmax)) {
                for (int b = 0; b < boost; ++b)
                    items.push_back({q, Rat(cmax + 1 + b) + fract});
            } else {
                items.push_back({q, Rat(r.low()) + fract});
            }
        }
    }
    return make_config_set(std::move(items));
}

std::vector<RegionWord> enumerate_words(const std::vector<RegionLetter>& pool,
                                        size_t max_len, long long cmax) {
    std::vector<std::vector<RegionLetter>> seqs{{}};
    std::vector<RegionWord> out;
    for (size_t len = 0; len <= max_len; ++len) {
        std::vector<std::vector<RegionLetter>> next;
        for (const auto& seq : seqs) {
            // admissible flags for this sequence
            bool has_pt = !seq.empty() && [&] {
                for (const auto& [q, r] : seq.front())
                    if (r.is_point()) return true;
                return false;
            }();
            bool has_open = !seq.empty() && [&] {
                for (const auto& [q, r] : seq.front())
                    if (!r.is_point() && !r.is_tail(cmax)) return true;
                return false;
            }();
            // Point letters may only sit at the front.
            bool tail_ok = true;
            for (size_t i = 1; i < seq.size(); ++i)
                for (const auto& [q, r] : seq[i])
                    if (r.is_point()) tail_ok = false;
            if (tail_ok) {
                if (seq.empty()) {
                    out.push_back(make_region_word({}, true));
                } else if (has_pt) {
                    out.push_back(make_region_word(seq, true));
                } else if (has_open) {
                    out.push_back(make_region_word(seq, false));
                } else {
                    out.push_back(make_region_word(seq, true));
                    out.push_back(make_region_word(seq, false));
                }
            }
            if (len < max_len)
                for (const auto& letter : pool) {
                    auto grown = seq;
                    grown.push_back(letter);
                    next.push_back(std::move(grown));
                }
        }
        seqs = std::move(next);
    }
    return out;
}

std::vector<std::string> channel_corpus() {
    std::vector<std::string> out;
    // 1: one eps step to the goal
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : eps\ngoal q1 :\n");
    // 2: goal state unreachable (no rules into it)
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : eps\ngoal q2 :\n");
    // 3: single write, message kept
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : write a\ngoal q1 : a\n");
    // 4: single write, message lost
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : write a\ngoal q1 :\n");
    // 5: want two copies after one write: unreachable
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : write a\ngoal q1 : a a\n");
    // 6: write loop pumps the channel
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q1 : write a\n"
                  "goal q1 : a a a\n");
    // 7: FIFO order: writes a then b shows as "b a"
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : write b\n"
                  "goal q2 : b a\n");
    // 8: wrong order is unreachable
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : write b\n"
                  "goal q2 : a b\n");
    // 9: losing the first write
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : write b\n"
                  "goal q2 : b\n");
    // 10: write then read round-trip
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : read a\n"
                  "goal q2 :\n");
    // 11: read from the empty channel never fires
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : read a\ngoal q1 :\n");
    // 12: message must survive the read of the other letter
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : read a\n"
                  "goal q2 : a\n");
    // 13: eps chain of two steps
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : eps\nrule q1 -> q2 : eps\ngoal q2 :\n");
    // 14: choice of branches, only one reaches
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q0 -> q2 : eps\n"
                  "goal q2 :\n");
    // 15: goal channel letter never written
    out.push_back("lcs\nstate q0\nstate q1\ninit q0\n"
                  "rule q0 -> q1 : write a\ngoal q1 : b\n");
    // 16: write b over a loop of a-writes
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q1 : write a\n"
                  "rule q1 -> q2 : write b\ngoal q2 : b a a\n");
    // 17: read consumes the last write first (FIFO end)
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\nstate q3\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : write b\n"
                  "rule q2 -> q3 : read a\ngoal q3 : b\n");
    // 18: reading the front letter is impossible (b is not at the end)
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\nstate q3\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : write b\n"
                  "rule q2 -> q3 : read b\ngoal q3 : a\n");
    // 19: two-letter shuffle with eps
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\nstate q3\ninit q0\n"
                  "rule q0 -> q1 : write b\nrule q1 -> q2 : eps\n"
                  "rule q2 -> q3 : write a\ngoal q3 : a b\n");
    // 20: goal requires keeping both while a read happened
    out.push_back("lcs\nstate q0\nstate q1\nstate q2\nstate q3\ninit q0\n"
                  "rule q0 -> q1 : write a\nrule q1 -> q2 : read a\n"
                  "rule q2 -> q3 : write b\ngoal q3 : b a\n");
    return out;
}

} // namespace testutil
