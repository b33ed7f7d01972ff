#include "ata/channels.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace ata {

int ChannelSystem::find_state(std::string_view name) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    return -1;
}

int ChannelSystem::find_channel_letter(std::string_view name) const {
    for (size_t i = 0; i < channel_alphabet.size(); ++i)
        if (channel_alphabet[i] == name) return static_cast<int>(i);
    return -1;
}

std::string ChannelSystem::channel_word_to_string(const std::vector<int>& w) const {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += channel_alphabet[w[i]];
    }
    return out;
}

std::string rule_token(const ChannelSystem& s, size_t rule_index) {
    const ChanRule& r = s.rules.at(rule_index);
    std::string out = "d." + s.states[r.from] + ".";
    switch (r.op) {
        case ChanOp::Eps: out += "eps"; break;
        case ChanOp::Write: out += "write." + s.channel_alphabet[r.letter]; break;
        case ChanOp::Read: out += "read." + s.channel_alphabet[r.letter]; break;
    }
    out += "." + s.states[r.to];
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

bool plain_ident(std::string_view t) {
    if (t.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_') return false;
    for (char c : t)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

} // namespace

ChannelSystem parse_lcs(std::string_view text) {
    ChannelSystem s;
    bool saw_header = false;
    bool saw_init = false;
    std::set<std::string> names; // states and channel letters share a namespace

    auto ensure_state = [&](const std::string& name, int line) -> int {
        int idx = s.find_state(name);
        if (idx < 0)
            throw ParseError("undeclared state '" + name + "'", line, 1);
        return idx;
    };
    auto ensure_channel_letter = [&](const std::string& name, int line) -> int {
        if (!plain_ident(name))
            throw ParseError("bad channel letter '" + name + "'", line, 1);
        int idx = s.find_channel_letter(name);
        if (idx >= 0) return idx;
        if (names.count(name))
            throw ParseError("name '" + name + "' already used for a state", line, 1);
        names.insert(name);
        s.channel_alphabet.push_back(name);
        return static_cast<int>(s.channel_alphabet.size() - 1);
    };

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        auto tok = split_tokens(line);
        if (tok.empty()) continue;

        if (!saw_header) {
            if (tok.size() != 1 || tok[0] != "lcs")
                throw ParseError("expected 'lcs' header", line_no, 1);
            saw_header = true;
            continue;
        }
        if (tok[0] == "state") {
            if (tok.size() != 2 || !plain_ident(tok[1]))
                throw ParseError("expected 'state <name>'", line_no, 1);
            if (names.count(tok[1]))
                throw ParseError("duplicate name '" + tok[1] + "'", line_no, 1);
            names.insert(tok[1]);
            s.states.push_back(tok[1]);
        } else if (tok[0] == "init") {
            if (tok.size() != 2)
                throw ParseError("expected 'init <state>'", line_no, 1);
            s.initial = ensure_state(tok[1], line_no);
            saw_init = true;
        } else if (tok[0] == "rule") {
            // rule q -> q' : write a | read a | eps
            if (tok.size() < 5 || tok[2] != "->" || tok[4] != ":")
                throw ParseError("expected 'rule q -> q2 : <op>'", line_no, 1);
            ChanRule r;
            r.from = ensure_state(tok[1], line_no);
            r.to = ensure_state(tok[3], line_no);
            if (tok.size() == 6 && tok[5] == "eps") {
                r.op = ChanOp::Eps;
            } else if (tok.size() == 7 && (tok[5] == "write" || tok[5] == "read")) {
                r.op = tok[5] == "write" ? ChanOp::Write : ChanOp::Read;
                r.letter = ensure_channel_letter(tok[6], line_no);
            } else {
                throw ParseError("expected 'write a', 'read a' or 'eps'", line_no, 1);
            }
            if (std::find(s.rules.begin(), s.rules.end(), r) == s.rules.end())
                s.rules.push_back(r);
        } else if (tok[0] == "goal") {
            if (tok.size() < 3 || tok[2] != ":")
                throw ParseError("expected 'goal q : letters...'", line_no, 1);
            s.goal_state = ensure_state(tok[1], line_no);
            s.goal_channel.clear();
            for (size_t i = 3; i < tok.size(); ++i)
                s.goal_channel.push_back(ensure_channel_letter(tok[i], line_no));
        } else {
            throw ParseError("unknown directive '" + tok[0] + "'", line_no, 1);
        }
    }
    if (!saw_header) throw ParseError("missing 'lcs' header", 1, 1);
    if (s.states.empty()) throw ParseError("no states declared", line_no, 1);
    if (!saw_init) throw ParseError("missing 'init' line", line_no, 1);
    for (const auto& r : s.rules)
        if (r.to == s.initial)
            throw ParseError("rule re-enters the initial state", 1, 1);
    return s;
}

// ---------------------------------------------------------------------------
// Lossy semantics
// ---------------------------------------------------------------------------

bool subseq(const std::vector<int>& u, const std::vector<int>& w) {
    size_t i = 0;
    for (size_t j = 0; j < w.size() && i < u.size(); ++j)
        if (u[i] == w[j]) ++i;
    return i == u.size();
}

namespace {

void all_subsequences(const std::vector<int>& w, std::set<std::vector<int>>& out) {
    std::vector<int> cur;
    // Iterative subset enumeration; channel words are desk-scale short.
    size_t n = w.size();
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        cur.clear();
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) cur.push_back(w[i]);
        out.insert(cur);
    }
}

} // namespace

std::vector<ChannelConfig> lossy_step(const ChannelSystem& s, const ChannelConfig& c,
                                      size_t rule_index) {
    const ChanRule& r = s.rules.at(rule_index);
    if (r.from != c.state) return {};
    std::set<std::vector<int>> drops;
    all_subsequences(c.channel, drops);
    std::set<ChannelConfig> out;
    for (const auto& u : drops) {
        std::vector<int> after;
        switch (r.op) {
            case ChanOp::Eps:
                after = u;
                break;
            case ChanOp::Write:
                after.push_back(r.letter);
                after.insert(after.end(), u.begin(), u.end());
                break;
            case ChanOp::Read:
                if (u.empty() || u.back() != r.letter) continue;
                after.assign(u.begin(), u.end() - 1);
                break;
        }
        std::set<std::vector<int>> finals;
        all_subsequences(after, finals);
        for (const auto& w : finals) out.insert({r.to, w});
    }
    return {out.begin(), out.end()};
}

bool lossy_reachable(const ChannelSystem& s, const ChannelConfig& target,
                     size_t channel_cap) {
    std::set<ChannelConfig> seen;
    std::vector<ChannelConfig> frontier{{s.initial, {}}};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<ChannelConfig> next;
        for (const auto& c : frontier) {
            for (size_t ri = 0; ri < s.rules.size(); ++ri) {
                for (const auto& succ : lossy_step(s, c, ri)) {
                    if (succ.channel.size() > channel_cap) continue;
                    if (succ == target) return true;
                    if (seen.insert(succ).second) next.push_back(succ);
                }
            }
        }
        frontier = std::move(next);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

namespace {

/// Leftmost embedding of u into w; empty optional when u is no
/// subsequence of w.
std::optional<std::vector<size_t>> leftmost_embedding(const std::vector<int>& u,
                                                      const std::vector<int>& w) {
    std::vector<size_t> at;
    size_t j = 0;
    for (int x : u) {
        while (j < w.size() && w[j] != x) ++j;
        if (j == w.size()) return std::nullopt;
        at.push_back(j++);
    }
    return at;
}

} // namespace

TimedWord encode_computation(const ChannelSystem& s, const LossyRun& run) {
    const size_t n = run.steps.size();
    // Forward pass: check the run and assign an offset in (0,1) to every
    // channel position. Surviving messages keep their offset so their two
    // appearances end up exactly one time unit apart; a fresh write goes
    // strictly below everything alive.
    int prev_state = s.initial;
    std::vector<int> prev_chan;
    std::vector<Rat> prev_off;
    std::vector<std::vector<Rat>> offsets(n);

    for (size_t j = 0; j < n; ++j) {
        const auto& step = run.steps[j];
        const ChanRule& rule = s.rules.at(step.rule);
        if (rule.from != prev_state)
            throw InvalidRun("rule " + std::to_string(j + 1) +
                             " does not start in the current state");
        if (rule.to != step.config.state)
            throw InvalidRun("configuration " + std::to_string(j + 1) +
                             " does not match its rule target");
        const std::vector<int>& next_chan = step.config.channel;
        std::vector<Rat> next_off(next_chan.size());

        Rat low(1, 2);
        for (const Rat& o : prev_off) low = std::min(low, o / 2);

        switch (rule.op) {
            case ChanOp::Eps: {
                auto emb = leftmost_embedding(next_chan, prev_chan);
                if (!emb) throw InvalidRun("eps step grows the channel");
                for (size_t k = 0; k < next_chan.size(); ++k)
                    next_off[k] = prev_off[(*emb)[k]];
                break;
            }
            case ChanOp::Write: {
                std::vector<int> virt;
                virt.push_back(rule.letter);
                virt.insert(virt.end(), prev_chan.begin(), prev_chan.end());
                auto emb = leftmost_embedding(next_chan, virt);
                if (!emb) throw InvalidRun("write step channel mismatch");
                for (size_t k = 0; k < next_chan.size(); ++k) {
                    size_t p = (*emb)[k];
                    next_off[k] = p == 0 ? low : prev_off[p - 1];
                }
                break;
            }
            case ChanOp::Read: {
                auto emb = leftmost_embedding(next_chan, prev_chan);
                bool ok = false;
                if (emb) {
                    size_t from = emb->empty() ? 0 : emb->back() + 1;
                    for (size_t p = from; p < prev_chan.size(); ++p)
                        if (prev_chan[p] == rule.letter) { ok = true; break; }
                }
                if (!ok) throw InvalidRun("read step has no message to consume");
                for (size_t k = 0; k < next_chan.size(); ++k)
                    next_off[k] = prev_off[(*emb)[k]];
                break;
            }
        }
        for (size_t k = 1; k < next_off.size(); ++k)
            assert(next_off[k - 1] < next_off[k]);
        offsets[j] = next_off;
        prev_state = step.config.state;
        prev_chan = next_chan;
        prev_off = std::move(next_off);
    }

    // Emit reversed: step j sits at base n-1-j. The rule letter goes below
    // every channel offset of its own segment and of the preceding
    // configuration's segment: a consumed message must show up strictly
    // more than one unit after the rule letter.
    TimedWord w;
    for (size_t j = n; j-- > 0;) {
        const auto& step = run.steps[j];
        Rat base(static_cast<long long>(n - 1 - j));
        w.items.push_back({s.states[step.config.state], base});
        Rat gamma_off(1, 2);
        for (const Rat& o : offsets[j]) gamma_off = std::min(gamma_off, o / 2);
        if (j > 0)
            for (const Rat& o : offsets[j - 1]) gamma_off = std::min(gamma_off, o / 2);
        w.items.push_back({rule_token(s, step.rule), base + gamma_off});
        for (size_t k = 0; k < step.config.channel.size(); ++k)
            w.items.push_back(
                {s.channel_alphabet[step.config.channel[k]], base + offsets[j][k]});
    }
    w.items.push_back({s.states[s.initial], Rat(static_cast<long long>(n))});
    validate_timed_word(w);
    return w;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::string EncodingReport::to_string() const {
    if (ok) return "ok";
    return condition + " violated: " + detail;
}

namespace {

enum class TokKind { State, Channel, RuleTok };

struct Classified {
    TokKind kind;
    int index; // state id / channel letter id / rule index
    Rat time;
};

using TimedChan = std::vector<std::pair<int, Rat>>;

/// Timed subsequence with one unit added to the embedded side: every
/// (letter, t) of inner must reappear as (letter, t+1) in outer.
bool embeds_plus_one(const TimedChan& inner, const TimedChan& outer) {
    size_t j = 0;
    for (const auto& [letter, t] : inner) {
        Rat want = t + Rat(1);
        while (j < outer.size() &&
               !(outer[j].first == letter && outer[j].second == want)) {
            // Times increase; once past the wanted stamp there is no match.
            if (outer[j].second > want) return false;
            ++j;
        }
        if (j == outer.size()) return false;
        ++j;
    }
    return true;
}

} // namespace

EncodingReport validate_encoding(const ChannelSystem& s, const TimedWord& w,
                                 int goal_state,
                                 const std::vector<int>& goal_channel) {
    auto fail = [](std::string cond, std::string detail) {
        return EncodingReport{false, std::move(cond), std::move(detail)};
    };

    std::map<std::string, std::pair<TokKind, int>> lookup;
    for (size_t i = 0; i < s.states.size(); ++i)
        lookup[s.states[i]] = {TokKind::State, static_cast<int>(i)};
    for (size_t i = 0; i < s.channel_alphabet.size(); ++i)
        lookup[s.channel_alphabet[i]] = {TokKind::Channel, static_cast<int>(i)};
    for (size_t i = 0; i < s.rules.size(); ++i)
        lookup[rule_token(s, i)] = {TokKind::RuleTok, static_cast<int>(i)};

    std::vector<Classified> items;
    for (const auto& it : w.items) {
        auto found = lookup.find(it.letter);
        if (found == lookup.end())
            return fail("P1", "letter '" + it.letter + "' is not in the alphabet");
        items.push_back({found->second.first, found->second.second, it.time});
    }

    // Shape: (state rule channel*)* state
    struct Segment {
        int state;
        Rat state_time;
        int rule = -1;
        Rat rule_time;
        TimedChan channel;
    };
    std::vector<Segment> segments;
    size_t pos = 0;
    if (items.empty()) return fail("P1", "empty word");
    while (pos < items.size()) {
        if (items[pos].kind != TokKind::State)
            return fail("P1", "expected a control state letter at position " +
                                  std::to_string(pos));
        Segment seg;
        seg.state = items[pos].index;
        seg.state_time = items[pos].time;
        ++pos;
        if (pos == items.size()) {
            segments.push_back(std::move(seg)); // terminal q0
            break;
        }
        if (items[pos].kind != TokKind::RuleTok)
            return fail("P1", "expected a rule letter after state '" +
                                  s.states[seg.state] + "'");
        seg.rule = items[pos].index;
        seg.rule_time = items[pos].time;
        ++pos;
        while (pos < items.size() && items[pos].kind == TokKind::Channel) {
            seg.channel.push_back({items[pos].index, items[pos].time});
            ++pos;
        }
        if (pos < items.size() && items[pos].kind == TokKind::RuleTok)
            return fail("P1", "two rule letters inside one segment");
        segments.push_back(std::move(seg));
    }
    const size_t m = segments.size(); // = n + 1
    if (segments.back().rule != -1)
        return fail("P1", "word does not end on a control state");
    if (m < 2) return fail("P1", "no step between final and initial state");
    // Chain and endpoint checks
    if (segments[0].state != goal_state)
        return fail("P1", "first state is not the goal state");
    if (segments.back().state != s.initial)
        return fail("P1", "last state is not the initial state");
    for (size_t k = 0; k + 1 < m; ++k) {
        const ChanRule& r = s.rules[segments[k].rule];
        if (r.to != segments[k].state)
            return fail("P1", "rule in segment " + std::to_string(k) +
                                  " does not target its state");
        if (r.from != segments[k + 1].state)
            return fail("P1", "rule in segment " + std::to_string(k) +
                                  " does not start in the next state");
    }
    std::vector<int> v_n;
    for (const auto& [letter, t] : segments[0].channel) v_n.push_back(letter);
    if (v_n != goal_channel)
        return fail("P1", "first channel block does not spell the goal channel");

    // (P2): states at integer times 0..n, everything else strictly inside
    // its unit interval and strictly increasing.
    for (size_t k = 0; k < m; ++k) {
        if (segments[k].state_time != Rat(static_cast<long long>(k)))
            return fail("P2", "state letter " + std::to_string(k) +
                                  " not at time " + std::to_string(k));
        if (segments[k].rule == -1) continue;
        Rat lo = segments[k].state_time;
        Rat hi = lo + Rat(1);
        Rat prev = lo;
        if (!(segments[k].rule_time > prev && segments[k].rule_time < hi))
            return fail("P2", "rule letter outside its unit interval");
        prev = segments[k].rule_time;
        for (const auto& [letter, t] : segments[k].channel) {
            if (!(t > prev && t < hi))
                return fail("P2", "channel letter not strictly increasing "
                                  "inside its unit interval");
            prev = t;
        }
    }

    // (P3): step consistency between consecutive channel blocks. Segment k
    // encodes configuration i = n-k; its predecessor block is segment k+1
    // (empty for the terminal q0 segment).
    for (size_t k = 0; k + 1 < m; ++k) {
        const TimedChan& vi = segments[k].channel;
        const TimedChan vprev =
            segments[k + 1].rule == -1 ? TimedChan{} : segments[k + 1].channel;
        const ChanRule& r = s.rules[segments[k].rule];
        switch (r.op) {
            case ChanOp::Eps:
                if (!embeds_plus_one(vi, vprev))
                    return fail("P3a", "a channel letter in segment " +
                                           std::to_string(k) +
                                           " has no match one unit later");
                break;
            case ChanOp::Write: {
                bool survived = !vi.empty() && vi[0].first == r.letter &&
                                embeds_plus_one({vi.begin() + 1, vi.end()}, vprev);
                bool lost = embeds_plus_one(vi, vprev);
                if (!survived && !lost)
                    return fail("P3b", "write step inconsistent with the "
                                       "next channel block");
                break;
            }
            case ChanOp::Read: {
                if (!embeds_plus_one(vi, vprev))
                    return fail("P3c", "a surviving channel letter in segment " +
                                           std::to_string(k) +
                                           " has no match one unit later");
                // The consumed message is hunted from the last letter of
                // this segment's channel block (the rule letter when the
                // block is empty): it must show up strictly more than one
                // unit later, and the next rule letter must not cross that
                // window first.
                Rat anchor = vi.empty() ? segments[k].rule_time : vi.back().second;
                if (segments[k + 1].rule != -1 &&
                    segments[k + 1].rule_time > anchor + Rat(1))
                    return fail("P3c", "rule letter of segment " +
                                           std::to_string(k + 1) +
                                           " drifts past the read window");
                bool found = false;
                for (const auto& [letter, t] : vprev)
                    if (letter == r.letter && t > anchor + Rat(1)) {
                        found = true;
                        break;
                    }
                if (!found)
                    return fail("P3c", "no message available for the read "
                                       "in segment " + std::to_string(k));
                break;
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// The reduction automaton
// ---------------------------------------------------------------------------

namespace {

struct AlphabetView {
    std::vector<std::string> letters;
    size_t n_states;
    size_t n_channel;

    bool is_state(LetterId l) const { return static_cast<size_t>(l) < n_states; }
    bool is_channel(LetterId l) const {
        return static_cast<size_t>(l) >= n_states &&
               static_cast<size_t>(l) < n_states + n_channel;
    }
    bool is_rule(LetterId l) const {
        return static_cast<size_t>(l) >= n_states + n_channel;
    }
    int state_of(LetterId l) const { return l; }
    int channel_of(LetterId l) const { return l - static_cast<int>(n_states); }
    size_t rule_of(LetterId l) const { return l - n_states - n_channel; }
};

AlphabetView encoding_alphabet(const ChannelSystem& s) {
    AlphabetView v;
    v.letters = s.states;
    for (const auto& a : s.channel_alphabet) v.letters.push_back(a);
    for (size_t i = 0; i < s.rules.size(); ++i) v.letters.push_back(rule_token(s, i));
    v.n_states = s.states.size();
    v.n_channel = s.channel_alphabet.size();
    return v;
}

Rule tt_rule(PosBool f) {
    return {Guard::full(), GuardExpr::tt(), std::move(f), 0};
}

Rule guard_rule(const GuardExpr& g, PosBool f) {
    return {normalize_guard(g), g, std::move(f), 0};
}

GuardExpr g_eq(long long c) { return GuardExpr::atom(GuardExpr::Kind::Eq, c); }
GuardExpr g_lt(long long c) { return GuardExpr::atom(GuardExpr::Kind::Lt, c); }
GuardExpr g_le(long long c) { return GuardExpr::atom(GuardExpr::Kind::Le, c); }
GuardExpr g_gt(long long c) { return GuardExpr::atom(GuardExpr::Kind::Gt, c); }

/// Deterministic untimed checker for the structural condition: the word
/// spells  goal  rule  w_f  q  rule  channel*  q ... down to the initial
/// state, with every rule linking its two neighbouring states.
Ata build_struct(const ChannelSystem& s, const AlphabetView& v, int goal_state,
                 const std::vector<int>& goal_channel) {
    // Control of the checker itself, encoded as named nodes built on
    // demand:
    //   start            expect the goal state letter
    //   rulegoal         expect a rule targeting the goal state
    //   wf.<k>.<q>       k goal-channel letters matched, then state q
    //   rule.<q>         expect a rule targeting q
    //   chan.<q>         skim channel letters until state q
    //   end              accepting; the word must stop here
    struct Pending {
        LocId id;
        std::string name;
    };
    Ata a;
    a.alphabet = v.letters;
    std::map<std::string, LocId> made;
    std::vector<Pending> todo;
    auto node = [&](const std::string& name) {
        auto it = made.find(name);
        if (it != made.end()) return it->second;
        LocId q = a.add_location("st." + name, name == "end");
        made.emplace(name, q);
        todo.push_back({q, name});
        return q;
    };

    LocId start = node("start");
    LocId sink = node("sink");
    a.initial = start;

    auto after_state = [&](int state) {
        return state == s.initial ? node("end") : node("rule." + s.states[state]);
    };
    auto wf_node = [&](size_t k, int src) {
        return node("wf." + std::to_string(k) + "." + s.states[src]);
    };

    while (!todo.empty()) {
        auto [q, name] = todo.back();
        todo.pop_back();
        for (LetterId l = 0; l < static_cast<LetterId>(v.letters.size()); ++l) {
            LocId to = sink;
            if (name == "start") {
                if (v.is_state(l) && v.state_of(l) == goal_state) to = node("rulegoal");
            } else if (name == "rulegoal") {
                if (v.is_rule(l)) {
                    const ChanRule& r = s.rules[v.rule_of(l)];
                    if (r.to == goal_state) to = wf_node(0, r.from);
                }
            } else if (name.rfind("wf.", 0) == 0) {
                size_t dot = name.find('.', 3);
                size_t k = static_cast<size_t>(std::stoul(name.substr(3, dot - 3)));
                int src = s.find_state(name.substr(dot + 1));
                if (k < goal_channel.size()) {
                    if (v.is_channel(l) && v.channel_of(l) == goal_channel[k])
                        to = wf_node(k + 1, src);
                } else if (v.is_state(l) && v.state_of(l) == src) {
                    to = after_state(src);
                }
            } else if (name.rfind("rule.", 0) == 0) {
                int target = s.find_state(name.substr(5));
                if (v.is_rule(l)) {
                    const ChanRule& r = s.rules[v.rule_of(l)];
                    if (r.to == target) to = node("chan." + s.states[r.from]);
                }
            } else if (name.rfind("chan.", 0) == 0) {
                int expected = s.find_state(name.substr(5));
                if (v.is_channel(l)) to = q;
                else if (v.is_state(l) && v.state_of(l) == expected)
                    to = after_state(expected);
            } else {
                // end and sink both trap; only end accepts.
                to = sink;
            }
            a.add_rule(q, l, tt_rule(PosBool::leaf(to, false)));
        }
    }
    return a;
}

} // namespace

Ata build_reduction_ata(const ChannelSystem& s, int goal_state,
                        const std::vector<int>& goal_channel) {
    if (goal_state == s.initial)
        throw Error("goal state must differ from the initial state");
    if (goal_state < 0 || goal_state >= static_cast<int>(s.states.size()))
        throw Error("goal state out of range");
    AlphabetView v = encoding_alphabet(s);

    Ata a_struct = build_struct(s, v, goal_state, goal_channel);

    // Unit spacing: control states exactly one apart starting at time 0,
    // everything else strictly inside the unit interval, words end on a
    // control state.
    Ata a_unit;
    {
        Ata& a = a_unit;
        a.alphabet = v.letters;
        LocId s0 = a.add_location("un.s0", false);
        LocId seen = a.add_location("un.seen", true);
        LocId mid = a.add_location("un.mid", false);
        LocId sink = a.add_location("un.sink", false);
        for (LetterId l = 0; l < static_cast<LetterId>(v.letters.size()); ++l) {
            if (v.is_state(l)) {
                a.add_rule(s0, l, guard_rule(g_eq(0), PosBool::leaf(seen, true)));
                a.add_rule(s0, l, guard_rule(g_gt(0), PosBool::leaf(sink, false)));
                for (LocId q : {seen, mid}) {
                    a.add_rule(q, l, guard_rule(g_eq(1), PosBool::leaf(seen, true)));
                    a.add_rule(q, l, guard_rule(g_lt(1), PosBool::leaf(sink, false)));
                    a.add_rule(q, l, guard_rule(g_gt(1), PosBool::leaf(sink, false)));
                }
            } else {
                a.add_rule(s0, l, tt_rule(PosBool::leaf(sink, false)));
                for (LocId q : {seen, mid}) {
                    a.add_rule(q, l,
                               guard_rule(GuardExpr::conj(g_gt(0), g_lt(1)),
                                          PosBool::leaf(mid, false)));
                    a.add_rule(q, l, guard_rule(g_eq(0), PosBool::leaf(sink, false)));
                    a.add_rule(q, l,
                               guard_rule(GuardExpr::atom(GuardExpr::Kind::Ge, 1),
                                          PosBool::leaf(sink, false)));
                }
            }
            a.add_rule(sink, l, tt_rule(PosBool::leaf(sink, false)));
        }
        a.initial = s0;
    }

    // Strict monotonicity: first letter at time 0, consecutive letters at
    // strictly increasing times.
    Ata a_strict;
    {
        Ata& a = a_strict;
        a.alphabet = v.letters;
        LocId s0 = a.add_location("str.s0", true);
        LocId run = a.add_location("str.s", true);
        LocId sink = a.add_location("str.sink", false);
        for (LetterId l = 0; l < static_cast<LetterId>(v.letters.size()); ++l) {
            a.add_rule(s0, l, guard_rule(g_eq(0), PosBool::leaf(run, false)));
            a.add_rule(s0, l, guard_rule(g_gt(0), PosBool::leaf(sink, false)));
            a.add_rule(run, l, guard_rule(g_gt(0), PosBool::leaf(run, true)));
            a.add_rule(run, l, guard_rule(g_eq(0), PosBool::leaf(sink, false)));
            a.add_rule(sink, l, tt_rule(PosBool::leaf(sink, false)));
        }
        a.initial = s0;
    }

    // Step checker: the universal component. Every channel letter spawns a
    // copy verifying its reappearance exactly one unit later; reads spawn a
    // copy hunting for the consumed message strictly beyond one unit.
    Ata a_check;
    {
        Ata& a = a_check;
        a.alphabet = v.letters;
        LocId s0 = a.add_location("chk.s0", false);
        LocId top = a.add_location("chk.top", true);
        LocId sink = a.add_location("chk.sink", false);
        LocId step = a.add_location("chk.step", false);
        LocId chan = a.add_location("chk.chan", false);
        std::vector<LocId> plus1(v.n_channel), wri(v.n_channel), rea(v.n_channel),
            tryr(v.n_channel), ckr(v.n_channel);
        for (size_t c = 0; c < v.n_channel; ++c) {
            const std::string& name = s.channel_alphabet[c];
            plus1[c] = a.add_location("chk.plus1." + name, false);
            wri[c] = a.add_location("chk.write." + name, false);
            rea[c] = a.add_location("chk.read." + name, false);
            tryr[c] = a.add_location("chk.try." + name, false);
            ckr[c] = a.add_location("chk.ckr." + name, false);
        }
        auto leaf = [](LocId q, bool r = false) { return PosBool::leaf(q, r); };
        auto conj2 = [](PosBool x, PosBool y) {
            std::vector<PosBool> kids;
            kids.push_back(std::move(x));
            kids.push_back(std::move(y));
            return PosBool::conj(std::move(kids));
        };
        auto conj3 = [&](PosBool x, PosBool y, PosBool z) {
            return conj2(std::move(x), conj2(std::move(y), std::move(z)));
        };

        for (LetterId l = 0; l < static_cast<LetterId>(v.letters.size()); ++l) {
            a.add_rule(top, l, tt_rule(leaf(top)));
            a.add_rule(sink, l, tt_rule(leaf(sink)));

            if (v.is_state(l)) {
                int q = v.state_of(l);
                a.add_rule(s0, l,
                           q == s.initial
                               ? tt_rule(leaf(top))
                               : tt_rule(conj2(leaf(s0), leaf(step, true))));
                a.add_rule(step, l, tt_rule(leaf(sink)));
                a.add_rule(chan, l, tt_rule(leaf(top)));
                for (size_t c = 0; c < v.n_channel; ++c) {
                    a.add_rule(plus1[c], l, guard_rule(g_lt(1), leaf(plus1[c])));
                    a.add_rule(plus1[c], l,
                               guard_rule(GuardExpr::atom(GuardExpr::Kind::Ge, 1),
                                          leaf(sink)));
                    a.add_rule(wri[c], l, tt_rule(leaf(top)));
                    a.add_rule(rea[c], l, tt_rule(leaf(top)));
                    a.add_rule(tryr[c], l, tt_rule(leaf(ckr[c])));
                    a.add_rule(ckr[c], l, guard_rule(g_le(1), leaf(ckr[c])));
                    a.add_rule(ckr[c], l, guard_rule(g_gt(1), leaf(sink)));
                }
            } else if (v.is_channel(l)) {
                size_t b = static_cast<size_t>(v.channel_of(l));
                a.add_rule(s0, l, tt_rule(leaf(s0)));
                a.add_rule(step, l, tt_rule(leaf(sink)));
                a.add_rule(chan, l, tt_rule(conj2(leaf(chan), leaf(plus1[b], true))));
                for (size_t c = 0; c < v.n_channel; ++c) {
                    if (c == b) {
                        a.add_rule(plus1[c], l, guard_rule(g_lt(1), leaf(plus1[c])));
                        a.add_rule(plus1[c], l, guard_rule(g_eq(1), leaf(top)));
                        a.add_rule(plus1[c], l, guard_rule(g_gt(1), leaf(sink)));
                        a.add_rule(ckr[c], l, guard_rule(g_le(1), leaf(ckr[c])));
                        a.add_rule(ckr[c], l, guard_rule(g_gt(1), leaf(top)));
                    } else {
                        a.add_rule(plus1[c], l, guard_rule(g_lt(1), leaf(plus1[c])));
                        a.add_rule(plus1[c], l,
                                   guard_rule(GuardExpr::atom(GuardExpr::Kind::Ge, 1),
                                              leaf(sink)));
                        a.add_rule(ckr[c], l, tt_rule(leaf(ckr[c])));
                    }
                    a.add_rule(wri[c], l,
                               c == b ? tt_rule(leaf(chan))
                                      : tt_rule(conj2(leaf(plus1[b], true), leaf(chan))));
                    a.add_rule(rea[c], l,
                               tt_rule(conj3(leaf(rea[c]), leaf(plus1[b], true),
                                             leaf(tryr[c], true))));
                    a.add_rule(tryr[c], l, tt_rule(leaf(top)));
                }
            } else {
                const ChanRule& r = s.rules[v.rule_of(l)];
                a.add_rule(s0, l, tt_rule(leaf(s0)));
                switch (r.op) {
                    case ChanOp::Eps:
                        a.add_rule(step, l, tt_rule(leaf(chan)));
                        break;
                    case ChanOp::Write:
                        a.add_rule(step, l, tt_rule(leaf(wri[r.letter])));
                        break;
                    case ChanOp::Read:
                        a.add_rule(step, l,
                                   tt_rule(conj2(leaf(rea[r.letter]),
                                                 leaf(tryr[r.letter], true))));
                        break;
                }
                a.add_rule(chan, l, tt_rule(leaf(sink)));
                for (size_t c = 0; c < v.n_channel; ++c) {
                    a.add_rule(plus1[c], l, guard_rule(g_lt(1), leaf(plus1[c])));
                    a.add_rule(plus1[c], l,
                               guard_rule(GuardExpr::atom(GuardExpr::Kind::Ge, 1),
                                          leaf(sink)));
                    a.add_rule(wri[c], l, tt_rule(leaf(sink)));
                    a.add_rule(rea[c], l, tt_rule(leaf(sink)));
                    a.add_rule(tryr[c], l, tt_rule(leaf(sink)));
                    a.add_rule(ckr[c], l, guard_rule(g_le(1), leaf(ckr[c])));
                    a.add_rule(ckr[c], l, guard_rule(g_gt(1), leaf(sink)));
                }
            }
        }
        a.initial = s0;
    }

    Ata combined = combine(a_struct, a_unit, CombineMode::And);
    combined = combine(combined, a_strict, CombineMode::And);
    combined = combine(combined, a_check, CombineMode::And);
    return combined;
}

} // namespace ata
