#pragma once

#include "ata/automaton.hpp"
#include "ata/semantics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ata {

enum class ChanOp { Write, Read, Eps };

struct ChanRule {
    int from = 0;
    ChanOp op = ChanOp::Eps;
    int letter = -1; // channel letter for Write/Read, -1 for Eps
    int to = 0;
    bool operator==(const ChanRule&) const = default;
};

/// Lossy FIFO channel machine. Writes happen at the beginning of the
/// channel word, reads at the end; any message may be dropped during a
/// step. No rule may re-enter the initial state.
struct ChannelSystem {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<std::string> channel_alphabet;
    std::vector<ChanRule> rules;
    int goal_state = -1;            // from the optional goal line
    std::vector<int> goal_channel;

    int find_state(std::string_view name) const;
    int find_channel_letter(std::string_view name) const;
    std::string channel_word_to_string(const std::vector<int>& w) const;
};

/// Textual format:
///   lcs
///   state q0
///   state q1
///   init q0
///   rule q0 -> q1 : write a
///   rule q1 -> q1 : eps
///   rule q1 -> q2 : read a
///   goal q2 : a b
/// '#' starts a comment. State and channel-letter names are plain
/// identifiers (letters, digits, underscore) and must not collide.
ChannelSystem parse_lcs(std::string_view text);

/// Input-alphabet token of a rule, e.g. "d.q0.write.a.q1" / "d.q1.eps.q2".
std::string rule_token(const ChannelSystem& s, size_t rule_index);

/// Subsequence ordering (not necessarily contiguous).
bool subseq(const std::vector<int>& u, const std::vector<int>& w);

struct ChannelConfig {
    int state = 0;
    std::vector<int> channel;
    auto operator<=>(const ChannelConfig&) const = default;
};

/// All configurations reachable by one lossy step: drop any messages,
/// take the perfect move, drop any messages again. Empty when the rule
/// does not apply (wrong state, or no read match on any subsequence).
std::vector<ChannelConfig> lossy_step(const ChannelSystem& s, const ChannelConfig& c,
                                      size_t rule_index);

/// Breadth-first lossy reachability with channel length capped. Sound
/// always; complete when the cap covers the channel lengths any witness
/// run needs. Desk-scale oracle for the reduction.
bool lossy_reachable(const ChannelSystem& s, const ChannelConfig& target,
                     size_t channel_cap);

/// A lossy computation out of (initial, empty): the rule taken and the
/// configuration reached, per step.
struct LossyRun {
    struct Step {
        size_t rule = 0;
        ChannelConfig config;
    };
    std::vector<Step> steps;
};

/// Timed-word encoding of a computation, reversed: the last configuration
/// sits in the first unit interval, control states at integer times,
/// rule and channel letters strictly inside the interval, and channel
/// letters that survive a step exactly one time unit apart. Throws
/// InvalidRun if the run is not a lossy computation.
TimedWord encode_computation(const ChannelSystem& s, const LossyRun& run);

struct EncodingReport {
    bool ok = true;
    std::string condition; // "P1", "P2", "P3a", "P3b", "P3c" when violated
    std::string detail;
    std::string to_string() const;
};

/// Direct structural check of the encoding conditions, independent of any
/// automaton. Reports the first violated condition.
EncodingReport validate_encoding(const ChannelSystem& s, const TimedWord& w,
                                 int goal_state, const std::vector<int>& goal_channel);

/// The reduction: a purely universal one-clock automaton over
/// states + channel letters + rule tokens accepting exactly the encodings
/// of lossy computations that end in (goal_state, goal_channel). Built as
/// the conjunction of a structure checker, a unit-spacing checker, a
/// strict-monotonicity checker and the step checker.
Ata build_reduction_ata(const ChannelSystem& s, int goal_state,
                        const std::vector<int>& goal_channel);

} // namespace ata
