#pragma once

#include "ata/automaton.hpp"
#include "ata/channels.hpp"
#include "ata/io.hpp"
#include "ata/regions.hpp"
#include "ata/semantics.hpp"

#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace ata;

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
Ata load_fixture_ata(const std::string& name);

/// The no-two-letters-one-apart automaton (three locations over {a}).
Ata example_one();
/// Identity-keepers on q1, q2 plus the x>2 branching rule on q3.
Ata worked_example();
/// Single accepting location with a tt self-loop per letter.
Ata accept_everything(const std::vector<std::string>& alphabet);

// Deterministic, implementation-independent randomness (no libstdc++
// distribution quirks).
struct Rng {
    std::mt19937 gen;
    explicit Rng(uint32_t seed) : gen(seed) {}
    size_t below(size_t n) { return n ? gen() % n : 0; }
    bool flip() { return gen() & 1u; }
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<size_t>(hi - lo + 1)));
    }
};

struct RandomAtaParams {
    int max_locations = 3;
    long long max_cmax = 2;
    int max_letters = 2;
    int max_cells = 3;
};

/// Partition-valid by construction: each row's guards split the clock
/// axis at random integer boundaries.
Ata random_ata(Rng& rng, const RandomAtaParams& params = {});

/// Nondecreasing timestamps with small denominators.
TimedWord random_word(Rng& rng, const std::vector<std::string>& alphabet,
                      size_t max_len = 4, long long max_whole = 3);

/// Random configuration set over the automaton's locations.
ConfigSet random_config_set(Rng& rng, const Ata& a, size_t max_size = 4,
                            long long max_whole = 3);

/// Independent acceptance oracle: direct evaluation of the two-player
/// game on the formula tree (no DNF, no configuration sets).
bool game_oracle_accepts(const Ata& a, const TimedWord& w);

/// Independent simulator for plain nondeterministic automata.
bool nta_accepts(const Nta& n, const TimedWord& w);

Nta random_nta(Rng& rng);

/// Exhaustive embedding search implementing the monotone-domination
/// definition directly (all strictly increasing maps, flag-aware).
bool brute_force_preceq(const RegionWord& w1, const RegionWord& w2);

/// A concrete configuration set whose abstraction is exactly w; tail
/// pairs are replicated `boost` times at different integer parts.
ConfigSet canonical_preimage(const RegionWord& w, long long cmax, int boost = 1);

/// All region words over the given letter pool up to the given length,
/// with every admissible punctuality flag.
std::vector<RegionWord> enumerate_words(const std::vector<RegionLetter>& pool,
                                        size_t max_len, long long cmax);

/// Corpus for the reduction cross-check: tiny lossy channel systems with
/// mixed reachable and unreachable goals.
std::vector<std::string> channel_corpus();

} // namespace testutil
