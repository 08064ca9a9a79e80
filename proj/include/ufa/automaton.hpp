#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ufa/conv.hpp"
#include "ufa/errors.hpp"

namespace ufa {

using State = std::uint32_t;

// Finite automaton over track-pattern letters. Transitions are stored
// sparsely; a missing letter rejects. Epsilon moves are allowed, so the same
// type carries NFAs and (epsilon-free, single-target) DFAs.
struct UnaryAutomaton {
    int tracks = 1;
    State start = 0;
    std::vector<bool> accepting;                            // indexed by state
    std::vector<std::map<ConvLetter, std::vector<State>>> delta;  // sorted targets
    std::vector<std::vector<State>> eps;                    // sorted targets

    UnaryAutomaton() : accepting(1, false), delta(1), eps(1) {}
    explicit UnaryAutomaton(int n_tracks, State n_states = 1)
        : tracks(n_tracks), accepting(n_states, false), delta(n_states), eps(n_states) {}

    State num_states() const { return static_cast<State>(accepting.size()); }

    State add_state(bool accept = false) {
        accepting.push_back(accept);
        delta.emplace_back();
        eps.emplace_back();
        return num_states() - 1;
    }

    void add_transition(State from, ConvLetter letter, State to);
    void add_epsilon(State from, State to);

    // Epsilon-free with at most one target per (state, letter).
    bool is_deterministic() const;

    friend bool operator==(const UnaryAutomaton& a, const UnaryAutomaton& b) {
        return a.tracks == b.tracks && a.start == b.start && a.accepting == b.accepting &&
               a.delta == b.delta && a.eps == b.eps;
    }
};

// DFA for the pattern-monotone letter sequences of the given arity: every
// convolution of a tuple of unary words, and nothing else.
UnaryAutomaton validity(int tracks);

UnaryAutomaton determinize(const UnaryAutomaton& a);

// Drop states that are not both reachable and co-reachable. Keeps the start
// state even when the language is empty.
UnaryAutomaton trim(const UnaryAutomaton& a);

// Canonical minimal trimmed DFA: partition refinement over the partial
// transition function, then breadth-first state numbering with letters taken
// in ascending bit-pattern order. Two automata accept the same language iff
// their minimized forms compare equal.
UnaryAutomaton minimize(const UnaryAutomaton& a);

enum class ProductMode { And, Or, Diff };

UnaryAutomaton product(const UnaryAutomaton& a, const UnaryAutomaton& b, ProductMode mode);

// Complement relative to validity(tracks), never the free monoid.
UnaryAutomaton complement_within_validity(const UnaryAutomaton& a);

bool is_empty(const UnaryAutomaton& a);
bool is_finite(const UnaryAutomaton& a);

struct EnumerateResult {
    std::vector<std::vector<std::uint64_t>> tuples;  // length-lexicographic order
    bool truncated = false;  // limit hit while the language keeps going
};

EnumerateResult enumerate_tuples(const UnaryAutomaton& a, std::size_t limit);

bool accepts(const UnaryAutomaton& a, const std::vector<UnaryWord>& tuple);
bool accepts_letters(const UnaryAutomaton& a, const std::vector<ConvLetter>& word);

// Membership of every pair with both components <= max_component, computed by
// a single incremental walk per row. Arity 2 only; table[p][q] = accepts (p,q).
std::vector<std::vector<bool>> pair_table(const UnaryAutomaton& a, std::uint64_t max_component);

struct LoopProfile {
    std::set<std::uint64_t> loop_lengths;  // lengths of all simple cycles
    State state_count = 0;                 // of the trimmed automaton
};

// Requires a deterministic automaton; trims before analysing.
LoopProfile loop_profile(const UnaryAutomaton& a);

// Smallest multiple of lcm(loop lengths) strictly greater than the trimmed
// state count; state count + 1 when there are no loops.
PumpingConstant pumping_constant(const UnaryAutomaton& a);

// First violation of the column-shift closure rules among accepted pairs with
// both components <= max_component, or nullopt if none. Arity 2 only.
struct ArrowRuleViolation {
    std::uint64_t p = 0, q = 0;      // accepted pair
    std::uint64_t p2 = 0, q2 = 0;    // shifted pair that should be accepted
    std::string rule;
};
std::optional<ArrowRuleViolation> first_arrow_rule_violation(const UnaryAutomaton& a,
                                                             PumpingConstant d,
                                                             std::uint64_t max_component);

// Textual .ufa format, bit-exact for canonical automata.
UnaryAutomaton read_ufa(std::istream& in);
void write_ufa(std::ostream& out, const UnaryAutomaton& a);
UnaryAutomaton load_ufa(const std::string& path);
void save_ufa(const std::string& path, const UnaryAutomaton& a);

}  // namespace ufa
