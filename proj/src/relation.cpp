#include "ufa/relation.hpp"

#include <algorithm>
#include <set>

namespace ufa {

Relation Relation::make(int arity, const UnaryAutomaton& raw) {
    if (raw.tracks != arity)
        throw ArityMismatch("automaton has " + std::to_string(raw.tracks) + " tracks, expected " +
                            std::to_string(arity));
    UnaryAutomaton clipped = arity == 0 ? raw : product(raw, validity(arity), ProductMode::And);
    return Relation(arity, minimize(clipped));
}

Relation diagonal() {
    UnaryAutomaton a(2, 1);
    a.accepting[0] = true;
    a.add_transition(0, 3, 0);  // 11
    return Relation::make(2, a);
}

Relation length_lt() {
    UnaryAutomaton a(2, 2);
    a.accepting[1] = true;
    a.add_transition(0, 3, 0);  // 11
    a.add_transition(0, 2, 1);  // _1
    a.add_transition(1, 2, 1);
    return Relation::make(2, a);
}

Relation full_relation(int arity) { return Relation::make(arity, validity(arity)); }

Relation empty_relation(int arity) {
    UnaryAutomaton a(arity, 1);
    return Relation::make(arity, a);
}

Relation single_value(std::uint64_t v) { return finite_set({v}); }

Relation finite_set(const std::vector<std::uint64_t>& values) {
    UnaryAutomaton a(1, 1);
    std::uint64_t longest = 0;
    for (std::uint64_t v : values) longest = std::max(longest, v);
    for (std::uint64_t s = 0; s < longest; ++s) a.add_transition(static_cast<State>(s), 1, a.add_state());
    for (std::uint64_t v : values) a.accepting[static_cast<State>(v)] = true;
    return Relation::make(1, a);
}

Relation single_pair(std::uint64_t x, std::uint64_t y) { return finite_pairs({{x, y}}); }

Relation finite_pairs(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
    UnaryAutomaton a(2, 1);
    for (auto [x, y] : pairs) {
        State cur = 0;
        for (ConvLetter letter : conv({UnaryWord{x}, UnaryWord{y}})) {
            State next = a.add_state();
            a.add_transition(cur, letter, next);
            cur = next;
        }
        a.accepting[cur] = true;
    }
    return Relation::make(2, a);
}

Relation arith_set(std::uint64_t residue, std::uint64_t modulus, std::uint64_t lo) {
    if (modulus == 0) throw std::invalid_argument("arith_set: zero modulus");
    residue %= modulus;
    std::uint64_t n = lo + modulus;
    UnaryAutomaton a(1, 0);
    for (std::uint64_t s = 0; s < n; ++s) a.add_state(s >= lo && (s % modulus) == residue);
    a.start = 0;
    for (std::uint64_t s = 0; s + 1 < n; ++s)
        a.add_transition(static_cast<State>(s), 1, static_cast<State>(s + 1));
    a.add_transition(static_cast<State>(n - 1), 1, static_cast<State>(lo));
    return Relation::make(1, a);
}

Relation diff_exact(std::int64_t d) {
    if (d < 0) return converse(diff_exact(-d));
    UnaryAutomaton a(2, 1);
    a.add_transition(0, 3, 0);
    State cur = 0;
    for (std::int64_t i = 0; i < d; ++i) {
        State next = a.add_state();
        a.add_transition(cur, 2, next);
        cur = next;
    }
    a.accepting[cur] = true;
    return Relation::make(2, a);
}

Relation diff_in(std::uint64_t d0, std::uint64_t modulus) {
    if (d0 == 0 || modulus == 0) throw std::invalid_argument("diff_in: zero offset or modulus");
    UnaryAutomaton a(2, 1);
    a.add_transition(0, 3, 0);
    State cur = 0;
    std::vector<State> chain{0};
    for (std::uint64_t i = 0; i < d0 + modulus - 1; ++i) {
        State next = a.add_state();
        a.add_transition(cur, 2, next);
        chain.push_back(next);
        cur = next;
    }
    a.add_transition(cur, 2, chain[d0]);
    for (std::uint64_t i = d0; i < d0 + modulus; ++i)
        if ((i - d0) % modulus == 0) a.accepting[chain[i]] = true;
    return Relation::make(2, a);
}

Relation rel_union(const Relation& a, const Relation& b) {
    if (a.arity() != b.arity()) throw ArityMismatch("union of different arities");
    return Relation::make(a.arity(), product(a.automaton(), b.automaton(), ProductMode::Or));
}

Relation rel_intersect(const Relation& a, const Relation& b) {
    if (a.arity() != b.arity()) throw ArityMismatch("intersection of different arities");
    return Relation::make(a.arity(), product(a.automaton(), b.automaton(), ProductMode::And));
}

Relation rel_difference(const Relation& a, const Relation& b) {
    if (a.arity() != b.arity()) throw ArityMismatch("difference of different arities");
    return Relation::make(a.arity(), product(a.automaton(), b.automaton(), ProductMode::Diff));
}

Relation rel_complement(const Relation& a) {
    return Relation::make(a.arity(), complement_within_validity(a.automaton()));
}

bool rel_is_empty(const Relation& a) { return is_empty(a.automaton()); }

bool rel_subset(const Relation& sub, const Relation& super) {
    return is_empty(product(sub.automaton(), super.automaton(), ProductMode::Diff));
}

Relation converse(const Relation& r) {
    if (r.arity() != 2) throw ArityMismatch("converse needs arity 2");
    return lift(r, 2, {1, 0});
}

Relation lift(const Relation& r, int target_arity, const std::vector<int>& slot_to_track) {
    if (static_cast<int>(slot_to_track.size()) != r.arity())
        throw BadSlotMap("slot map size != relation arity");
    if (target_arity < 0 || target_arity > kMaxTracks) throw BadSlotMap("bad target arity");
    for (int t : slot_to_track)
        if (t < 0 || t >= target_arity) throw BadSlotMap("slot map out of range");

    const UnaryAutomaton& src = r.automaton();
    UnaryAutomaton out(target_arity, src.num_states());
    out.start = src.start;
    out.accepting = src.accepting;
    State tail = out.add_state(true);

    const ConvLetter full = all_tracks_letter(target_arity);
    for (ConvLetter letter = 1; letter <= full; ++letter) {
        ConvLetter image = 0;
        for (std::size_t slot = 0; slot < slot_to_track.size(); ++slot)
            if (letter & (ConvLetter(1) << slot_to_track[slot])) image |= ConvLetter(1) << slot;
        if (image == 0) {
            // All mapped tracks are padding: the source word has ended.
            for (State s = 0; s < src.num_states(); ++s)
                if (src.accepting[s]) out.add_transition(s, letter, tail);
            out.add_transition(tail, letter, tail);
        } else {
            for (State s = 0; s < src.num_states(); ++s) {
                auto it = src.delta[s].find(image);
                if (it == src.delta[s].end()) continue;
                for (State t : it->second) out.add_transition(s, letter, t);
            }
        }
    }
    return Relation::make(target_arity, out);
}

Relation cylindrify(const Relation& r, int target_arity, const std::vector<int>& slot_map) {
    std::set<int> seen;
    for (int t : slot_map)
        if (!seen.insert(t).second) throw BadSlotMap("slot map not injective");
    return lift(r, target_arity, slot_map);
}

Relation project(const Relation& r, int drop_track) {
    if (r.arity() < 1) throw ArityMismatch("project needs arity >= 1");
    if (drop_track < 0 || drop_track >= r.arity()) throw ArityMismatch("project: bad track index");

    const UnaryAutomaton& src = r.automaton();
    int target_arity = r.arity() - 1;
    UnaryAutomaton out(target_arity, src.num_states());
    out.start = src.start;
    out.accepting = src.accepting;

    const ConvLetter drop_bit = ConvLetter(1) << drop_track;
    for (State s = 0; s < src.num_states(); ++s) {
        for (const auto& [letter, targets] : src.delta[s]) {
            // Erase the dropped bit, compressing higher tracks down one slot.
            ConvLetter low = letter & (drop_bit - 1);
            ConvLetter high = (letter >> (drop_track + 1)) << drop_track;
            ConvLetter erased = low | high;
            for (State t : targets) {
                if (erased == 0)
                    out.add_epsilon(s, t);
                else
                    out.add_transition(s, erased, t);
            }
        }
    }
    return Relation::make(target_arity, out);
}

Relation compose(const Relation& r, const Relation& s) {
    if (r.arity() != 2 || s.arity() != 2) throw ArityMismatch("compose needs arity 2");
    Relation left = cylindrify(r, 3, {0, 1});
    Relation right = cylindrify(s, 3, {1, 2});
    return project(rel_intersect(left, right), 1);
}

Relation restrict_track(const Relation& r, int track, const Relation& lang) {
    if (lang.arity() != 1) throw ArityMismatch("restrict_track needs an arity-1 language");
    if (track < 0 || track >= r.arity()) throw ArityMismatch("restrict_track: bad track index");
    return rel_intersect(r, cylindrify(lang, r.arity(), {track}));
}

Relation cross(const Relation& left, const Relation& right) {
    if (left.arity() != 1 || right.arity() != 1) throw ArityMismatch("cross needs arity-1 operands");
    return rel_intersect(cylindrify(left, 2, {0}), cylindrify(right, 2, {1}));
}

}  // namespace ufa
