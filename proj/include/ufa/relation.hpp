#pragma once

#include <cstdint>
#include <vector>

#include "ufa/automaton.hpp"

namespace ufa {

// A subset of N^arity carried by a canonical minimized automaton whose
// language is contained in validity(arity). Immutable after construction.
class Relation {
public:
    // Intersects with validity and minimizes.
    static Relation make(int arity, const UnaryAutomaton& raw);

    int arity() const { return arity_; }
    const UnaryAutomaton& automaton() const { return a_; }

    bool contains(const std::vector<UnaryWord>& tuple) const { return accepts(a_, tuple); }
    bool contains_pair(std::uint64_t x, std::uint64_t y) const {
        return contains({UnaryWord{x}, UnaryWord{y}});
    }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.arity_ == b.arity_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }

private:
    Relation(int arity, UnaryAutomaton a) : arity_(arity), a_(std::move(a)) {}

    int arity_;
    UnaryAutomaton a_;
};

// Constant relations.
Relation diagonal();                       // {(m, m)}
Relation length_lt();                      // {(m, n) : m < n}
Relation full_relation(int arity);         // N^arity
Relation empty_relation(int arity);
Relation single_value(std::uint64_t v);    // arity 1, {v}
Relation single_pair(std::uint64_t x, std::uint64_t y);
Relation finite_set(const std::vector<std::uint64_t>& values);          // arity 1
Relation finite_pairs(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

// {x : x >= lo and x = residue (mod modulus)}; modulus >= 1.
Relation arith_set(std::uint64_t residue, std::uint64_t modulus, std::uint64_t lo);
// {(x, x + d)} for d >= 0; negative d swaps the roles.
Relation diff_exact(std::int64_t d);
// {(x, y) : y - x in {d0, d0 + m, d0 + 2m, ...}}; d0 >= 1, m >= 1.
Relation diff_in(std::uint64_t d0, std::uint64_t modulus);

// Boolean algebra; complement is relative to validity(arity).
Relation rel_union(const Relation& a, const Relation& b);
Relation rel_intersect(const Relation& a, const Relation& b);
Relation rel_difference(const Relation& a, const Relation& b);
Relation rel_complement(const Relation& a);
bool rel_is_empty(const Relation& a);
bool rel_subset(const Relation& sub, const Relation& super);

Relation converse(const Relation& r);  // arity 2

// General slot remap: result = {(b_1..b_k) : (b_{g(0)}, ..., b_{g(m-1)}) in r}
// where g maps each slot of r to a track of the result and hits every result
// track used by r's tuple. Tracks of the result that no slot maps onto are
// unconstrained (cylinder dimensions).
Relation lift(const Relation& r, int target_arity, const std::vector<int>& slot_to_track);

// lift with an injective slot map, per the classical cylindrification.
Relation cylindrify(const Relation& r, int target_arity, const std::vector<int>& slot_map);

// Existential projection: drop one track.
Relation project(const Relation& r, int drop_track);

// {(x, z) : exists y, (x, y) in r and (y, z) in s}.
Relation compose(const Relation& r, const Relation& s);

// Keep tuples whose component on `track` lies in the arity-1 relation `lang`.
Relation restrict_track(const Relation& r, int track, const Relation& lang);

// Cross product of two arity-1 relations as an arity-2 relation.
Relation cross(const Relation& left, const Relation& right);

}  // namespace ufa
