#pragma once

#include <cstdint>
#include <utility>

#include "ufa/relation.hpp"

namespace ufa {

// Witness that the closure loop's result W is exactly the reflexive
// transitive closure: the three checks force W to contain it, and the
// construction keeps W inside it.
struct ClosureCertificate {
    std::uint64_t k = 0;          // bounded-power cutoff that certified
    bool contains_diagonal = false;
    bool contains_r = false;
    bool transitive = false;      // W o W subset of W
    std::uint32_t iterations = 0;
};

inline constexpr std::uint64_t kDefaultMaxK = 4096;

// diagonal U r U r^2 U ... U r^k.
Relation bounded_power(const Relation& r, std::uint64_t k);

// Pairs linked by a strictly length-increasing chain of s-steps. Two copies
// of s's automaton run side by side: the first follows the input, the second
// always takes the both-active transition, and whenever the first copy sits
// in an accepting state it may be reset to the second copy's state.
Relation build_v(const Relation& s);
// Mirror image: strictly length-decreasing chains.
Relation build_vprime(const Relation& s);

// s U (s o v) U (v' o s) U (v' o s o v) for v = build_v(s), v' = build_vprime(s).
Relation assemble_w(const Relation& s);

// Reflexive transitive closure with an algebraic certificate. Doubles the
// bounded-power cutoff until the certificate accepts; throws
// ClosureBudgetExceeded past max_k.
std::pair<Relation, ClosureCertificate> star_closure(const Relation& r,
                                                     std::uint64_t max_k = kDefaultMaxK);

// Transitive closure: r composed with r*.
Relation plus_closure(const Relation& r, std::uint64_t max_k = kDefaultMaxK);

// Smallest equivalence relation containing r: (r U converse(r))*.
Relation equivalence_closure(const Relation& r, std::uint64_t max_k = kDefaultMaxK);

}  // namespace ufa
