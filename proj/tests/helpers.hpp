#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/foundational.hpp"
#include "ufa/relation.hpp"

namespace ufa::test {

using Rng = std::mt19937_64;

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline std::uint32_t pick(Rng& rng, std::uint32_t n) {
    return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng);
}

// Hand-built successor relation {(n, n+1)}.
inline Relation succ_relation() {
    UnaryAutomaton a(2, 2);
    a.accepting[1] = true;
    a.add_transition(0, 3, 0);
    a.add_transition(0, 2, 1);
    return Relation::make(2, a);
}

// Hand-built {(m, n) : m <= n}.
inline Relation leq_relation() {
    UnaryAutomaton a(2, 2);
    a.accepting[0] = true;
    a.accepting[1] = true;
    a.add_transition(0, 3, 0);
    a.add_transition(0, 2, 1);
    a.add_transition(1, 2, 1);
    return Relation::make(2, a);
}

// Random binary relation: a 4..8 state automaton over the three two-track
// letters, clipped to valid convolutions and minimized.
inline Relation random_relation(Rng& rng, double edge_p = 0.4, double accept_p = 0.35) {
    std::uint32_t n = 4 + pick(rng, 5);
    UnaryAutomaton a(2, n);
    for (State s = 0; s < n; ++s) {
        a.accepting[s] = chance(rng, accept_p);
        for (ConvLetter letter = 1; letter <= 3; ++letter)
            if (chance(rng, edge_p)) a.add_transition(s, letter, pick(rng, n));
    }
    return Relation::make(2, a);
}

// Random arity-1 relation built the same way.
inline Relation random_unary(Rng& rng) {
    std::uint32_t n = 3 + pick(rng, 4);
    UnaryAutomaton a(1, n);
    for (State s = 0; s < n; ++s) {
        a.accepting[s] = chance(rng, 0.4);
        if (chance(rng, 0.7)) a.add_transition(s, 1, pick(rng, n));
    }
    return Relation::make(1, a);
}

// Membership matrix of every pair with both components <= n.
inline std::vector<std::vector<bool>> pairs_upto(const Relation& r, std::uint64_t n) {
    return pair_table(r.automaton(), n);
}

// Membership vector of an arity-1 relation up to n.
inline std::vector<bool> values_upto(const Relation& r, std::uint64_t n) {
    std::vector<bool> out(n + 1, false);
    const UnaryAutomaton& a = r.automaton();
    std::int64_t s = a.start;
    for (std::uint64_t v = 0; v <= n; ++v) {
        out[v] = s >= 0 && a.accepting[static_cast<State>(s)];
        if (s >= 0) {
            const auto& row = a.delta[static_cast<State>(s)];
            auto it = row.find(1);
            s = it == row.end() ? -1 : static_cast<std::int64_t>(it->second[0]);
        }
    }
    return out;
}

// Reachability closure of the pair table: oracle for star/plus closures.
// reflexive=true inserts all loops first (star); otherwise proper paths of
// length >= 1 (plus).
inline std::vector<std::vector<bool>> reach_closure(std::vector<std::vector<bool>> adj,
                                                    bool reflexive) {
    std::size_t n = adj.size();
    if (reflexive)
        for (std::size_t i = 0; i < n; ++i) adj[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (adj[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (adj[k][j]) adj[i][j] = true;
    return adj;
}

// Random valid foundational relation with 1..max_seeds seeds and up to
// max_plain plain vertices.
inline FoundationalRelation random_foundational(Rng& rng, int max_seeds = 3, int max_plain = 4,
                                                double p = 0.22) {
    ConnectionProfile profile;
    profile.seed_count = 1 + static_cast<int>(pick(rng, static_cast<std::uint32_t>(max_seeds)));
    profile.qprime_size = static_cast<int>(pick(rng, static_cast<std::uint32_t>(max_plain + 1)));
    const std::array<Conn, 5> s_tags = {Conn::SMinusInf, Conn::SMinus1, Conn::S0, Conn::SPlus1,
                                        Conn::SPlusInf};
    for (int k = 0; k < profile.seed_count; ++k)
        for (int l = 0; l < profile.seed_count; ++l)
            for (Conn c : s_tags)
                if (chance(rng, p)) profile.add(c, k, l);
    for (int q = 0; q < profile.qprime_size; ++q)
        for (int k = 0; k < profile.seed_count; ++k) {
            if (chance(rng, p)) profile.add(Conn::T0, q, k);
            if (chance(rng, p)) profile.add(Conn::TPlusInf, q, k);
            if (chance(rng, p)) profile.add(Conn::U0, k, q);
            if (chance(rng, p)) profile.add(Conn::UMinusInf, k, q);
        }
    for (int a = 0; a < profile.qprime_size; ++a)
        for (int b = 0; b < profile.qprime_size; ++b)
            if (chance(rng, p)) profile.plain_edges.insert({a, b});
    return from_profile(profile);
}

// Close a profile under the transitivity calculus (including chains through
// plain-vertex edges), producing a transitive valid foundational relation.
inline FoundationalRelation close_profile_transitively(ConnectionProfile profile) {
    bool changed = true;
    auto add_conn = [&](Conn c, int src, int dst) {
        if (!profile.has(c, src, dst)) {
            profile.add(c, src, dst);
            changed = true;
        }
    };
    auto add_plain = [&](int a, int b) {
        if (profile.plain_edges.insert({a, b}).second) changed = true;
    };
    while (changed) {
        changed = false;
        std::vector<std::tuple<Conn, int, int>> conns;
        for (const auto* group : {&profile.seed_seed, &profile.plain_seed, &profile.seed_plain})
            for (const auto& [key, cs] : *group)
                for (Conn c : cs) conns.push_back({c, key.first, key.second});
        for (auto [c1, s1, d1] : conns)
            for (auto [c2, s2, d2] : conns) {
                bool u_first = c1 == Conn::U0 || c1 == Conn::UMinusInf;
                bool t_second = c2 == Conn::T0 || c2 == Conn::TPlusInf;
                if (u_first != t_second || d1 != s2) continue;
                ConnCompose cell = connection_compose(c1, c2);
                if (cell.plain_edge) add_plain(s1, d2);
                for (Conn c : cell.conns) add_conn(c, s1, d2);
            }
        auto plain_snapshot = profile.plain_edges;
        for (auto [a, b] : plain_snapshot) {
            for (const auto& [key, cs] : profile.plain_seed)
                if (key.first == b)
                    for (Conn c : cs) add_conn(c, a, key.second);
            for (const auto& [key, cs] : profile.seed_plain)
                if (key.second == a)
                    for (Conn c : cs) add_conn(c, key.first, b);
            for (auto [c, d] : plain_snapshot)
                if (c == b) add_plain(a, d);
        }
    }
    return from_profile(profile);
}

inline FoundationalRelation random_transitive_foundational(Rng& rng) {
    return close_profile_transitively(random_foundational(rng, 3, 3, 0.15).profile);
}

}  // namespace ufa::test
