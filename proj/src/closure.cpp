#include "ufa/closure.hpp"

#include <deque>
#include <map>

namespace ufa {

Relation bounded_power(const Relation& r, std::uint64_t k) {
    if (r.arity() != 2) throw ArityMismatch("bounded_power needs arity 2");
    // (diagonal U r)^k by binary decomposition; every factor contains the
    // diagonal, so the product collects all powers up to k.
    Relation base = rel_union(diagonal(), r);
    Relation acc = diagonal();
    while (k > 0) {
        if (k & 1) acc = compose(acc, base);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

namespace {

// Complete a deterministic 2-track automaton over letters {1_, _1, 11} with an
// explicit sink so the blindly-advancing copy can keep running.
UnaryAutomaton complete2(const UnaryAutomaton& in) {
    UnaryAutomaton a = in.is_deterministic() ? in : determinize(in);
    State sink = a.add_state(false);
    for (State s = 0; s < a.num_states(); ++s)
        for (ConvLetter letter = 1; letter <= 3; ++letter)
            if (a.delta[s].find(letter) == a.delta[s].end()) a.add_transition(s, letter, sink);
    return a;
}

// Shared two-copy chain construction. pad is the letter read while only the
// longer word of the pair continues (_1 for increasing chains, 1_ for
// decreasing ones).
UnaryAutomaton chain_automaton(const UnaryAutomaton& s_dfa, ConvLetter pad) {
    UnaryAutomaton a = complete2(s_dfa);
    auto step = [&](State s, ConvLetter letter) { return a.delta[s].at(letter)[0]; };

    UnaryAutomaton out(2, 0);
    std::map<std::pair<State, State>, State> ids;
    std::deque<std::pair<State, State>> work;
    auto intern = [&](std::pair<State, State> p) {
        auto [it, fresh] = ids.try_emplace(p, out.num_states());
        if (fresh) {
            out.add_state(a.accepting[p.first]);
            work.push_back(p);
        }
        return it->second;
    };

    intern({a.start, a.start});
    while (!work.empty()) {
        auto [c1, c2] = work.front();
        work.pop_front();
        State from = ids[{c1, c2}];
        out.add_transition(from, 3, intern({step(c1, 3), step(c2, 3)}));
        out.add_transition(from, pad, intern({step(c1, pad), step(c2, 3)}));
        if (a.accepting[c1]) out.add_epsilon(from, intern({c2, c2}));
    }
    return out;
}

}  // namespace

Relation build_v(const Relation& s) {
    if (s.arity() != 2) throw ArityMismatch("build_v needs arity 2");
    UnaryAutomaton b = chain_automaton(s.automaton(), 2);
    return rel_intersect(Relation::make(2, b), length_lt());
}

Relation build_vprime(const Relation& s) {
    if (s.arity() != 2) throw ArityMismatch("build_vprime needs arity 2");
    UnaryAutomaton b = chain_automaton(s.automaton(), 1);
    return rel_intersect(Relation::make(2, b), converse(length_lt()));
}

Relation assemble_w(const Relation& s) {
    Relation v = build_v(s);
    Relation vp = build_vprime(s);
    Relation sv = compose(s, v);
    Relation vps = compose(vp, s);
    return rel_union(rel_union(s, sv), rel_union(vps, compose(vps, v)));
}

std::pair<Relation, ClosureCertificate> star_closure(const Relation& r, std::uint64_t max_k) {
    if (r.arity() != 2) throw ArityMismatch("star_closure needs arity 2");
    Relation diag = diagonal();
    Relation s = rel_union(diag, r);  // r^{<=1}
    std::uint64_t k = 1;
    std::uint32_t iterations = 0;
    while (k <= max_k) {
        ++iterations;
        Relation w = assemble_w(s);
        ClosureCertificate cert;
        cert.k = k;
        cert.iterations = iterations;
        cert.contains_diagonal = rel_subset(diag, w);
        cert.contains_r = rel_subset(r, w);
        cert.transitive = rel_subset(compose(w, w), w);
        if (cert.contains_diagonal && cert.contains_r && cert.transitive) return {w, cert};
        s = compose(s, s);  // r^{<=2k}
        k *= 2;
    }
    throw ClosureBudgetExceeded("no certificate up to k = " + std::to_string(max_k));
}

Relation plus_closure(const Relation& r, std::uint64_t max_k) {
    return compose(r, star_closure(r, max_k).first);
}

Relation equivalence_closure(const Relation& r, std::uint64_t max_k) {
    return star_closure(rel_union(r, converse(r)), max_k).first;
}

}  // namespace ufa
