#include "ufa/automaton.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ufa {

namespace {

void insert_sorted(std::vector<State>& v, State s) {
    auto it = std::lower_bound(v.begin(), v.end(), s);
    if (it == v.end() || *it != s) v.insert(it, s);
}

std::vector<State> eps_closure(const UnaryAutomaton& a, std::vector<State> states) {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<State> work(states.begin(), states.end());
    for (State s : states) seen[s] = true;
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (State t : a.eps[s])
            if (!seen[t]) {
                seen[t] = true;
                work.push_back(t);
            }
    }
    std::vector<State> out;
    for (State s = 0; s < a.num_states(); ++s)
        if (seen[s]) out.push_back(s);
    return out;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

void UnaryAutomaton::add_transition(State from, ConvLetter letter, State to) {
    if (letter == 0 || (letter & ~all_tracks_letter(tracks)) != 0)
        throw std::invalid_argument("transition letter does not fit the track count");
    insert_sorted(delta[from][letter], to);
}

void UnaryAutomaton::add_epsilon(State from, State to) { insert_sorted(eps[from], to); }

bool UnaryAutomaton::is_deterministic() const {
    for (const auto& moves : eps)
        if (!moves.empty()) return false;
    for (const auto& row : delta)
        for (const auto& [letter, targets] : row)
            if (targets.size() > 1) return false;
    return true;
}

UnaryAutomaton validity(int tracks) {
    if (tracks < 0 || tracks > kMaxTracks) throw std::invalid_argument("validity: bad track count");
    UnaryAutomaton a(tracks, 0);
    if (tracks == 0) {
        a.add_state(true);  // only the empty word
        a.start = 0;
        return a;
    }
    // One state per possible previous letter; monotone padding means the next
    // letter must be a nonempty subset of it. The start behaves like the
    // all-active letter.
    const ConvLetter full = all_tracks_letter(tracks);
    std::map<ConvLetter, State> id;
    for (ConvLetter m = 1; m <= full; ++m) id[m] = a.add_state(true);
    a.start = id[full];
    for (ConvLetter m = 1; m <= full; ++m)
        for (ConvLetter next = 1; next <= full; ++next)
            if ((next & ~m) == 0) a.add_transition(id[m], next, id[next]);
    return a;
}

bool accepts_letters(const UnaryAutomaton& a, const std::vector<ConvLetter>& word) {
    std::vector<State> cur = eps_closure(a, {a.start});
    for (ConvLetter letter : word) {
        std::vector<State> next;
        for (State s : cur) {
            auto it = a.delta[s].find(letter);
            if (it == a.delta[s].end()) continue;
            for (State t : it->second) insert_sorted(next, t);
        }
        if (next.empty()) return false;
        cur = eps_closure(a, std::move(next));
    }
    for (State s : cur)
        if (a.accepting[s]) return true;
    return false;
}

bool accepts(const UnaryAutomaton& a, const std::vector<UnaryWord>& tuple) {
    if (static_cast<int>(tuple.size()) != a.tracks)
        throw ArityMismatch("tuple arity " + std::to_string(tuple.size()) + " vs automaton tracks " +
                            std::to_string(a.tracks));
    if (a.tracks == 0) return a.accepting[a.start] || accepts_letters(a, {});
    return accepts_letters(a, conv(tuple));
}

UnaryAutomaton determinize(const UnaryAutomaton& a) {
    UnaryAutomaton out(a.tracks, 0);
    std::map<std::vector<State>, State> ids;
    std::deque<std::vector<State>> work;

    auto intern = [&](std::vector<State> set) {
        auto [it, fresh] = ids.try_emplace(std::move(set), out.num_states());
        if (fresh) {
            bool acc = false;
            for (State s : it->first)
                if (a.accepting[s]) acc = true;
            out.add_state(acc);
            work.push_back(it->first);
        }
        return it->second;
    };

    out.start = intern(eps_closure(a, {a.start}));
    while (!work.empty()) {
        std::vector<State> set = work.front();
        work.pop_front();
        State from = ids[set];
        std::map<ConvLetter, std::vector<State>> moves;
        for (State s : set)
            for (const auto& [letter, targets] : a.delta[s])
                for (State t : targets) insert_sorted(moves[letter], t);
        for (auto& [letter, targets] : moves)
            out.add_transition(from, letter, intern(eps_closure(a, std::move(targets))));
    }
    return out;
}

UnaryAutomaton trim(const UnaryAutomaton& a) {
    State n = a.num_states();
    std::vector<bool> reach(n, false);
    std::deque<State> work{a.start};
    reach[a.start] = true;
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        auto visit = [&](State t) {
            if (!reach[t]) {
                reach[t] = true;
                work.push_back(t);
            }
        };
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets) visit(t);
        for (State t : a.eps[s]) visit(t);
    }

    std::vector<std::vector<State>> rev(n);
    for (State s = 0; s < n; ++s) {
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets) rev[t].push_back(s);
        for (State t : a.eps[s]) rev[t].push_back(s);
    }
    std::vector<bool> corea(n, false);
    for (State s = 0; s < n; ++s)
        if (a.accepting[s] && reach[s]) {
            corea[s] = true;
            work.push_back(s);
        }
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (State t : rev[s])
            if (reach[t] && !corea[t]) {
                corea[t] = true;
                work.push_back(t);
            }
    }

    std::vector<State> remap(n, 0);
    UnaryAutomaton out(a.tracks, 0);
    bool start_kept = reach[a.start] && corea[a.start];
    if (!start_kept) {
        out.add_state(false);  // empty language, canonical single state
        out.start = 0;
        return out;
    }
    for (State s = 0; s < n; ++s)
        if (reach[s] && corea[s]) remap[s] = out.add_state(a.accepting[s]);
    out.start = remap[a.start];
    for (State s = 0; s < n; ++s) {
        if (!(reach[s] && corea[s])) continue;
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets)
                if (reach[t] && corea[t]) out.add_transition(remap[s], letter, remap[t]);
        for (State t : a.eps[s])
            if (reach[t] && corea[t]) out.add_epsilon(remap[s], remap[t]);
    }
    return out;
}

namespace {

// Breadth-first renumbering with letters in ascending bit-pattern order.
UnaryAutomaton canonical_order(const UnaryAutomaton& a) {
    State n = a.num_states();
    std::vector<State> remap(n, n);
    std::vector<State> order;
    std::deque<State> work{a.start};
    remap[a.start] = 0;
    order.push_back(a.start);
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets)
                if (remap[t] == n) {
                    remap[t] = static_cast<State>(order.size());
                    order.push_back(t);
                    work.push_back(t);
                }
    }
    UnaryAutomaton out(a.tracks, 0);
    for (State s : order) out.add_state(a.accepting[s]);
    out.start = 0;
    for (State s : order)
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets) out.add_transition(remap[s], letter, remap[t]);
    return out;
}

}  // namespace

UnaryAutomaton minimize(const UnaryAutomaton& a) {
    UnaryAutomaton d = trim(determinize(a));
    State n = d.num_states();

    // Moore refinement over the partial transition function; a missing letter
    // counts as a distinct "dead" class. Each round refines, so the partition
    // is stable exactly when the class count stops growing.
    std::vector<std::uint32_t> cls(n);
    std::uint32_t n_classes_prev = 0;
    for (State s = 0; s < n; ++s) cls[s] = d.accepting[s] ? 1 : 0;
    for (;;) {
        std::map<std::pair<std::uint32_t, std::vector<std::pair<ConvLetter, std::uint32_t>>>,
                 std::uint32_t>
            sig_ids;
        std::vector<std::uint32_t> next(n);
        for (State s = 0; s < n; ++s) {
            std::vector<std::pair<ConvLetter, std::uint32_t>> sig;
            sig.reserve(d.delta[s].size());
            for (const auto& [letter, targets] : d.delta[s]) sig.emplace_back(letter, cls[targets[0]]);
            auto [it, fresh] =
                sig_ids.try_emplace({cls[s], std::move(sig)}, static_cast<std::uint32_t>(sig_ids.size()));
            next[s] = it->second;
        }
        std::uint32_t n_classes = static_cast<std::uint32_t>(sig_ids.size());
        cls = std::move(next);
        if (n_classes == n_classes_prev) break;
        n_classes_prev = n_classes;
    }

    std::uint32_t n_classes = 0;
    for (std::uint32_t c : cls) n_classes = std::max(n_classes, c + 1);
    UnaryAutomaton merged(d.tracks, 0);
    for (std::uint32_t c = 0; c < n_classes; ++c) merged.add_state(false);
    merged.start = cls[d.start];
    for (State s = 0; s < n; ++s) {
        if (d.accepting[s]) merged.accepting[cls[s]] = true;
        for (const auto& [letter, targets] : d.delta[s]) {
            auto& row = merged.delta[cls[s]];
            row[letter] = {cls[targets[0]]};
        }
    }
    return canonical_order(merged);
}

UnaryAutomaton product(const UnaryAutomaton& a_in, const UnaryAutomaton& b_in, ProductMode mode) {
    if (a_in.tracks != b_in.tracks)
        throw ArityMismatch("product of automata with " + std::to_string(a_in.tracks) + " and " +
                            std::to_string(b_in.tracks) + " tracks");
    UnaryAutomaton a = a_in.is_deterministic() ? a_in : determinize(a_in);
    UnaryAutomaton b = b_in.is_deterministic() ? b_in : determinize(b_in);

    constexpr std::int64_t kDead = -1;
    using Pair = std::pair<std::int64_t, std::int64_t>;
    UnaryAutomaton out(a.tracks, 0);
    std::map<Pair, State> ids;
    std::deque<Pair> work;

    auto accept_of = [&](Pair p) {
        bool in_a = p.first != kDead && a.accepting[static_cast<State>(p.first)];
        bool in_b = p.second != kDead && b.accepting[static_cast<State>(p.second)];
        switch (mode) {
            case ProductMode::And: return in_a && in_b;
            case ProductMode::Or: return in_a || in_b;
            case ProductMode::Diff: return in_a && !in_b;
        }
        return false;
    };
    auto intern = [&](Pair p) {
        auto [it, fresh] = ids.try_emplace(p, out.num_states());
        if (fresh) {
            out.add_state(accept_of(p));
            work.push_back(p);
        }
        return it->second;
    };

    intern({a.start, b.start});
    while (!work.empty()) {
        Pair p = work.front();
        work.pop_front();
        State from = ids[p];
        std::set<ConvLetter> letters;
        if (p.first != kDead)
            for (const auto& [letter, targets] : a.delta[static_cast<State>(p.first)])
                letters.insert(letter);
        if (p.second != kDead)
            for (const auto& [letter, targets] : b.delta[static_cast<State>(p.second)])
                letters.insert(letter);
        for (ConvLetter letter : letters) {
            std::int64_t na = kDead;
            std::int64_t nb = kDead;
            if (p.first != kDead) {
                const auto& row = a.delta[static_cast<State>(p.first)];
                auto it = row.find(letter);
                if (it != row.end()) na = it->second[0];
            }
            if (p.second != kDead) {
                const auto& row = b.delta[static_cast<State>(p.second)];
                auto it = row.find(letter);
                if (it != row.end()) nb = it->second[0];
            }
            // A dead pair can never accept again under any mode.
            if (na == kDead && nb == kDead) continue;
            if (mode == ProductMode::And && (na == kDead || nb == kDead)) continue;
            if (mode == ProductMode::Diff && na == kDead) continue;
            out.add_transition(from, letter, intern({na, nb}));
        }
    }
    return out;
}

UnaryAutomaton complement_within_validity(const UnaryAutomaton& a) {
    return product(validity(a.tracks), a, ProductMode::Diff);
}

bool is_empty(const UnaryAutomaton& a) {
    UnaryAutomaton t = trim(a);
    for (State s = 0; s < t.num_states(); ++s)
        if (t.accepting[s]) return false;
    return true;
}

bool is_finite(const UnaryAutomaton& a) {
    UnaryAutomaton t = trim(a.is_deterministic() ? a : determinize(a));
    if (is_empty(t)) return true;
    // Any cycle in the trimmed automaton pumps to infinitely many words.
    State n = t.num_states();
    std::vector<int> mark(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<std::pair<State, std::size_t>> stack;
    for (State root = 0; root < n; ++root) {
        if (mark[root] != 0) continue;
        stack.push_back({root, 0});
        mark[root] = 1;
        while (!stack.empty()) {
            auto& [s, idx] = stack.back();
            std::vector<State> nexts;
            for (const auto& [letter, targets] : t.delta[s])
                for (State x : targets) nexts.push_back(x);
            if (idx >= nexts.size()) {
                mark[s] = 2;
                stack.pop_back();
                continue;
            }
            State child = nexts[idx++];
            if (mark[child] == 1) return false;
            if (mark[child] == 0) {
                mark[child] = 1;
                stack.push_back({child, 0});
            }
        }
    }
    return true;
}

EnumerateResult enumerate_tuples(const UnaryAutomaton& a, std::size_t limit) {
    EnumerateResult res;
    if (limit == 0) return res;
    if (a.tracks == 0) {
        if (accepts_letters(a, {})) res.tuples.push_back({});
        return res;
    }
    bool finite = is_finite(a);
    UnaryAutomaton m = minimize(a);
    // In a trimmed acyclic DFA the longest accepted word is shorter than the
    // state count.
    std::uint64_t hard_cap = finite ? m.num_states() : ~std::uint64_t(0);

    std::size_t arity = static_cast<std::size_t>(a.tracks);
    for (std::uint64_t max_comp = 0; max_comp <= hard_cap; ++max_comp) {
        std::vector<std::uint64_t> tuple(arity, 0);
        bool more = true;
        while (more) {
            bool has_max = false;
            for (std::uint64_t v : tuple)
                if (v == max_comp) has_max = true;
            if (has_max) {
                std::vector<UnaryWord> words(tuple.begin(), tuple.end());
                if (accepts(m, words)) {
                    if (res.tuples.size() == limit) {
                        res.truncated = true;  // found one past the limit
                        return res;
                    }
                    res.tuples.push_back(tuple);
                    if (res.tuples.size() == limit && !finite) {
                        res.truncated = true;
                        return res;
                    }
                }
            }
            // Lexicographic odometer over [0, max_comp]^arity.
            more = false;
            for (std::size_t i = arity; i-- > 0;) {
                if (tuple[i] < max_comp) {
                    ++tuple[i];
                    for (std::size_t j = i + 1; j < arity; ++j) tuple[j] = 0;
                    more = true;
                    break;
                }
                tuple[i] = 0;
            }
        }
    }
    return res;
}

std::vector<std::vector<bool>> pair_table(const UnaryAutomaton& a_in, std::uint64_t max_component) {
    if (a_in.tracks != 2) throw ArityMismatch("pair_table needs a binary relation automaton");
    UnaryAutomaton a = a_in.is_deterministic() ? a_in : determinize(a_in);
    const std::uint64_t n = max_component;
    constexpr std::int64_t kDead = -1;
    auto step = [&](std::int64_t s, ConvLetter letter) -> std::int64_t {
        if (s == kDead) return kDead;
        const auto& row = a.delta[static_cast<State>(s)];
        auto it = row.find(letter);
        return it == row.end() ? kDead : static_cast<std::int64_t>(it->second[0]);
    };
    auto acc = [&](std::int64_t s) { return s != kDead && a.accepting[static_cast<State>(s)]; };

    std::vector<std::int64_t> diag(n + 1);
    diag[0] = static_cast<std::int64_t>(a.start);
    for (std::uint64_t p = 1; p <= n; ++p) diag[p] = step(diag[p - 1], 3);

    std::vector<std::vector<bool>> table(n + 1, std::vector<bool>(n + 1, false));
    for (std::uint64_t p = 0; p <= n; ++p) {
        table[p][p] = acc(diag[p]);
        std::int64_t s = diag[p];
        for (std::uint64_t q = p + 1; q <= n; ++q) {  // second component longer: letter _1
            s = step(s, 2);
            table[p][q] = acc(s);
        }
        s = diag[p];
        for (std::uint64_t q = p + 1; q <= n; ++q) {  // first component longer: letter 1_
            s = step(s, 1);
            table[q][p] = acc(s);
        }
    }
    return table;
}

LoopProfile loop_profile(const UnaryAutomaton& a_in) {
    if (!a_in.is_deterministic()) throw NotDeterministic("loop_profile needs a deterministic automaton");
    UnaryAutomaton a = trim(a_in);
    State n = a.num_states();
    std::vector<std::vector<State>> succ(n);
    for (State s = 0; s < n; ++s)
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets) succ[s].push_back(t);

    LoopProfile profile;
    profile.state_count = n;

    // Enumerate simple cycles: for each root, walk simple paths through
    // states >= root only, recording returns to the root.
    std::vector<bool> on_path(n, false);
    std::vector<std::pair<State, std::size_t>> stack;
    std::uint64_t steps = 0;
    for (State root = 0; root < n; ++root) {
        stack.clear();
        stack.push_back({root, 0});
        on_path.assign(n, false);
        on_path[root] = true;
        while (!stack.empty()) {
            if (++steps > 50'000'000ULL)
                throw std::runtime_error("loop_profile: cycle enumeration budget exceeded");
            auto& [s, idx] = stack.back();
            if (idx >= succ[s].size()) {
                on_path[s] = false;
                stack.pop_back();
                continue;
            }
            State t = succ[s][idx++];
            if (t < root) continue;
            if (t == root) {
                profile.loop_lengths.insert(stack.size());
                continue;
            }
            if (!on_path[t]) {
                on_path[t] = true;
                stack.push_back({t, 0});
            }
        }
    }
    return profile;
}

PumpingConstant pumping_constant(const UnaryAutomaton& a) {
    LoopProfile profile = loop_profile(a);
    if (profile.loop_lengths.empty()) return PumpingConstant{profile.state_count + 1};
    std::uint64_t l = 1;
    for (std::uint64_t len : profile.loop_lengths) l = l / gcd64(l, len) * len;
    std::uint64_t d = (profile.state_count / l + 1) * l;
    return PumpingConstant{d};
}

std::optional<ArrowRuleViolation> first_arrow_rule_violation(const UnaryAutomaton& a,
                                                             PumpingConstant d,
                                                             std::uint64_t max_component) {
    if (a.tracks != 2) throw ArityMismatch("arrow rules apply to binary relations");
    const std::uint64_t dd = d.value;
    auto table = pair_table(a, max_component + 2 * dd);
    auto in = [&](std::uint64_t p, std::uint64_t q) { return table[p][q]; };

    for (std::uint64_t p = 0; p <= max_component; ++p) {
        for (std::uint64_t q = 0; q <= max_component; ++q) {
            if (!in(p, q)) continue;
            if (std::min(p, q) >= dd && !in(p + dd, q + dd))
                return ArrowRuleViolation{p, q, p + dd, q + dd, "shift both right"};
            if (q >= p + 2 * dd && !in(p, q + dd))
                return ArrowRuleViolation{p, q, p, q + dd, "shift target right"};
            if (q >= p + 3 * dd && !in(p, q - dd))
                return ArrowRuleViolation{p, q, p, q - dd, "shift target left"};
            if (p >= q + 2 * dd && !in(p + dd, q))
                return ArrowRuleViolation{p, q, p + dd, q, "shift source right"};
            if (p >= q + 3 * dd && !in(p - dd, q))
                return ArrowRuleViolation{p, q, p - dd, q, "shift source left"};
        }
    }
    return std::nullopt;
}

UnaryAutomaton read_ufa(std::istream& in) {
    std::string line;
    UnaryAutomaton a(1, 0);
    bool saw_header = false, saw_tracks = false, saw_states = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto fail = [&](const std::string& msg) {
            throw FormatError(msg + " (line " + std::to_string(lineno) + ")");
        };
        if (!saw_header) {
            int version = 0;
            if (key != "ufa" || !(ls >> version) || version != 1) fail("expected 'ufa 1' header");
            saw_header = true;
        } else if (key == "tracks") {
            int t = -1;
            if (!(ls >> t) || t < 0 || t > kMaxTracks) fail("bad track count");
            a.tracks = t;
            saw_tracks = true;
        } else if (key == "states") {
            long m = -1;
            if (!(ls >> m) || m < 1) fail("bad state count");
            while (a.num_states() < static_cast<State>(m)) a.add_state(false);
            saw_states = true;
        } else if (key == "start") {
            long s = -1;
            if (!(ls >> s) || s < 0 || s >= static_cast<long>(a.num_states())) fail("bad start state");
            a.start = static_cast<State>(s);
        } else if (key == "accept") {
            long s;
            while (ls >> s) {
                if (s < 0 || s >= static_cast<long>(a.num_states())) fail("bad accept state");
                a.accepting[static_cast<State>(s)] = true;
            }
        } else if (key == "trans") {
            long from, to;
            std::string pattern;
            if (!(ls >> from >> pattern >> to)) fail("bad transition");
            if (from < 0 || from >= static_cast<long>(a.num_states()) || to < 0 ||
                to >= static_cast<long>(a.num_states()))
                fail("transition state out of range");
            if (static_cast<int>(pattern.size()) != a.tracks) fail("pattern width != tracks");
            ConvLetter letter = letter_from_text(pattern);
            if (letter == 0) fail("all-padding pattern");
            a.add_transition(static_cast<State>(from), letter, static_cast<State>(to));
        } else if (key == "eps") {
            long from, to;
            if (!(ls >> from >> to) || from < 0 || from >= static_cast<long>(a.num_states()) ||
                to < 0 || to >= static_cast<long>(a.num_states()))
                fail("bad epsilon transition");
            a.add_epsilon(static_cast<State>(from), static_cast<State>(to));
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!saw_header) throw FormatError("missing 'ufa 1' header");
    if (!saw_tracks || !saw_states) throw FormatError("missing tracks/states directives");
    return a;
}

void write_ufa(std::ostream& out, const UnaryAutomaton& a) {
    out << "ufa 1\n";
    out << "tracks " << a.tracks << "\n";
    out << "states " << a.num_states() << "\n";
    out << "start " << a.start << "\n";
    out << "accept";
    for (State s = 0; s < a.num_states(); ++s)
        if (a.accepting[s]) out << ' ' << s;
    out << "\n";
    for (State s = 0; s < a.num_states(); ++s)
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets)
                out << "trans " << s << ' ' << letter_text(letter, a.tracks) << ' ' << t << "\n";
    for (State s = 0; s < a.num_states(); ++s)
        for (State t : a.eps[s]) out << "eps " << s << ' ' << t << "\n";
}

UnaryAutomaton load_ufa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_ufa(in);
}

void save_ufa(const std::string& path, const UnaryAutomaton& a) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_ufa(out, a);
}

}  // namespace ufa
