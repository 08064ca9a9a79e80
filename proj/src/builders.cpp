#include "ufa/builders.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "ufa/closure.hpp"
#include "ufa/fo.hpp"

namespace ufa {

namespace {

// Double every letter: tuple (x1..xn) becomes (2*x1..2*xn).
UnaryAutomaton stretch2(const UnaryAutomaton& a) {
    UnaryAutomaton out(a.tracks, a.num_states());
    out.start = a.start;
    for (State s = 0; s < a.num_states(); ++s) out.accepting[s] = a.accepting[s];
    for (State s = 0; s < a.num_states(); ++s)
        for (const auto& [letter, targets] : a.delta[s])
            for (State t : targets) {
                State mid = out.add_state(false);
                out.add_transition(s, letter, mid);
                out.add_transition(mid, letter, t);
            }
    return out;
}

}  // namespace

Relation disjoint_union(const Relation& r1, const Relation& r2) {
    if (r1.arity() != r2.arity()) throw ArityMismatch("disjoint_union of different arities");
    const int n = r1.arity();

    UnaryAutomaton even = stretch2(r1.automaton());

    // Odd copy: 2x+1 convolutes as the all-active letter followed by the
    // doubled word.
    UnaryAutomaton odd = stretch2(r2.automaton());
    State fresh_start = odd.add_state(false);
    odd.add_transition(fresh_start, all_tracks_letter(n), odd.start);
    odd.start = fresh_start;

    return rel_union(Relation::make(n, even), Relation::make(n, odd));
}

Relation omega_copies(const FiniteStructure& s, const std::string& relation) {
    auto it = s.relations.find(relation);
    if (it == s.relations.end()) throw UnknownRelation("'" + relation + "' not in structure");
    if (s.size <= 0) return empty_relation(2);
    const std::uint64_t n = static_cast<std::uint64_t>(s.size);
    Relation out = empty_relation(2);
    for (auto [a, b] : it->second) {
        if (a < 0 || a >= s.size || b < 0 || b >= s.size)
            throw std::invalid_argument("edge out of range in finite structure");
        Relation piece = restrict_track(diff_exact(b - a), 0,
                                        arith_set(static_cast<std::uint64_t>(a), n, a));
        out = rel_union(out, piece);
    }
    return out;
}

Relation quotient(const Relation& r, const Relation& q) {
    if (r.arity() != 2 || q.arity() != 2) throw ArityMismatch("quotient needs arity 2");
    if (!fo_equivalence(q)) throw NotEquivalence("quotient needs an equivalence relation");
    Relation saturated = compose(compose(q, r), q);
    // Representatives are the length-minimal members of their classes.
    Relation smaller = rel_intersect(q, converse(length_lt()));
    Relation reps = rel_complement(project(smaller, 1));
    return restrict_track(restrict_track(saturated, 0, reps), 1, reps);
}

Relation attach(const Relation& g, std::uint64_t gv, const Relation& t, std::uint64_t tv) {
    if (g.arity() != 2 || t.arity() != 2) throw ArityMismatch("attach needs arity 2");
    Relation merged = disjoint_union(g, t);
    Relation glue = equivalence_closure(single_pair(2 * gv, 2 * tv + 1));
    return quotient(merged, glue);
}

void validate_template(const Template& tpl) {
    if (tpl.size < 1) throw BadTemplate("template needs at least one vertex");
    if (tpl.t0 < 0 || tpl.t0 >= tpl.size || tpl.t1 < 0 || tpl.t1 >= tpl.size)
        throw BadTemplate("distinguished vertex out of range");
    std::set<std::pair<int, int>> undirected;
    for (auto [a, b] : tpl.edges) {
        if (a < 0 || a >= tpl.size || b < 0 || b >= tpl.size)
            throw BadTemplate("edge out of range");
        if (a == b) throw BadTemplate("self-loop in template");
        auto key = std::minmax(a, b);
        if (!undirected.insert({key.first, key.second}).second)
            throw BadTemplate("parallel edges in template");
    }
    if (undirected.size() != static_cast<std::size_t>(tpl.size) - 1)
        throw BadTemplate("template is not a tree (wrong edge count)");
    // Connectivity of the underlying undirected graph.
    std::vector<int> comp(tpl.size, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [a, b] : undirected) {
            int other = a == v ? b : b == v ? a : -1;
            if (other >= 0 && comp[other] < 0) {
                comp[other] = 0;
                stack.push_back(other);
            }
        }
    }
    for (int v = 0; v < tpl.size; ++v)
        if (comp[v] < 0) throw BadTemplate("template is not connected");
    int degree = 0;
    for (auto [a, b] : undirected)
        if (a == tpl.t0 || b == tpl.t0) ++degree;
    if (degree != 1) throw BadTemplate("t0 must be a leaf");
}

namespace {

Relation amalgamated_copies(const Template& tpl) {
    FiniteStructure s{tpl.size, {{"edge", tpl.edges}}};
    Relation base = omega_copies(s, "edge");
    const std::uint64_t v = static_cast<std::uint64_t>(tpl.size);
    // Vertex t1 of copy j fuses with vertex t0 of copy j+1.
    Relation mu = restrict_track(diff_exact(static_cast<std::int64_t>(v) + tpl.t0 - tpl.t1), 0,
                                 arith_set(static_cast<std::uint64_t>(tpl.t1), v, tpl.t1));
    return quotient(base, equivalence_closure(mu));
}

}  // namespace

Relation shallow_star(const Template& tpl) {
    validate_template(tpl);
    if (tpl.t0 != tpl.t1) throw BadTemplate("a shallow star template needs t0 == t1");
    return amalgamated_copies(tpl);
}

Relation periodic_path(const Template& tpl) {
    validate_template(tpl);
    if (tpl.t0 == tpl.t1) throw BadTemplate("a periodic path template needs t0 != t1");
    return amalgamated_copies(tpl);
}

namespace {

struct StructureLines {
    int size = -1;
    std::set<std::pair<int, int>> edges;
    int t0 = -1, t1 = -1;
};

StructureLines read_lines(std::istream& in) {
    StructureLines out;
    std::string line;
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
        if (key == "vertex") {
            if (!(ls >> out.size) || out.size < 0) fail("bad vertex count");
        } else if (key == "edge") {
            int a, b;
            if (!(ls >> a >> b)) fail("bad edge line");
            out.edges.insert({a, b});
        } else if (key == "t0") {
            if (!(ls >> out.t0)) fail("bad t0 line");
        } else if (key == "t1") {
            if (!(ls >> out.t1)) fail("bad t1 line");
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (out.size < 0) throw FormatError("missing vertex directive");
    return out;
}

}  // namespace

FiniteStructure read_structure(std::istream& in) {
    StructureLines lines = read_lines(in);
    return FiniteStructure{lines.size, {{"edge", lines.edges}}};
}

Template read_template(std::istream& in) {
    StructureLines lines = read_lines(in);
    if (lines.t0 < 0 || lines.t1 < 0) throw FormatError("template needs t0 and t1 directives");
    return Template{lines.size, lines.edges, lines.t0, lines.t1};
}

FiniteStructure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_structure(in);
}

Template load_template(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_template(in);
}

}  // namespace ufa
