#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

#include "ufa/relation.hpp"

namespace ufa {

// A finite structure on {0..size-1} with named binary relations.
struct FiniteStructure {
    int size = 0;
    std::map<std::string, std::set<std::pair<int, int>>> relations;
};

// Finite directed tree with two distinguished vertices; t0 must be a leaf of
// the underlying undirected tree.
struct Template {
    int size = 0;
    std::set<std::pair<int, int>> edges;
    int t0 = 0;
    int t1 = 0;
};

// Interleaved encoding: element i of r1 at 2i, element i of r2 at 2i+1.
Relation disjoint_union(const Relation& r1, const Relation& r2);

// Countably many copies of a finite structure: element j of copy i at
// size*i + j.
Relation omega_copies(const FiniteStructure& s, const std::string& relation);

// Amalgamate vertices related by the equivalence q: saturate to q o r o q and
// keep only minimal-length class representatives on both tracks.
Relation quotient(const Relation& r, const Relation& q);

// Disjoint union of g and t with vertex gv of g identified with vertex tv
// of t.
Relation attach(const Relation& g, std::uint64_t gv, const Relation& t, std::uint64_t tv);

// Infinitely many template copies amalgamated at the distinguished vertices:
// one shared centre when t0 == t1, an infinite spine when t0 != t1.
Relation shallow_star(const Template& tpl);
Relation periodic_path(const Template& tpl);

void validate_template(const Template& tpl);  // throws BadTemplate

// Text format: `vertex N`, `edge A B` lines, plus `t0 A` / `t1 B` for
// templates.
FiniteStructure read_structure(std::istream& in);
Template read_template(std::istream& in);
FiniteStructure load_structure(const std::string& path);
Template load_template(const std::string& path);

}  // namespace ufa
