#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ufa/relation.hpp"

namespace ufa {

// The nine connection kinds between seeds and plain vertices.
enum class Conn { SMinusInf, SMinus1, S0, SPlus1, SPlusInf, T0, TPlusInf, U0, UMinusInf };

inline constexpr std::array<Conn, 9> kAllConns = {
    Conn::SMinusInf, Conn::SMinus1, Conn::S0,       Conn::SPlus1,    Conn::SPlusInf,
    Conn::T0,        Conn::TPlusInf, Conn::U0,      Conn::UMinusInf};

const char* conn_name(Conn c);           // S-inf, S-1, S0, S+1, S+inf, T0, T+inf, U0, U-inf
Conn conn_from_name(const std::string&); // throws FormatError

// A vertex of a foundational relation: either plain vertex q_k or seed
// element p^(k)_i with i in 1..5.
struct Vertex {
    bool seed = false;
    int k = 0;  // plain-vertex index, or seed index
    int i = 0;  // element index within the seed (1..5); 0 for plain vertices

    static Vertex plain(int q) { return {false, q, 0}; }
    static Vertex seed_elem(int k, int i) { return {true, k, i}; }

    friend bool operator<(const Vertex& a, const Vertex& b) {
        return std::tie(a.seed, a.k, a.i) < std::tie(b.seed, b.k, b.i);
    }
    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.seed == b.seed && a.k == b.k && a.i == b.i;
    }
};

using VertexPair = std::pair<Vertex, Vertex>;

// Edge bundles grouped by kind, derived deterministically from an edge set.
struct ConnectionProfile {
    int qprime_size = 0;
    int seed_count = 0;
    std::map<std::pair<int, int>, std::set<Conn>> seed_seed;  // (k,l) -> S-tags
    std::map<std::pair<int, int>, std::set<Conn>> plain_seed; // (q,k) -> T-tags
    std::map<std::pair<int, int>, std::set<Conn>> seed_plain; // (k,q) -> U-tags
    std::set<std::pair<int, int>> plain_edges;

    bool has(Conn c, int src, int dst) const;
    void add(Conn c, int src, int dst);

    friend bool operator==(const ConnectionProfile& a, const ConnectionProfile& b) {
        return a.qprime_size == b.qprime_size && a.seed_count == b.seed_count &&
               a.seed_seed == b.seed_seed && a.plain_seed == b.plain_seed &&
               a.seed_plain == b.seed_plain && a.plain_edges == b.plain_edges;
    }
};

// The edges a connection stands for, as vertex pairs of the finite relation.
std::vector<VertexPair> connection_edges(Conn c, int src, int dst);

// Finite relation with seed structure satisfying the all-or-none conditions.
struct FoundationalRelation {
    int qprime_size = 0;
    int seed_count = 0;
    std::set<VertexPair> edges;
    ConnectionProfile profile;
};

// Checks the all-or-none conditions and derives the profile. Throws
// ConnectionViolation naming the first broken bundle.
FoundationalRelation validate(int qprime_size, int seed_count, std::set<VertexPair> edges);

// Expand a profile to its edge set and validate.
FoundationalRelation from_profile(const ConnectionProfile& profile);

// The infinite relation obtained by extending every seed to an infinite row,
// under the canonical numbering: plain vertex q_j at j, seed element p^(k)_i
// at qprime_size + seed_count*(i-1) + k.
Relation propagate(const FoundationalRelation& f);

// Read a foundational relation off a presentation: D = pumping constant,
// plain vertices = column 0, seed k = row k restricted to columns 1..5.
// Finite relations come back with no seeds. Throws ValidationFailed if the
// collected edges break the all-or-none conditions.
std::pair<FoundationalRelation, PumpingConstant> extract(const Relation& r);

// Conjugate r by the bijection between the extraction grid (column x, row y
// at length x*D + y) and the canonical numbering with qprime_size plain
// vertices. Identity when qprime_size == D; requires qprime_size >= D.
Relation reencode(const Relation& r, PumpingConstant d, std::uint64_t qprime_size);

// Result of composing two connections under transitivity: enforced
// connections, or a single plain-vertex edge.
struct ConnCompose {
    bool plain_edge = false;
    std::set<Conn> conns;

    friend bool operator==(const ConnCompose& a, const ConnCompose& b) {
        return a.plain_edge == b.plain_edge && a.conns == b.conns;
    }
};

// The transitivity calculus cell for (first, second); throws NotComposable
// when the middle sorts do not match.
ConnCompose connection_compose(Conn first, Conn second);

enum class FoundationalProperty { Reflexive, Symmetric, Antisymmetric, Transitive };

// Property of the finite relation; equivalent to the same property of its
// propagation.
bool check_property(const FoundationalRelation& f, FoundationalProperty p);

enum class SeedClass { Antichain, AscendingChain, DescendingChain, StronglyConnected };

// Requires a (finite) quasi-order; classifies seed k by its self-connections.
SeedClass classify_seed(const FoundationalRelation& f, int k);

// Textual .ufr format.
FoundationalRelation read_ufr(std::istream& in);
void write_ufr(std::ostream& out, const FoundationalRelation& f);
FoundationalRelation load_ufr(const std::string& path);
void save_ufr(const std::string& path, const FoundationalRelation& f);

}  // namespace ufa
