#include "ufa/foundational.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace ufa {

const char* conn_name(Conn c) {
    switch (c) {
        case Conn::SMinusInf: return "S-inf";
        case Conn::SMinus1: return "S-1";
        case Conn::S0: return "S0";
        case Conn::SPlus1: return "S+1";
        case Conn::SPlusInf: return "S+inf";
        case Conn::T0: return "T0";
        case Conn::TPlusInf: return "T+inf";
        case Conn::U0: return "U0";
        case Conn::UMinusInf: return "U-inf";
    }
    return "?";
}

Conn conn_from_name(const std::string& s) {
    for (Conn c : kAllConns)
        if (s == conn_name(c)) return c;
    throw FormatError("unknown connection tag '" + s + "'");
}

bool ConnectionProfile::has(Conn c, int src, int dst) const {
    auto look = [&](const std::map<std::pair<int, int>, std::set<Conn>>& m) {
        auto it = m.find({src, dst});
        return it != m.end() && it->second.count(c) > 0;
    };
    switch (c) {
        case Conn::T0:
        case Conn::TPlusInf: return look(plain_seed);
        case Conn::U0:
        case Conn::UMinusInf: return look(seed_plain);
        default: return look(seed_seed);
    }
}

void ConnectionProfile::add(Conn c, int src, int dst) {
    switch (c) {
        case Conn::T0:
        case Conn::TPlusInf: plain_seed[{src, dst}].insert(c); break;
        case Conn::U0:
        case Conn::UMinusInf: seed_plain[{src, dst}].insert(c); break;
        default: seed_seed[{src, dst}].insert(c); break;
    }
}

std::vector<VertexPair> connection_edges(Conn c, int src, int dst) {
    auto p = [](int k, int i) { return Vertex::seed_elem(k, i); };
    auto q = [](int j) { return Vertex::plain(j); };
    std::vector<VertexPair> out;
    switch (c) {
        case Conn::S0:
            for (int i = 1; i <= 5; ++i) out.push_back({p(src, i), p(dst, i)});
            break;
        case Conn::SPlus1:
            for (int i = 1; i <= 4; ++i) out.push_back({p(src, i), p(dst, i + 1)});
            break;
        case Conn::SMinus1:
            for (int i = 1; i <= 4; ++i) out.push_back({p(src, i + 1), p(dst, i)});
            break;
        case Conn::SPlusInf:
            for (int i = 1; i <= 5; ++i)
                for (int j = i + 2; j <= 5; ++j) out.push_back({p(src, i), p(dst, j)});
            break;
        case Conn::SMinusInf:
            for (int i = 1; i <= 5; ++i)
                for (int j = i + 2; j <= 5; ++j) out.push_back({p(src, j), p(dst, i)});
            break;
        case Conn::T0:
            out.push_back({q(src), p(dst, 1)});
            break;
        case Conn::TPlusInf:
            for (int i = 2; i <= 5; ++i) out.push_back({q(src), p(dst, i)});
            break;
        case Conn::U0:
            out.push_back({p(src, 1), q(dst)});
            break;
        case Conn::UMinusInf:
            for (int i = 2; i <= 5; ++i) out.push_back({p(src, i), q(dst)});
            break;
    }
    return out;
}

namespace {

std::string vertex_name(const Vertex& v) {
    if (!v.seed) return "q" + std::to_string(v.k);
    return "P" + std::to_string(v.k) + "." + std::to_string(v.i);
}

// The unique connection an edge belongs to, with its (src, dst) bundle key.
struct EdgeKind {
    Conn conn;
    int src, dst;
};

std::optional<EdgeKind> edge_kind(const VertexPair& e) {
    const Vertex& u = e.first;
    const Vertex& v = e.second;
    if (!u.seed && !v.seed) return std::nullopt;  // plain edge, no bundle
    if (!u.seed) return EdgeKind{v.i == 1 ? Conn::T0 : Conn::TPlusInf, u.k, v.k};
    if (!v.seed) return EdgeKind{u.i == 1 ? Conn::U0 : Conn::UMinusInf, u.k, v.k};
    int d = v.i - u.i;
    Conn c = d == 0    ? Conn::S0
             : d == 1  ? Conn::SPlus1
             : d == -1 ? Conn::SMinus1
             : d >= 2  ? Conn::SPlusInf
                       : Conn::SMinusInf;
    return EdgeKind{c, u.k, v.k};
}

void check_vertex(const Vertex& v, int qprime_size, int seed_count) {
    if (!v.seed) {
        if (v.k < 0 || v.k >= qprime_size)
            throw std::invalid_argument("plain vertex out of range: " + vertex_name(v));
    } else {
        if (v.k < 0 || v.k >= seed_count || v.i < 1 || v.i > 5)
            throw std::invalid_argument("seed element out of range: " + vertex_name(v));
    }
}

}  // namespace

FoundationalRelation validate(int qprime_size, int seed_count, std::set<VertexPair> edges) {
    if (qprime_size < 0 || seed_count < 0) throw std::invalid_argument("negative sizes");
    FoundationalRelation f;
    f.qprime_size = qprime_size;
    f.seed_count = seed_count;
    f.profile.qprime_size = qprime_size;
    f.profile.seed_count = seed_count;

    std::set<std::tuple<int, int, int>> seen;  // (conn, src, dst) bundles already checked
    for (const VertexPair& e : edges) {
        check_vertex(e.first, qprime_size, seed_count);
        check_vertex(e.second, qprime_size, seed_count);
        auto kind = edge_kind(e);
        if (!kind) {
            f.profile.plain_edges.insert({e.first.k, e.second.k});
            continue;
        }
        auto key = std::make_tuple(static_cast<int>(kind->conn), kind->src, kind->dst);
        if (!seen.insert(key).second) continue;
        for (const VertexPair& needed : connection_edges(kind->conn, kind->src, kind->dst)) {
            if (edges.count(needed) == 0)
                throw ConnectionViolation(std::string(conn_name(kind->conn)) + " from " +
                                          (kind->conn == Conn::T0 || kind->conn == Conn::TPlusInf
                                               ? "q" + std::to_string(kind->src)
                                               : "P" + std::to_string(kind->src)) +
                                          " to " +
                                          (kind->conn == Conn::U0 || kind->conn == Conn::UMinusInf
                                               ? "q" + std::to_string(kind->dst)
                                               : "P" + std::to_string(kind->dst)) +
                                          " is partial: edge " + vertex_name(e.first) + " -> " +
                                          vertex_name(e.second) + " present but " +
                                          vertex_name(needed.first) + " -> " +
                                          vertex_name(needed.second) + " missing");
        }
        f.profile.add(kind->conn, kind->src, kind->dst);
    }
    f.edges = std::move(edges);
    return f;
}

FoundationalRelation from_profile(const ConnectionProfile& profile) {
    std::set<VertexPair> edges;
    for (auto [a, b] : profile.plain_edges) edges.insert({Vertex::plain(a), Vertex::plain(b)});
    for (const auto& [key, conns] : profile.seed_seed)
        for (Conn c : conns)
            for (const VertexPair& e : connection_edges(c, key.first, key.second)) edges.insert(e);
    for (const auto& [key, conns] : profile.plain_seed)
        for (Conn c : conns)
            for (const VertexPair& e : connection_edges(c, key.first, key.second)) edges.insert(e);
    for (const auto& [key, conns] : profile.seed_plain)
        for (Conn c : conns)
            for (const VertexPair& e : connection_edges(c, key.first, key.second)) edges.insert(e);
    return validate(profile.qprime_size, profile.seed_count, std::move(edges));
}

namespace {

std::uint64_t canonical_index(const Vertex& v, int qprime_size, int seed_count) {
    if (!v.seed) return static_cast<std::uint64_t>(v.k);
    return static_cast<std::uint64_t>(qprime_size) +
           static_cast<std::uint64_t>(seed_count) * (v.i - 1) + v.k;
}

}  // namespace

Relation propagate(const FoundationalRelation& f) {
    const int qn = f.qprime_size;
    const int n = f.seed_count;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> finite;
    for (auto [a, b] : f.profile.plain_edges)
        finite.push_back({static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)});
    Relation result = finite_pairs(finite);
    if (n == 0) return result;

    // Infinite row of seed k, from element index i0 on.
    auto row = [&](int k, int i0) {
        return arith_set(static_cast<std::uint64_t>(qn + k) % n, n,
                         static_cast<std::uint64_t>(qn) + static_cast<std::uint64_t>(n) * (i0 - 1) + k);
    };
    auto elem = [&](int k, int i) {
        return canonical_index(Vertex::seed_elem(k, i), qn, n);
    };

    for (const auto& [key, conns] : f.profile.seed_seed) {
        auto [k, l] = key;
        for (Conn c : conns) {
            Relation piece = empty_relation(2);
            switch (c) {
                case Conn::S0:
                    piece = restrict_track(diff_exact(l - k), 0, row(k, 1));
                    break;
                case Conn::SPlus1:
                    piece = restrict_track(diff_exact(n + l - k), 0, row(k, 1));
                    break;
                case Conn::SMinus1:
                    piece = restrict_track(diff_exact(l - k - n), 0, row(k, 2));
                    break;
                case Conn::SPlusInf:
                    piece = restrict_track(diff_in(2 * n + l - k, n), 0, row(k, 1));
                    break;
                case Conn::SMinusInf:
                    piece = converse(restrict_track(diff_in(2 * n + k - l, n), 0, row(l, 1)));
                    break;
                default: break;
            }
            result = rel_union(result, piece);
        }
    }
    for (const auto& [key, conns] : f.profile.plain_seed) {
        auto [qv, k] = key;
        for (Conn c : conns) {
            Relation piece = c == Conn::T0 ? single_pair(qv, elem(k, 1))
                                           : cross(single_value(qv), row(k, 2));
            result = rel_union(result, piece);
        }
    }
    for (const auto& [key, conns] : f.profile.seed_plain) {
        auto [k, qv] = key;
        for (Conn c : conns) {
            Relation piece = c == Conn::U0 ? single_pair(elem(k, 1), qv)
                                           : cross(row(k, 2), single_value(qv));
            result = rel_union(result, piece);
        }
    }
    return result;
}

std::pair<FoundationalRelation, PumpingConstant> extract(const Relation& r) {
    if (r.arity() != 2) throw ArityMismatch("extract needs arity 2");
    PumpingConstant d = pumping_constant(r.automaton());

    if (is_finite(r.automaton())) {
        auto all = enumerate_tuples(r.automaton(), std::numeric_limits<std::size_t>::max());
        std::uint64_t top = 0;
        bool any = false;
        for (const auto& t : all.tuples) {
            top = std::max({top, t[0], t[1]});
            any = true;
        }
        std::set<VertexPair> edges;
        for (const auto& t : all.tuples)
            edges.insert({Vertex::plain(static_cast<int>(t[0])), Vertex::plain(static_cast<int>(t[1]))});
        return {validate(any ? static_cast<int>(top) + 1 : 0, 0, std::move(edges)), d};
    }

    const std::uint64_t dd = d.value;
    auto table = pair_table(r.automaton(), 6 * dd - 1);
    auto vertex_of = [&](std::uint64_t x) {
        if (x < dd) return Vertex::plain(static_cast<int>(x));
        return Vertex::seed_elem(static_cast<int>(x % dd), static_cast<int>(x / dd));
    };
    std::set<VertexPair> edges;
    for (std::uint64_t u = 0; u < 6 * dd; ++u)
        for (std::uint64_t v = 0; v < 6 * dd; ++v)
            if (table[u][v]) edges.insert({vertex_of(u), vertex_of(v)});
    try {
        return {validate(static_cast<int>(dd), static_cast<int>(dd), std::move(edges)), d};
    } catch (const ConnectionViolation& e) {
        throw ValidationFailed(std::string("extracted window is not foundational: ") + e.what());
    }
}

Relation reencode(const Relation& r, PumpingConstant d, std::uint64_t qprime_size) {
    if (r.arity() != 2) throw ArityMismatch("reencode needs arity 2");
    if (qprime_size < d.value)
        throw std::invalid_argument("reencode: qprime_size below D is not injective");
    // Length bijection: identity below D, shift by (qprime_size - D) above.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> low;
    for (std::uint64_t x = 0; x < d.value; ++x) low.push_back({x, x});
    Relation graph = rel_union(
        finite_pairs(low),
        restrict_track(diff_exact(static_cast<std::int64_t>(qprime_size - d.value)), 0,
                       arith_set(0, 1, d.value)));
    return compose(converse(graph), compose(r, graph));
}

// ---------------------------------------------------------------------------
// Transitivity calculus

namespace {

enum class Sort { Seed, Plain };

Sort conn_src_sort(Conn c) {
    return (c == Conn::T0 || c == Conn::TPlusInf) ? Sort::Plain : Sort::Seed;
}
Sort conn_dst_sort(Conn c) {
    return (c == Conn::U0 || c == Conn::UMinusInf) ? Sort::Plain : Sort::Seed;
}

using Cell = std::optional<ConnCompose>;

Cell conns(std::initializer_list<Conn> cs) { return ConnCompose{false, std::set<Conn>(cs)}; }
Cell none() { return ConnCompose{false, {}}; }
Cell plain_edge() { return ConnCompose{true, {}}; }

const std::array<std::array<Cell, 9>, 9>& compose_table() {
    static const std::array<std::array<Cell, 9>, 9> table = [] {
        constexpr Conn SMI = Conn::SMinusInf, SM1 = Conn::SMinus1, S0 = Conn::S0,
                       SP1 = Conn::SPlus1, SPI = Conn::SPlusInf, T0 = Conn::T0,
                       TPI = Conn::TPlusInf, U0 = Conn::U0, UMI = Conn::UMinusInf;
        auto s_all = conns({SMI, SM1, S0, SP1, SPI});
        std::array<std::array<Cell, 9>, 9> t;
        auto row = [&](Conn first, std::array<Cell, 9> cells) {
            t[static_cast<int>(first)] = std::move(cells);
        };
        // Columns: S-inf, S-1, S0, S+1, S+inf, T0, T+inf, U0, U-inf.
        row(SMI, {conns({SMI}), conns({SMI}), conns({SMI}), conns({SMI, SM1}), s_all,
                  std::nullopt, std::nullopt, conns({UMI}), conns({UMI})});
        row(SM1, {conns({SMI}), conns({SMI}), conns({SM1}), conns({S0}), conns({SP1, SPI}),
                  std::nullopt, std::nullopt, conns({UMI}), conns({UMI})});
        row(S0, {conns({SMI}), conns({SM1}), conns({S0}), conns({SP1}), conns({SPI}),
                 std::nullopt, std::nullopt, conns({U0}), conns({UMI})});
        row(SP1, {conns({SMI, SM1}), conns({S0}), conns({SP1}), conns({SPI}), conns({SPI}),
                  std::nullopt, std::nullopt, none(), conns({U0, UMI})});
        row(SPI, {s_all, conns({SP1, SPI}), conns({SPI}), conns({SPI}), conns({SPI}),
                  std::nullopt, std::nullopt, none(), conns({U0, UMI})});
        row(T0, {none(), none(), conns({T0}), conns({TPI}), conns({TPI}), std::nullopt,
                 std::nullopt, plain_edge(), none()});
        row(TPI, {conns({T0, TPI}), conns({T0, TPI}), conns({TPI}), conns({TPI}), conns({TPI}),
                  std::nullopt, std::nullopt, none(), plain_edge()});
        row(U0, {std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                 conns({S0}), conns({SP1, SPI}), std::nullopt, std::nullopt});
        row(UMI, {std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                  conns({SM1, SMI}), s_all, std::nullopt, std::nullopt});
        return t;
    }();
    return table;
}

}  // namespace

ConnCompose connection_compose(Conn first, Conn second) {
    const Cell& cell = compose_table()[static_cast<int>(first)][static_cast<int>(second)];
    if (!cell) {
        if (conn_dst_sort(first) == conn_src_sort(second))
            throw std::logic_error("composable pair has no table cell");
        throw NotComposable(std::string(conn_name(first)) + " then " + conn_name(second) +
                            ": middle sorts do not match");
    }
    return *cell;
}

// ---------------------------------------------------------------------------
// Finite property checks and seed classification

namespace {

std::vector<Vertex> all_vertices(const FoundationalRelation& f) {
    std::vector<Vertex> out;
    for (int q = 0; q < f.qprime_size; ++q) out.push_back(Vertex::plain(q));
    for (int k = 0; k < f.seed_count; ++k)
        for (int i = 1; i <= 5; ++i) out.push_back(Vertex::seed_elem(k, i));
    return out;
}

}  // namespace

bool check_property(const FoundationalRelation& f, FoundationalProperty p) {
    const auto& edges = f.edges;
    auto has = [&](const Vertex& a, const Vertex& b) { return edges.count({a, b}) > 0; };
    switch (p) {
        case FoundationalProperty::Reflexive:
            for (const Vertex& v : all_vertices(f))
                if (!has(v, v)) return false;
            return true;
        case FoundationalProperty::Symmetric:
            for (const VertexPair& e : edges)
                if (!has(e.second, e.first)) return false;
            return true;
        case FoundationalProperty::Antisymmetric:
            for (const VertexPair& e : edges)
                if (!(e.first == e.second) && has(e.second, e.first)) return false;
            return true;
        case FoundationalProperty::Transitive:
            for (const VertexPair& e1 : edges)
                for (const VertexPair& e2 : edges)
                    if (e1.second == e2.first && !has(e1.first, e2.second)) return false;
            return true;
    }
    return false;
}

SeedClass classify_seed(const FoundationalRelation& f, int k) {
    if (k < 0 || k >= f.seed_count) throw std::invalid_argument("classify_seed: bad seed index");
    if (!check_property(f, FoundationalProperty::Reflexive) ||
        !check_property(f, FoundationalProperty::Transitive))
        throw NotAQuasiOrder("classify_seed needs a reflexive transitive relation");
    std::set<Conn> self;
    auto it = f.profile.seed_seed.find({k, k});
    if (it != f.profile.seed_seed.end()) self = it->second;
    bool up = self.count(Conn::SPlus1) || self.count(Conn::SPlusInf);
    bool down = self.count(Conn::SMinus1) || self.count(Conn::SMinusInf);
    if (up && down) return SeedClass::StronglyConnected;
    if (up) return SeedClass::AscendingChain;
    if (down) return SeedClass::DescendingChain;
    return SeedClass::Antichain;
}

// ---------------------------------------------------------------------------
// .ufr format

namespace {

Vertex parse_vertex(const std::string& name, int qprime_size, int seed_count) {
    if (name.size() >= 2 && name[0] == 'q') {
        int idx = std::stoi(name.substr(1));
        if (idx < 0 || idx >= qprime_size) throw FormatError("plain vertex out of range: " + name);
        return Vertex::plain(idx);
    }
    if (name.size() >= 2 && name[0] == 'P') {
        auto dot = name.find('.');
        if (dot == std::string::npos) throw FormatError("seed element needs P<k>.<i>: " + name);
        int k = std::stoi(name.substr(1, dot - 1));
        int i = std::stoi(name.substr(dot + 1));
        if (k < 0 || k >= seed_count || i < 1 || i > 5)
            throw FormatError("seed element out of range: " + name);
        return Vertex::seed_elem(k, i);
    }
    throw FormatError("bad vertex name '" + name + "'");
}

int parse_seed_name(const std::string& name, int seed_count) {
    if (name.empty() || name[0] != 'P') throw FormatError("expected seed name P<k>, got " + name);
    int k = std::stoi(name.substr(1));
    if (k < 0 || k >= seed_count) throw FormatError("seed out of range: " + name);
    return k;
}

int parse_plain_name(const std::string& name, int qprime_size) {
    if (name.empty() || name[0] != 'q') throw FormatError("expected vertex name q<i>, got " + name);
    int q = std::stoi(name.substr(1));
    if (q < 0 || q >= qprime_size) throw FormatError("vertex out of range: " + name);
    return q;
}

}  // namespace

FoundationalRelation read_ufr(std::istream& in) {
    int qprime_size = -1, seed_count = -1;
    std::set<VertexPair> edges;
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
        if (key == "qprime") {
            if (qprime_size >= 0) throw SeedOverlap("qprime declared twice");
            if (!(ls >> qprime_size) || qprime_size < 0) fail("bad qprime count");
        } else if (key == "seeds") {
            if (seed_count >= 0) throw SeedOverlap("seeds declared twice");
            if (!(ls >> seed_count) || seed_count < 0) fail("bad seed count");
        } else if (key == "edge") {
            if (qprime_size < 0 || seed_count < 0) fail("edge before qprime/seeds");
            std::string a, b;
            if (!(ls >> a >> b)) fail("bad edge line");
            edges.insert({parse_vertex(a, qprime_size, seed_count),
                          parse_vertex(b, qprime_size, seed_count)});
        } else if (key == "conn") {
            if (qprime_size < 0 || seed_count < 0) fail("conn before qprime/seeds");
            std::string tag, src, dst;
            if (!(ls >> tag >> src >> dst)) fail("bad conn line");
            Conn c = conn_from_name(tag);
            int s, t;
            switch (c) {
                case Conn::T0:
                case Conn::TPlusInf:
                    s = parse_plain_name(src, qprime_size);
                    t = parse_seed_name(dst, seed_count);
                    break;
                case Conn::U0:
                case Conn::UMinusInf:
                    s = parse_seed_name(src, seed_count);
                    t = parse_plain_name(dst, qprime_size);
                    break;
                default:
                    s = parse_seed_name(src, seed_count);
                    t = parse_seed_name(dst, seed_count);
                    break;
            }
            for (const VertexPair& e : connection_edges(c, s, t)) edges.insert(e);
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (qprime_size < 0 || seed_count < 0) throw FormatError("missing qprime/seeds directives");
    return validate(qprime_size, seed_count, std::move(edges));
}

void write_ufr(std::ostream& out, const FoundationalRelation& f) {
    out << "qprime " << f.qprime_size << "\n";
    out << "seeds " << f.seed_count << "\n";
    for (const auto& [key, cs] : f.profile.seed_seed)
        for (Conn c : cs)
            out << "conn " << conn_name(c) << " P" << key.first << " P" << key.second << "\n";
    for (const auto& [key, cs] : f.profile.plain_seed)
        for (Conn c : cs)
            out << "conn " << conn_name(c) << " q" << key.first << " P" << key.second << "\n";
    for (const auto& [key, cs] : f.profile.seed_plain)
        for (Conn c : cs)
            out << "conn " << conn_name(c) << " P" << key.first << " q" << key.second << "\n";
    for (auto [a, b] : f.profile.plain_edges) out << "edge q" << a << " q" << b << "\n";
}

FoundationalRelation load_ufr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_ufr(in);
}

void save_ufr(const std::string& path, const FoundationalRelation& f) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_ufr(out, f);
}

}  // namespace ufa
