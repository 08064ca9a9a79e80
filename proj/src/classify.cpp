#include "ufa/classify.hpp"

#include <limits>

#include "ufa/closure.hpp"
#include "ufa/fo.hpp"

namespace ufa {

bool is_quasiorder(const Relation& r) {
    if (r.arity() != 2) throw ArityMismatch("is_quasiorder needs arity 2");
    return fo_reflexive(r) && fo_transitive(r);
}

bool is_partial_order(const Relation& r) { return is_quasiorder(r) && fo_antisymmetric(r); }

bool is_tournament(const Relation& r) {
    if (r.arity() != 2) throw ArityMismatch("is_tournament needs arity 2");
    StructureEnv env{{"R", r}};
    return fo_irreflexive(r) &&
           check_sentence("A x. A y. (x = y | (R(x,y) | R(y,x)))", env) &&
           check_sentence("A x. A y. ((R(x,y) & R(y,x)) -> x = y)", env);
}

OrderDecomposition decompose_order(const Relation& r) {
    if (!is_quasiorder(r)) throw NotAQuasiOrder("decompose_order needs a quasi-order");
    auto [f, d] = extract(r);
    OrderDecomposition out;
    out.trivial_count = static_cast<std::uint64_t>(f.qprime_size);
    for (int k = 0; k < f.seed_count; ++k) {
        switch (classify_seed(f, k)) {
            case SeedClass::Antichain: ++out.antichains; break;
            case SeedClass::AscendingChain: ++out.ascending_chains; break;
            case SeedClass::DescendingChain: ++out.descending_chains; break;
            case SeedClass::StronglyConnected: ++out.strongly_connected; break;
        }
    }
    return out;
}

TournamentDecomposition decompose_tournament(const Relation& r) {
    if (!is_tournament(r)) throw NotATournament("decompose_tournament needs a tournament");
    auto [f, d] = extract(r);
    TournamentDecomposition out;
    out.trivial_count = static_cast<std::uint64_t>(f.qprime_size);
    for (int k = 0; k < f.seed_count; ++k) {
        std::set<Conn> self;
        auto it = f.profile.seed_seed.find({k, k});
        if (it != f.profile.seed_seed.end()) self = it->second;
        bool far_up = self.count(Conn::SPlusInf) > 0;
        bool far_down = self.count(Conn::SMinusInf) > 0;
        bool near_up = self.count(Conn::SPlus1) > 0;
        bool near_down = self.count(Conn::SMinus1) > 0;
        if (far_up == far_down || near_up == near_down || self.count(Conn::S0) > 0)
            throw ValidationFailed("tournament seed " + std::to_string(k) +
                                   " has inconsistent self-connections");
        if (far_up && near_up) ++out.complete_ascending;
        else if (far_down && near_down) ++out.complete_descending;
        else if (far_up) ++out.near_complete_ascending;
        else ++out.near_complete_descending;
    }
    return out;
}

namespace {

// Minimal-length representatives of the classes of an equivalence relation.
Relation class_representatives(const Relation& q) {
    Relation smaller = rel_intersect(q, converse(length_lt()));
    return rel_complement(project(smaller, 1));
}

// Formula: the class of x has at least k+1 elements.
FormulaPtr class_has_more_than(std::uint64_t k) {
    std::vector<std::string> ys;
    for (std::uint64_t i = 0; i <= k; ++i) ys.push_back("y" + std::to_string(i));
    FormulaPtr body = nullptr;
    for (const auto& y : ys) {
        FormulaPtr atom = Formula::atom("Q", {"x", y});
        body = body ? Formula::conj(body, atom) : atom;
    }
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = i + 1; j < ys.size(); ++j)
            body = Formula::conj(body, Formula::negate(Formula::eq(ys[i], ys[j])));
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = Formula::exists(*it, body);
    return body;
}

struct ClassAnalysis {
    std::uint64_t infinite_count = 0;
    std::vector<std::uint64_t> infinite_reps;
    std::uint64_t finite_size_bound = 0;
    Relation inf;  // {x : class of x is infinite}
};

ClassAnalysis analyse_classes(const Relation& q, std::uint64_t k_max) {
    ClassAnalysis out{0, {}, 0, infinite_class(q)};
    Relation reps = class_representatives(q);
    Relation inf_reps = rel_intersect(out.inf, reps);
    if (!is_finite(inf_reps.automaton()))
        throw ValidationFailed("infinitely many infinite classes; not a unary presentation");
    auto enumerated = enumerate_tuples(inf_reps.automaton(), std::numeric_limits<std::size_t>::max());
    for (const auto& t : enumerated.tuples) out.infinite_reps.push_back(t[0]);
    out.infinite_count = out.infinite_reps.size();

    StructureEnv env{{"Q", q}, {"Inf", out.inf}};
    bool found = false;
    for (std::uint64_t k = 0; k <= k_max && !found; ++k) {
        FormulaPtr big = class_has_more_than(k);
        FormulaPtr sentence = Formula::forall(
            "x", Formula::disj(Formula::atom("Inf", {"x"}), Formula::negate(big)));
        if (check_sentence(sentence, env)) {
            out.finite_size_bound = k;
            found = true;
        }
    }
    if (!found)
        throw BoundSearchBudgetExceeded("no finite-class bound up to " + std::to_string(k_max));
    return out;
}

}  // namespace

ComponentsReport components_report(const Relation& r, std::uint64_t k_max) {
    if (r.arity() != 2) throw ArityMismatch("components_report needs arity 2");
    Relation q = equivalence_closure(r);
    ClassAnalysis analysis = analyse_classes(q, k_max);
    ComponentsReport out;
    out.infinite_component_count = analysis.infinite_count;
    out.finite_size_bound = analysis.finite_size_bound;
    for (std::uint64_t rep : analysis.infinite_reps) {
        Relation members = project(restrict_track(q, 0, single_value(rep)), 0);
        auto sample = enumerate_tuples(members.automaton(), 3);
        std::vector<std::uint64_t> row;
        for (const auto& t : sample.tuples) row.push_back(t[0]);
        out.infinite_component_samples.push_back(std::move(row));
    }
    return out;
}

const char* path_type_name(PathType t) {
    switch (t) {
        case PathType::Outward: return "outward";
        case PathType::Inward: return "inward";
        case PathType::BiInfinite: return "bi_infinite";
        case PathType::NotApplicable: return "n/a";
    }
    return "?";
}

MapOrbitReport classify_map(const Relation& r, std::uint64_t k_max) {
    if (r.arity() != 2) throw ArityMismatch("classify_map needs arity 2");
    if (!fo_functional(r)) throw NotAPartialMap("relation is not a partial map");

    MapOrbitReport out;
    out.is_partial_map = true;
    out.is_total = fo_total(r);
    out.is_injective = fo_injective(r);
    out.is_surjective = fo_surjective(r);

    Relation q = equivalence_closure(r);
    ClassAnalysis analysis = analyse_classes(q, k_max);
    out.finite_orbit_size_bound = analysis.finite_size_bound;
    out.infinite_orbit_count = analysis.infinite_count;

    Relation p = plus_closure(r);
    StructureEnv env{{"Q", q}, {"P", p}, {"R", r}};
    Relation with_cycle = compile(parse_formula("E y. (Q(y,r) & P(y,y))"), env).rel;
    Relation with_undefined =
        compile(parse_formula("E y. (Q(y,r) & !(E z. R(y,z)))"), env).rel;
    Relation with_infinite_indegree =
        compile(parse_formula("E y. (Q(y,r) & A u. E w. (R(w,y) & len_lt(u,w)))"), env).rel;
    Relation with_no_preimage =
        compile(parse_formula("E y. (Q(y,r) & !(E w. R(w,y)))"), env).rel;

    for (std::uint64_t rep : analysis.infinite_reps) {
        OrbitTags tags;
        tags.representative = rep;
        tags.contains_cycle = with_cycle.contains({UnaryWord{rep}});
        tags.has_undefined_point = with_undefined.contains({UnaryWord{rep}});
        tags.has_infinite_indegree_vertex = with_infinite_indegree.contains({UnaryWord{rep}});
        bool no_preimage = with_no_preimage.contains({UnaryWord{rep}});
        if (!out.is_injective || tags.contains_cycle)
            tags.path_type = PathType::NotApplicable;
        else if (tags.has_undefined_point)
            tags.path_type = PathType::Inward;
        else if (no_preimage)
            tags.path_type = PathType::Outward;
        else
            tags.path_type = PathType::BiInfinite;
        out.orbits.push_back(tags);
    }
    return out;
}

}  // namespace ufa
