#include "ufa/fo.hpp"

#include <algorithm>
#include <cctype>

namespace ufa {

namespace {

FormulaPtr node(Formula::Kind kind, std::string name, std::vector<std::string> vars, FormulaPtr a,
                FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->name = std::move(name);
    f->vars = std::move(vars);
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

}  // namespace

FormulaPtr Formula::atom(std::string rel, std::vector<std::string> args) {
    return node(Kind::Atom, std::move(rel), std::move(args), nullptr, nullptr);
}
FormulaPtr Formula::eq(std::string x, std::string y) {
    return node(Kind::Eq, "", {std::move(x), std::move(y)}, nullptr, nullptr);
}
FormulaPtr Formula::len_lt(std::string x, std::string y) {
    return node(Kind::LenLt, "", {std::move(x), std::move(y)}, nullptr, nullptr);
}
FormulaPtr Formula::negate(FormulaPtr f) { return node(Kind::Not, "", {}, std::move(f), nullptr); }
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
    return node(Kind::And, "", {}, std::move(a), std::move(b));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
    return node(Kind::Or, "", {}, std::move(a), std::move(b));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    return node(Kind::Implies, "", {}, std::move(a), std::move(b));
}
FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
    return node(Kind::Exists, std::move(var), {}, std::move(body), nullptr);
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
    return node(Kind::Forall, std::move(var), {}, std::move(body), nullptr);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool eat_arrow() {
        skip_ws();
        if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
            pos += 2;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "' " + what, pos);
    }

    std::string ident() {
        skip_ws();
        std::size_t begin = pos;
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
        }
        if (begin == pos) throw SyntaxError("expected identifier", pos);
        return std::string(text.substr(begin, pos - begin));
    }

    FormulaPtr parse_implies() {
        FormulaPtr left = parse_or();
        if (eat_arrow()) return Formula::implies(std::move(left), parse_implies());
        return left;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (true) {
            skip_ws();
            // Do not swallow the '-' of '->'.
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                f = Formula::disj(std::move(f), parse_and());
            } else {
                return f;
            }
        }
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary();
        while (eat('&')) f = Formula::conj(std::move(f), parse_unary());
        return f;
    }

    FormulaPtr parse_unary() {
        skip_ws();
        if (eat('!')) return Formula::negate(parse_unary());
        if (eat('(')) {
            FormulaPtr f = parse_implies();
            expect(')', "to close group");
            return f;
        }
        std::string id = ident();
        if (id == "E" || id == "A") {
            std::string var = ident();
            expect('.', "after quantified variable");
            FormulaPtr body = parse_implies();  // extends to the enclosing ')'
            return id == "E" ? Formula::exists(var, std::move(body))
                             : Formula::forall(var, std::move(body));
        }
        if (eat('(')) {
            std::vector<std::string> args;
            if (!eat(')')) {
                args.push_back(ident());
                while (eat(',')) args.push_back(ident());
                expect(')', "to close argument list");
            }
            if (id == "len_lt") {
                if (args.size() != 2) throw SyntaxError("len_lt takes two variables", pos);
                return Formula::len_lt(args[0], args[1]);
            }
            return Formula::atom(id, std::move(args));
        }
        if (eat('=')) return Formula::eq(id, ident());
        throw SyntaxError("expected '(' or '=' after '" + id + "'", pos);
    }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
    Parser p{text};
    FormulaPtr f = p.parse_implies();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError("trailing input", p.pos);
    return f;
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

void collect_free(const FormulaPtr& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
    auto add = [&](const std::string& v) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    switch (f->kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Eq:
        case Formula::Kind::LenLt:
            for (const auto& v : f->vars) add(v);
            break;
        case Formula::Kind::Not:
            collect_free(f->lhs, bound, out);
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            collect_free(f->lhs, bound, out);
            collect_free(f->rhs, bound, out);
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            bound.push_back(f->name);
            collect_free(f->lhs, bound, out);
            bound.pop_back();
            break;
    }
}

// Rename bound variables so each is unique and distinct from every free
// variable; removes shadowing before compilation.
FormulaPtr normalize(const FormulaPtr& f, std::map<std::string, std::string>& renaming,
                     int& fresh_counter) {
    auto mapped = [&](const std::string& v) {
        auto it = renaming.find(v);
        return it == renaming.end() ? v : it->second;
    };
    switch (f->kind) {
        case Formula::Kind::Atom: {
            std::vector<std::string> args;
            for (const auto& v : f->vars) args.push_back(mapped(v));
            return Formula::atom(f->name, std::move(args));
        }
        case Formula::Kind::Eq:
            return Formula::eq(mapped(f->vars[0]), mapped(f->vars[1]));
        case Formula::Kind::LenLt:
            return Formula::len_lt(mapped(f->vars[0]), mapped(f->vars[1]));
        case Formula::Kind::Not:
            return Formula::negate(normalize(f->lhs, renaming, fresh_counter));
        case Formula::Kind::And:
            return Formula::conj(normalize(f->lhs, renaming, fresh_counter),
                                 normalize(f->rhs, renaming, fresh_counter));
        case Formula::Kind::Or:
            return Formula::disj(normalize(f->lhs, renaming, fresh_counter),
                                 normalize(f->rhs, renaming, fresh_counter));
        case Formula::Kind::Implies:
            return Formula::implies(normalize(f->lhs, renaming, fresh_counter),
                                    normalize(f->rhs, renaming, fresh_counter));
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::string fresh = f->name + "%" + std::to_string(fresh_counter++);
            auto saved = renaming;
            renaming[f->name] = fresh;
            FormulaPtr body = normalize(f->lhs, renaming, fresh_counter);
            renaming = saved;
            return f->kind == Formula::Kind::Exists ? Formula::exists(fresh, std::move(body))
                                                    : Formula::forall(fresh, std::move(body));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
    std::vector<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

int var_index(const std::vector<std::string>& vars, const std::string& v) {
    auto it = std::find(vars.begin(), vars.end(), v);
    return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

// Lift a compiled subformula onto a merged variable list.
Relation align(const CompiledFormula& c, const std::vector<std::string>& merged) {
    std::vector<int> slot_to_track;
    slot_to_track.reserve(c.vars.size());
    for (const auto& v : c.vars) slot_to_track.push_back(var_index(merged, v));
    return lift(c.rel, static_cast<int>(merged.size()), slot_to_track);
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> merged = a;
    for (const auto& v : b)
        if (var_index(merged, v) < 0) merged.push_back(v);
    return merged;
}

CompiledFormula compile_node(const FormulaPtr& f, const StructureEnv& env);

CompiledFormula compile_binary(const FormulaPtr& f, const StructureEnv& env) {
    CompiledFormula a = compile_node(f->lhs, env);
    CompiledFormula b = compile_node(f->rhs, env);
    std::vector<std::string> merged = merge_vars(a.vars, b.vars);
    Relation ra = align(a, merged);
    Relation rb = align(b, merged);
    switch (f->kind) {
        case Formula::Kind::And: return {rel_intersect(ra, rb), merged};
        case Formula::Kind::Or: return {rel_union(ra, rb), merged};
        case Formula::Kind::Implies: return {rel_union(rel_complement(ra), rb), merged};
        default: throw std::logic_error("unreachable");
    }
}

CompiledFormula compile_node(const FormulaPtr& f, const StructureEnv& env) {
    switch (f->kind) {
        case Formula::Kind::Atom: {
            auto it = env.find(f->name);
            if (it == env.end()) throw UnknownRelation("'" + f->name + "' is not bound");
            const Relation& base = it->second;
            if (static_cast<int>(f->vars.size()) != base.arity())
                throw ArityMismatch("atom " + f->name + " has " + std::to_string(f->vars.size()) +
                                    " arguments, relation has arity " +
                                    std::to_string(base.arity()));
            std::vector<std::string> distinct;
            for (const auto& v : f->vars)
                if (var_index(distinct, v) < 0) distinct.push_back(v);
            std::vector<int> slot_to_track;
            for (const auto& v : f->vars) slot_to_track.push_back(var_index(distinct, v));
            return {lift(base, static_cast<int>(distinct.size()), slot_to_track), distinct};
        }
        case Formula::Kind::Eq: {
            if (f->vars[0] == f->vars[1]) return {full_relation(1), {f->vars[0]}};
            return {diagonal(), {f->vars[0], f->vars[1]}};
        }
        case Formula::Kind::LenLt: {
            if (f->vars[0] == f->vars[1]) return {empty_relation(1), {f->vars[0]}};
            return {length_lt(), {f->vars[0], f->vars[1]}};
        }
        case Formula::Kind::Not: {
            CompiledFormula c = compile_node(f->lhs, env);
            return {rel_complement(c.rel), c.vars};
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            return compile_binary(f, env);
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            CompiledFormula c = compile_node(f->lhs, env);
            int idx = var_index(c.vars, f->name);
            if (idx < 0) return c;  // vacuous quantifier over a nonempty domain
            std::vector<std::string> vars = c.vars;
            vars.erase(vars.begin() + idx);
            if (f->kind == Formula::Kind::Exists) return {project(c.rel, idx), vars};
            return {rel_complement(project(rel_complement(c.rel), idx)), vars};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

CompiledFormula compile(const FormulaPtr& f, const StructureEnv& env) {
    std::map<std::string, std::string> renaming;
    int fresh = 0;
    FormulaPtr normalized = normalize(f, renaming, fresh);
    CompiledFormula c = compile_node(normalized, env);
    // Free variables keep their names; report them in first-occurrence order
    // of the original formula.
    std::vector<std::string> order = free_variables(f);
    if (order != c.vars) {
        std::vector<int> slot_to_track;
        for (const auto& v : c.vars) slot_to_track.push_back(var_index(order, v));
        c = {lift(c.rel, static_cast<int>(order.size()), slot_to_track), order};
    }
    return c;
}

bool check_sentence(const FormulaPtr& f, const StructureEnv& env) {
    CompiledFormula c = compile(f, env);
    if (!c.vars.empty()) {
        std::string names;
        for (const auto& v : c.vars) names += (names.empty() ? "" : ", ") + v;
        throw NotASentence("free variables: " + names);
    }
    return !rel_is_empty(c.rel);
}

bool check_sentence(std::string_view text, const StructureEnv& env) {
    return check_sentence(parse_formula(text), env);
}

Relation infinite_class(const Relation& q) {
    if (q.arity() != 2) throw ArityMismatch("infinite_class needs arity 2");
    StructureEnv env{{"Q", q}};
    return compile(parse_formula("A y. E z. (Q(x,z) & len_lt(y,z))"), env).rel;
}

namespace {

bool sentence_about(const Relation& r, std::string_view text) {
    return check_sentence(text, StructureEnv{{"R", r}});
}

}  // namespace

bool fo_reflexive(const Relation& r) { return sentence_about(r, "A x. R(x,x)"); }
bool fo_irreflexive(const Relation& r) { return sentence_about(r, "A x. !R(x,x)"); }
bool fo_symmetric(const Relation& r) {
    return sentence_about(r, "A x. A y. (R(x,y) -> R(y,x))");
}
bool fo_antisymmetric(const Relation& r) {
    return sentence_about(r, "A x. A y. ((R(x,y) & R(y,x)) -> x = y)");
}
bool fo_transitive(const Relation& r) {
    return sentence_about(r, "A x. A y. A z. ((R(x,y) & R(y,z)) -> R(x,z))");
}
bool fo_functional(const Relation& r) {
    return sentence_about(r, "A x. A y. A z. ((R(x,y) & R(x,z)) -> y = z)");
}
bool fo_total(const Relation& r) { return sentence_about(r, "A x. E y. R(x,y)"); }
bool fo_injective(const Relation& r) {
    return sentence_about(r, "A x. A y. A z. ((R(x,z) & R(y,z)) -> x = y)");
}
bool fo_surjective(const Relation& r) { return sentence_about(r, "A y. E x. R(x,y)"); }
bool fo_equivalence(const Relation& r) {
    return fo_reflexive(r) && fo_symmetric(r) && fo_transitive(r);
}

}  // namespace ufa
