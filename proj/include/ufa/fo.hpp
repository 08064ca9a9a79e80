#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ufa/relation.hpp"

namespace ufa {

// First-order formulas over named base relations, equality, and the built-in
// length order. Immutable shared AST.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Eq, LenLt, Not, And, Or, Implies, Exists, Forall };

    Kind kind;
    std::string name;                // Atom: relation name; quantifiers: bound variable
    std::vector<std::string> vars;   // Atom arguments; Eq/LenLt: the two variables
    FormulaPtr lhs, rhs;             // children (Not/quantifiers use lhs only)

    static FormulaPtr atom(std::string rel, std::vector<std::string> args);
    static FormulaPtr eq(std::string x, std::string y);
    static FormulaPtr len_lt(std::string x, std::string y);
    static FormulaPtr negate(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr exists(std::string var, FormulaPtr body);
    static FormulaPtr forall(std::string var, FormulaPtr body);
};

// Grammar:
//   phi ::= NAME(v, ...) | v = v | len_lt(v, v) | !phi | phi & phi
//         | phi "|" phi | phi -> phi | E v. phi | A v. phi
// '&' binds tighter than '|' tighter than '->'; '->' associates right;
// a quantifier's body extends to the end of the enclosing parenthesis.
FormulaPtr parse_formula(std::string_view text);

// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const FormulaPtr& f);

using StructureEnv = std::map<std::string, Relation>;

struct CompiledFormula {
    Relation rel;                     // arity = vars.size()
    std::vector<std::string> vars;    // free variables, first-occurrence order
};

CompiledFormula compile(const FormulaPtr& f, const StructureEnv& env);

bool check_sentence(const FormulaPtr& f, const StructureEnv& env);
bool check_sentence(std::string_view text, const StructureEnv& env);

// {x : the class of x under the equivalence q is infinite}.
Relation infinite_class(const Relation& q);

// Standard predicates on binary relations, defined as library formulas.
bool fo_reflexive(const Relation& r);
bool fo_irreflexive(const Relation& r);
bool fo_symmetric(const Relation& r);
bool fo_antisymmetric(const Relation& r);
bool fo_transitive(const Relation& r);
bool fo_functional(const Relation& r);
bool fo_total(const Relation& r);
bool fo_injective(const Relation& r);
bool fo_surjective(const Relation& r);
bool fo_equivalence(const Relation& r);

}  // namespace ufa
