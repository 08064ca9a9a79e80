#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ufa/builders.hpp"
#include "ufa/classify.hpp"
#include "ufa/closure.hpp"
#include "ufa/fo.hpp"
#include "ufa/foundational.hpp"

namespace {

ufa::Relation load_relation(const std::string& path) {
    ufa::UnaryAutomaton a = ufa::load_ufa(path);
    return ufa::Relation::make(a.tracks, a);
}

void save_relation(const std::string& path, const ufa::Relation& r) {
    ufa::save_ufa(path, r.automaton());
}

std::uint64_t closure_budget(std::uint64_t flag_value, bool flag_set) {
    if (flag_set) return flag_value;
    if (const char* env = std::getenv("UFA_MAX_K")) return std::stoull(env);
    return ufa::kDefaultMaxK;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

void run_info(const std::string& path) {
    ufa::Relation r = load_relation(path);
    ufa::LoopProfile profile = ufa::loop_profile(r.automaton());
    ufa::PumpingConstant d = ufa::pumping_constant(r.automaton());
    std::cout << "tracks: " << r.arity() << "\n";
    std::cout << "states: " << profile.state_count << "\n";
    std::cout << "pumping_constant: " << d.value << "\n";
    std::cout << "loop_lengths:";
    for (std::uint64_t len : profile.loop_lengths) std::cout << ' ' << len;
    std::cout << "\n";
}

void run_eval(const std::string& path, const std::vector<std::uint64_t>& components) {
    ufa::Relation r = load_relation(path);
    if (static_cast<int>(components.size()) != r.arity())
        throw CLI::ValidationError("eval needs exactly " + std::to_string(r.arity()) +
                                   " components for this relation");
    std::vector<ufa::UnaryWord> tuple;
    for (std::uint64_t c : components) tuple.push_back(ufa::UnaryWord{c});
    std::cout << bool_text(r.contains(tuple)) << "\n";
}

void run_query(const std::vector<std::string>& rel_specs, const std::string& formula_text,
               const std::string& out_path) {
    ufa::StructureEnv env;
    for (const std::string& spec : rel_specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--rel expects NAME=path, got '" + spec + "'");
        env.emplace(spec.substr(0, eq), load_relation(spec.substr(eq + 1)));
    }
    ufa::CompiledFormula compiled = ufa::compile(ufa::parse_formula(formula_text), env);
    if (compiled.vars.empty()) {
        std::cout << bool_text(!ufa::rel_is_empty(compiled.rel)) << "\n";
        return;
    }
    if (out_path.empty())
        throw CLI::ValidationError("formula has free variables; use -o to write the relation");
    save_relation(out_path, compiled.rel);
}

void run_closure(const std::string& mode, const std::string& in_path, const std::string& out_path,
                 std::uint64_t max_k) {
    ufa::Relation r = load_relation(in_path);
    if (mode == "star") {
        auto [w, cert] = ufa::star_closure(r, max_k);
        save_relation(out_path, w);
        std::cout << "certificate: k=" << cert.k << " iterations=" << cert.iterations
                  << " contains_diagonal=" << bool_text(cert.contains_diagonal)
                  << " contains_r=" << bool_text(cert.contains_r)
                  << " transitive=" << bool_text(cert.transitive) << "\n";
    } else if (mode == "plus") {
        save_relation(out_path, ufa::plus_closure(r, max_k));
    } else {
        save_relation(out_path, ufa::equivalence_closure(r, max_k));
    }
}

void run_classify(const std::string& kind, const std::string& path) {
    ufa::Relation r = load_relation(path);
    std::cout << "kind: " << kind << "\n";
    if (kind == "order") {
        ufa::OrderDecomposition d = ufa::decompose_order(r);
        std::cout << "trivial: " << d.trivial_count << "\n";
        std::cout << "ascending_chains: " << d.ascending_chains << "\n";
        std::cout << "descending_chains: " << d.descending_chains << "\n";
        std::cout << "antichains: " << d.antichains << "\n";
        std::cout << "strongly_connected: " << d.strongly_connected << "\n";
    } else if (kind == "tournament") {
        ufa::TournamentDecomposition d = ufa::decompose_tournament(r);
        std::cout << "trivial: " << d.trivial_count << "\n";
        std::cout << "complete_ascending: " << d.complete_ascending << "\n";
        std::cout << "complete_descending: " << d.complete_descending << "\n";
        std::cout << "near_complete_ascending: " << d.near_complete_ascending << "\n";
        std::cout << "near_complete_descending: " << d.near_complete_descending << "\n";
    } else if (kind == "components") {
        ufa::ComponentsReport rep = ufa::components_report(r);
        std::cout << "infinite_components: " << rep.infinite_component_count << "\n";
        std::cout << "finite_size_bound: " << rep.finite_size_bound << "\n";
        for (const auto& sample : rep.infinite_component_samples) {
            std::cout << "samples:";
            for (std::uint64_t v : sample) std::cout << ' ' << v;
            std::cout << "\n";
        }
    } else {
        ufa::MapOrbitReport rep = ufa::classify_map(r);
        std::cout << "partial_map: " << bool_text(rep.is_partial_map) << "\n";
        std::cout << "total: " << bool_text(rep.is_total) << "\n";
        std::cout << "injective: " << bool_text(rep.is_injective) << "\n";
        std::cout << "surjective: " << bool_text(rep.is_surjective) << "\n";
        std::cout << "finite_orbit_size_bound: " << rep.finite_orbit_size_bound << "\n";
        std::cout << "infinite_orbits: " << rep.infinite_orbit_count << "\n";
        for (const ufa::OrbitTags& t : rep.orbits) {
            std::cout << "orbit " << t.representative << ": cycle=" << bool_text(t.contains_cycle)
                      << " undefined_point=" << bool_text(t.has_undefined_point)
                      << " infinite_indegree=" << bool_text(t.has_infinite_indegree_vertex)
                      << " path=" << ufa::path_type_name(t.path_type) << "\n";
        }
    }
}

void run_render(const std::string& format, const std::string& path, std::uint64_t cols) {
    ufa::Relation r = load_relation(path);
    const ufa::UnaryAutomaton& a = r.automaton();
    if (format == "dot") {
        std::cout << "digraph ufa {\n  rankdir=LR;\n  start [shape=point];\n";
        std::cout << "  start -> s" << a.start << ";\n";
        for (ufa::State s = 0; s < a.num_states(); ++s)
            std::cout << "  s" << s << " [shape=" << (a.accepting[s] ? "doublecircle" : "circle")
                      << "];\n";
        for (ufa::State s = 0; s < a.num_states(); ++s)
            for (const auto& [letter, targets] : a.delta[s])
                for (ufa::State t : targets)
                    std::cout << "  s" << s << " -> s" << t << " [label=\""
                              << ufa::letter_text(letter, a.tracks) << "\"];\n";
        std::cout << "}\n";
        return;
    }
    if (r.arity() != 2) throw ufa::ArityMismatch("grid rendering needs a binary relation");
    ufa::PumpingConstant d = ufa::pumping_constant(a);
    std::uint64_t top = (cols + 1) * d.value - 1;
    auto table = ufa::pair_table(a, top);
    std::cout << "tracks: 2\n";
    std::cout << "D: " << d.value << "\n";
    std::cout << "columns: 0.." << cols << "\n";
    for (std::uint64_t p = 0; p <= top; ++p)
        for (std::uint64_t q = 0; q <= top; ++q)
            if (table[p][q]) {
                ufa::DiagramCoord cp = ufa::coords(ufa::UnaryWord{p}, d);
                ufa::DiagramCoord cq = ufa::coords(ufa::UnaryWord{q}, d);
                std::cout << "arrow (" << cp.column << ',' << cp.row << ") -> (" << cq.column
                          << ',' << cq.row << ")\n";
            }
}

void run_build(const std::string& what, const std::vector<std::string>& args,
               const std::string& out_path) {
    auto need = [&](std::size_t count) {
        if (args.size() != count)
            throw CLI::ValidationError("build " + what + " takes " + std::to_string(count) +
                                       " arguments");
    };
    ufa::Relation result = ufa::empty_relation(2);
    if (what == "union") {
        need(2);
        result = ufa::disjoint_union(load_relation(args[0]), load_relation(args[1]));
    } else if (what == "copies") {
        need(1);
        result = ufa::omega_copies(ufa::load_structure(args[0]), "edge");
    } else if (what == "quotient") {
        need(2);
        result = ufa::quotient(load_relation(args[0]), load_relation(args[1]));
    } else if (what == "attach") {
        need(4);
        result = ufa::attach(load_relation(args[0]), std::stoull(args[1]), load_relation(args[2]),
                             std::stoull(args[3]));
    } else if (what == "star") {
        need(1);
        result = ufa::shallow_star(ufa::load_template(args[0]));
    } else if (what == "path") {
        need(1);
        result = ufa::periodic_path(ufa::load_template(args[0]));
    } else {
        throw CLI::ValidationError("unknown build kind '" + what + "'");
    }
    save_relation(out_path, result);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unary automatic relations toolbox"};
    app.require_subcommand(1);

    std::string in_path, out_path, formula_text, kind, build_what, render_format = "dot";
    std::vector<std::string> rel_specs, build_args;
    std::vector<std::uint64_t> eval_components;
    std::uint64_t max_k = ufa::kDefaultMaxK, cols = 5;
    bool star = false, plus = false, equiv = false;

    CLI::App* info = app.add_subcommand("info", "automaton summary");
    info->add_option("input", in_path)->required();

    CLI::App* eval = app.add_subcommand("eval", "test tuple membership");
    eval->add_option("input", in_path)->required();
    eval->add_option("components", eval_components)->required();

    CLI::App* query = app.add_subcommand("query", "compile or decide a formula");
    query->add_option("--rel", rel_specs, "NAME=path binding for a base relation");
    query->add_option("formula", formula_text)->required();
    query->add_option("-o,--output", out_path);

    CLI::App* closure = app.add_subcommand("closure", "reflexive/transitive/equivalence closure");
    closure->add_flag("--star", star);
    closure->add_flag("--plus", plus);
    closure->add_flag("--equiv", equiv);
    closure->add_option("input", in_path)->required();
    closure->add_option("-o,--output", out_path)->required();
    CLI::Option* max_k_opt = closure->add_option("--max-k", max_k);

    CLI::App* classify = app.add_subcommand("classify", "decomposition and orbit reports");
    classify->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"order", "tournament", "components", "map"}));
    classify->add_option("input", in_path)->required();

    CLI::App* propagate = app.add_subcommand("propagate", "foundational relation to automaton");
    propagate->add_option("input", in_path)->required();
    propagate->add_option("-o,--output", out_path)->required();

    CLI::App* extract = app.add_subcommand("extract", "automaton to foundational relation");
    extract->add_option("input", in_path)->required();
    extract->add_option("-o,--output", out_path)->required();

    CLI::App* build = app.add_subcommand("build", "structure builders");
    build->add_option("what", build_what)
        ->required()
        ->check(CLI::IsMember({"union", "copies", "quotient", "attach", "star", "path"}));
    build->add_option("args", build_args);
    build->add_option("-o,--output", out_path)->required();

    CLI::App* render = app.add_subcommand("render", "dot or diagram-grid rendering");
    render->add_option("--format", render_format)->check(CLI::IsMember({"dot", "grid"}));
    render->add_option("--cols", cols);
    render->add_option("input", in_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (info->parsed()) run_info(in_path);
        else if (eval->parsed()) run_eval(in_path, eval_components);
        else if (query->parsed()) run_query(rel_specs, formula_text, out_path);
        else if (closure->parsed()) {
            int modes = int(star) + int(plus) + int(equiv);
            if (modes != 1) {
                std::cerr << "closure needs exactly one of --star, --plus, --equiv\n";
                return 2;
            }
            run_closure(star ? "star" : plus ? "plus" : "equiv", in_path, out_path,
                        closure_budget(max_k, max_k_opt->count() > 0));
        } else if (classify->parsed()) run_classify(kind, in_path);
        else if (propagate->parsed()) ufa::save_ufa(out_path, ufa::propagate(ufa::load_ufr(in_path)).automaton());
        else if (extract->parsed()) ufa::save_ufr(out_path, ufa::extract(load_relation(in_path)).first);
        else if (build->parsed()) run_build(build_what, build_args, out_path);
        else if (render->parsed()) run_render(render_format, in_path, cols);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ufa::UfaError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
