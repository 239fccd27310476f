// Command-line frontend: parse polynomial maps from files, decide
// invertibility, print series, Jacobians and corpus fixtures.
//
// Exit codes for `invert`: 0 invertible, 2 not invertible (either reason),
// 3 degree bound above the cap, 1 usage or parse error. `verify` exits 0/2.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyinv/derivative_recursion.hpp"
#include "polyinv/inverter.hpp"
#include "polyinv/tame.hpp"
#include "polyinv/text.hpp"

namespace {

using nlohmann::json;
using namespace polyinv;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ParsedMap load_map(const std::string& path) { return parse_map_text(read_file(path)); }

std::string join_components(const PolyMap& f, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        if (i) out += "; ";
        out += print_polynomial(f[i], names);
    }
    return out;
}

int cmd_jacobian(const std::string& mapfile) {
    const ParsedMap parsed = load_map(mapfile);
    const PolyMatrix jac = jacobian(parsed.map);
    for (std::size_t i = 0; i < jac.rows(); ++i) {
        std::cout << "[";
        for (std::size_t j = 0; j < jac.cols(); ++j) {
            if (j) std::cout << ", ";
            std::cout << print_polynomial(jac.at(i, j), parsed.variables);
        }
        std::cout << "]\n";
    }
    std::cout << "determinant: " << print_polynomial(determinant(jac), parsed.variables) << "\n";
    return 0;
}

int cmd_series(const std::string& mapfile, std::size_t order,
               const std::optional<std::string>& init_file) {
    const ParsedMap parsed = load_map(mapfile);
    std::optional<PolyMap> init;
    if (init_file) init = load_map(*init_file).map;
    const SeriesVec s = solve_series(parsed.map, order, init);
    for (std::size_t i = 0; i < s.arity(); ++i)
        std::cout << "S" << i + 1 << "(t) = " << print_series(s[i], parsed.variables) << "\n";
    return 0;
}

json series_to_json(const SeriesVec& s, const std::vector<std::string>& names) {
    json out = json::array();
    for (const auto& comp : s.components()) {
        json coeffs = json::array();
        for (const auto& c : comp.coeffs()) coeffs.push_back(print_polynomial(c, names));
        out.push_back(std::move(coeffs));
    }
    return out;
}

const char* witness_side(const NotInvertibleComposition& w) {
    return w.outer_is_map ? "map_of_candidate" : "candidate_of_map";
}

std::string witness_identity(const NotInvertibleComposition& w) {
    const std::string i = std::to_string(w.index + 1);
    return w.outer_is_map ? "F" + i + "(candidate) - X" + i : "candidate" + i + "(F) - X" + i;
}

int cmd_invert(const std::string& mapfile, std::uint64_t max_order, bool eager, bool as_json) {
    const ParsedMap parsed = load_map(mapfile);
    const auto& names = parsed.variables;
    SolveConfig cfg;
    cfg.max_order = max_order;
    cfg.eager_check = eager;

    const auto start = std::chrono::steady_clock::now();
    const Verdict verdict = decide_invertible(parsed.map, cfg);
    const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();

    const Polynomial det = determinant(jacobian(parsed.map));

    json doc;
    doc["variables"] = names;
    doc["map"] = json::array();
    for (const auto& c : parsed.map.components()) doc["map"].push_back(print_polynomial(c, names));
    doc["determinant"] = print_polynomial(det, names);
    if (constant_unit(det)) doc["degree_bound"] = degree_bound(parsed.map);
    doc["max_order"] = cfg.max_order;
    doc["timings"] = {{"total_ms", elapsed_ms}};

    int code = 2;
    if (const auto* inv = std::get_if<Invertible>(&verdict)) {
        doc["verdict"] = "invertible";
        doc["inverse"] = json::array();
        for (const auto& c : inv->inverse.components())
            doc["inverse"].push_back(print_polynomial(c, names));
        doc["solved_order"] = inv->series.order();
        doc["series"] = series_to_json(inv->series, names);
        code = 0;
        if (!as_json) {
            std::cout << "verdict: invertible\n"
                      << "inverse: " << join_components(inv->inverse, names) << "\n"
                      << "solved order: " << inv->series.order() << " (bound "
                      << degree_bound(parsed.map) << ")\n";
        }
    } else if (const auto* nj = std::get_if<NotInvertibleJacobian>(&verdict)) {
        doc["verdict"] = "not_invertible_jacobian";
        code = 2;
        if (!as_json) {
            std::cout << "verdict: not invertible (Jacobian determinant is not a nonzero constant)\n"
                      << "determinant: " << print_polynomial(nj->determinant, names) << "\n";
        }
    } else if (const auto* nc = std::get_if<NotInvertibleComposition>(&verdict)) {
        doc["verdict"] = "not_invertible_composition";
        doc["solved_order"] = nc->solved_order;
        doc["witness"] = {{"identity", witness_identity(*nc)},
                          {"component", nc->index + 1},
                          {"side", witness_side(*nc)},
                          {"leading_term", print_term(nc->leading, names, true)}};
        code = 2;
        if (!as_json) {
            std::cout << "verdict: not invertible (composition check failed)\n"
                      << "witness: " << witness_identity(*nc) << " has leading term "
                      << print_term(nc->leading, names, true) << " (solved to order "
                      << nc->solved_order << ")\n";
        }
    } else {
        const auto& be = std::get<BoundExceeded>(verdict);
        doc["verdict"] = "bound_exceeded";
        doc["required"] = be.required;
        doc["cap"] = be.cap;
        code = 3;
        if (!as_json)
            std::cout << "verdict: bound exceeded (required order " << be.required << ", cap "
                      << be.cap << ")\n";
    }
    if (as_json) std::cout << doc.dump(2) << "\n";
    return code;
}

int cmd_verify(const std::string& mapfile, const std::string& invfile) {
    const ParsedMap f = load_map(mapfile);
    const ParsedMap a = load_map(invfile);
    const bool ok = verify_mutual_inverse(f.map, a.map);
    std::cout << (ok ? "mutual inverse: yes\n" : "mutual inverse: no\n");
    return ok ? 0 : 2;
}

int cmd_gen_corpus(std::size_t m, std::size_t steps, std::uint64_t seed, std::size_t count,
                   std::size_t max_h_degree) {
    const auto names = default_variable_names(m);
    for (std::size_t k = 0; k < count; ++k) {
        const TameRecipe recipe = random_recipe(m, steps, max_h_degree, seed + k);
        const auto [forward, inverse] = realize(recipe);
        std::cout << serialize_recipe(recipe);
        std::cout << "map: " << join_components(forward, names) << "\n";
        std::cout << "inverse: " << join_components(inverse, names) << "\n\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact inversion of polynomial maps over Q"};
    app.require_subcommand(1);

    std::string mapfile, invfile;
    std::optional<std::string> init_file;
    std::size_t order = 0;
    std::uint64_t max_order = SolveConfig{}.max_order;
    bool eager = false, as_json = false;
    std::size_t gen_m = 2, gen_steps = 3, gen_count = 1, gen_h_degree = 3;
    std::uint64_t gen_seed = 1;

    auto* jac = app.add_subcommand("jacobian", "print the Jacobian matrix and its determinant");
    jac->add_option("mapfile", mapfile, "polynomial map file")->required();

    auto* ser = app.add_subcommand("series", "solve the deformation system to a given order");
    ser->add_option("mapfile", mapfile)->required();
    ser->add_option("--order", order, "truncation order")->required();
    ser->add_option("--init", init_file, "initial-condition map file");

    auto* inv = app.add_subcommand("invert", "decide invertibility and compute the inverse");
    inv->add_option("mapfile", mapfile)->required();
    inv->add_option("--max-order", max_order, "cap on the solved order");
    inv->add_flag("--eager", eager, "verify the candidate after each order");
    inv->add_flag("--json", as_json, "machine-readable output");

    auto* ver = app.add_subcommand("verify", "check that two maps are mutually inverse");
    ver->add_option("mapfile", mapfile)->required();
    ver->add_option("invfile", invfile)->required();

    auto* gen = app.add_subcommand("gen-corpus", "emit random tame automorphisms with inverses");
    gen->add_option("--m", gen_m, "number of variables");
    gen->add_option("--steps", gen_steps, "elementary steps per recipe");
    gen->add_option("--seed", gen_seed, "base seed; item k uses seed+k");
    gen->add_option("--count", gen_count, "number of recipes");
    gen->add_option("--max-h-degree", gen_h_degree, "degree budget for triangular steps");

    try {
        app.parse(argc, argv);
        if (jac->parsed()) return cmd_jacobian(mapfile);
        if (ser->parsed()) return cmd_series(mapfile, order, init_file);
        if (inv->parsed()) return cmd_invert(mapfile, max_order, eager, as_json);
        if (ver->parsed()) return cmd_verify(mapfile, invfile);
        if (gen->parsed()) return cmd_gen_corpus(gen_m, gen_steps, gen_seed, gen_count, gen_h_degree);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
