#ifndef POLYINV_TAME_HPP
#define POLYINV_TAME_HPP

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyinv/poly_map.hpp"
#include "polyinv/polynomial.hpp"
#include "polyinv/rational.hpp"
#include "polyinv/text.hpp"

namespace polyinv {

// X_target += h(other variables); undone by flipping the sign of h.
struct TriangularStep {
    std::size_t target;
    Polynomial shift;
};

// X -> M*X + b with an invertible constant matrix.
struct AffineStep {
    std::vector<std::vector<Rational>> matrix;  // m rows of m entries
    std::vector<Rational> translation;
};

using ElementaryStep = std::variant<TriangularStep, AffineStep>;

struct TameRecipe {
    std::size_t arity;
    std::vector<ElementaryStep> steps;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<std::vector<Rational>> rational_matrix_inverse(
    const std::vector<std::vector<Rational>>& mat) {
    const std::size_t n = mat.size();
    auto work = mat;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw std::invalid_argument("realize: singular affine matrix");
        std::swap(work[pivot], work[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = work[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            work[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work[r][col].is_zero()) continue;
            const Rational factor = work[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                work[r][j] -= factor * work[col][j];
                inv[r][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

inline PolyMap affine_map(std::size_t m, const std::vector<std::vector<Rational>>& mat,
                          const std::vector<Rational>& shift) {
    std::vector<Polynomial> comps;
    comps.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Polynomial c = Polynomial::constant(m, shift[i]);
        for (std::size_t j = 0; j < m; ++j)
            if (!mat[i][j].is_zero()) c += Polynomial::variable(m, j) * mat[i][j];
        comps.push_back(std::move(c));
    }
    return PolyMap(std::move(comps));
}

inline void validate_step(std::size_t m, const ElementaryStep& step) {
    if (const auto* tri = std::get_if<TriangularStep>(&step)) {
        if (tri->target >= m) throw std::invalid_argument("realize: triangular target out of range");
        if (tri->shift.arity() != m)
            throw std::invalid_argument("realize: triangular shift arity mismatch");
        for (const auto& t : tri->shift.terms())
            if (t.mono.exponents[tri->target] != 0)
                throw std::invalid_argument("realize: triangular shift involves its own target");
    } else {
        const auto& aff = std::get<AffineStep>(step);
        if (aff.matrix.size() != m || aff.translation.size() != m)
            throw std::invalid_argument("realize: affine shape mismatch");
        for (const auto& row : aff.matrix)
            if (row.size() != m) throw std::invalid_argument("realize: affine shape mismatch");
    }
}

}  // namespace detail

inline PolyMap step_map(std::size_t m, const ElementaryStep& step) {
    if (const auto* tri = std::get_if<TriangularStep>(&step)) {
        std::vector<Polynomial> comps;
        comps.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            Polynomial c = Polynomial::variable(m, i);
            if (i == tri->target) c += tri->shift;
            comps.push_back(std::move(c));
        }
        return PolyMap(std::move(comps));
    }
    const auto& aff = std::get<AffineStep>(step);
    return detail::affine_map(m, aff.matrix, aff.translation);
}

inline PolyMap step_inverse_map(std::size_t m, const ElementaryStep& step) {
    if (const auto* tri = std::get_if<TriangularStep>(&step)) {
        return step_map(m, ElementaryStep{TriangularStep{tri->target, -tri->shift}});
    }
    const auto& aff = std::get<AffineStep>(step);
    const auto inv = detail::rational_matrix_inverse(aff.matrix);
    // M^-1 (X - b): translation is -M^-1 b.
    std::vector<Rational> shift(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) shift[i] -= inv[i][j] * aff.translation[j];
    return detail::affine_map(m, inv, shift);
}

// The tame automorphism of a recipe together with its tracked inverse:
// F substitutes each successive step into the accumulated map, A accumulates
// the step inverses in reverse order, so F and A are mutually inverse by
// construction.
inline std::pair<PolyMap, PolyMap> realize(const TameRecipe& recipe) {
    const std::size_t m = recipe.arity;
    if (m == 0) throw std::invalid_argument("realize: arity must be positive");
    for (const auto& step : recipe.steps) detail::validate_step(m, step);

    PolyMap forward = PolyMap::identity(m);
    for (const auto& step : recipe.steps) forward = map_compose(forward, step_map(m, step));
    PolyMap inverse = PolyMap::identity(m);
    for (auto it = recipe.steps.rbegin(); it != recipe.steps.rend(); ++it)
        inverse = map_compose(inverse, step_inverse_map(m, *it));
    return {std::move(forward), std::move(inverse)};
}

namespace detail {

// Bounded draw from the raw 64-bit stream. The modulo bias is irrelevant
// here and keeps the sequence identical across standard libraries, which
// uniform_int_distribution would not.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

}  // namespace detail

// Deterministic pseudo-random recipe: triangular steps get at most 3 terms
// with coefficients in {-3..3}\{0} and degree <= max_h_degree in the other
// variables; affine steps are built from a few unimodular row operations so
// entries stay small. The product of triangular degrees across one recipe is
// capped: composed degrees multiply step by step, and exact arithmetic on
// the resulting inverses swells far past desk scale without a budget.
inline constexpr std::size_t kTriangularDegreeBudget = 9;

inline TameRecipe random_recipe(std::size_t m, std::size_t steps, std::size_t max_h_degree,
                                std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("random_recipe: need at least two variables");
    std::mt19937_64 rng(seed);
    TameRecipe recipe{m, {}, seed};
    recipe.steps.reserve(steps);
    std::size_t degree_product = 1;
    for (std::size_t s = 0; s < steps; ++s) {
        if (detail::draw(rng, 2) == 0) {
            const std::size_t target = detail::draw(rng, m);
            const std::size_t allowed =
                std::max<std::size_t>(1, std::min(max_h_degree, kTriangularDegreeBudget / degree_product));
            std::vector<Polynomial::Term> terms;
            const std::size_t nterms = 1 + detail::draw(rng, 3);
            for (std::size_t t = 0; t < nterms; ++t) {
                Monomial mono(m);
                const std::size_t degree = detail::draw(rng, allowed + 1);
                for (std::size_t d = 0; d < degree; ++d) {
                    std::size_t var = detail::draw(rng, m - 1);
                    if (var >= target) ++var;  // never the target variable
                    ++mono.exponents[var];
                }
                const long magnitude = 1 + static_cast<long>(detail::draw(rng, 3));
                const long coeff = detail::draw(rng, 2) == 0 ? magnitude : -magnitude;
                terms.push_back({std::move(mono), Rational(coeff)});
            }
            const Polynomial shift = Polynomial::from_terms(m, terms);
            degree_product *= std::max<std::size_t>(
                1, shift.is_zero() ? 1 : static_cast<std::size_t>(shift.total_degree()));
            recipe.steps.push_back(TriangularStep{target, shift});
        } else {
            std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m, Rational(0)));
            for (std::size_t i = 0; i < m; ++i) mat[i][i] = Rational(1);
            const std::size_t ops = 1 + detail::draw(rng, 3);
            for (std::size_t o = 0; o < ops; ++o) {
                switch (detail::draw(rng, 3)) {
                    case 0: {  // row_i += c * row_j
                        const std::size_t i = detail::draw(rng, m);
                        std::size_t j = detail::draw(rng, m - 1);
                        if (j >= i) ++j;
                        const long c = detail::draw(rng, 2) == 0 ? 1 : -1;
                        const long scale = 1 + static_cast<long>(detail::draw(rng, 2));
                        for (std::size_t col = 0; col < m; ++col)
                            mat[i][col] += Rational(c * scale) * mat[j][col];
                        break;
                    }
                    case 1: {  // swap two rows
                        const std::size_t i = detail::draw(rng, m);
                        std::size_t j = detail::draw(rng, m - 1);
                        if (j >= i) ++j;
                        std::swap(mat[i], mat[j]);
                        break;
                    }
                    default: {  // negate a row
                        const std::size_t i = detail::draw(rng, m);
                        for (auto& e : mat[i]) e = -e;
                        break;
                    }
                }
            }
            std::vector<Rational> translation;
            translation.reserve(m);
            for (std::size_t i = 0; i < m; ++i)
                translation.push_back(Rational(static_cast<long>(detail::draw(rng, 7)) - 3));
            recipe.steps.push_back(AffineStep{std::move(mat), std::move(translation)});
        }
    }
    return recipe;
}

// ---------------------------------------------------------------------------
// Line-oriented recipe fixtures:
//   recipe m=<m> steps=<k> seed=<s>
//   triangular <target, 1-based> <polynomial>
//   affine <m*m matrix entries row-major> <m translation entries>
//   end
// ---------------------------------------------------------------------------

inline std::string serialize_recipe(const TameRecipe& recipe) {
    const auto names = default_variable_names(recipe.arity);
    std::ostringstream out;
    out << "recipe m=" << recipe.arity << " steps=" << recipe.steps.size()
        << " seed=" << recipe.seed << "\n";
    for (const auto& step : recipe.steps) {
        if (const auto* tri = std::get_if<TriangularStep>(&step)) {
            out << "triangular " << tri->target + 1 << " "
                << print_polynomial(tri->shift, names) << "\n";
        } else {
            const auto& aff = std::get<AffineStep>(step);
            out << "affine";
            for (const auto& row : aff.matrix)
                for (const auto& e : row) out << " " << e.str();
            for (const auto& e : aff.translation) out << " " << e.str();
            out << "\n";
        }
    }
    out << "end\n";
    return out.str();
}

inline std::vector<TameRecipe> parse_recipes(const std::string& text) {
    std::vector<TameRecipe> recipes;
    TameRecipe current{0, {}, 0};
    bool open = false;
    std::size_t lineno = 0;
    for (const auto& raw : detail::split(text, '\n')) {
        ++lineno;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::string word;
        in >> word;
        const auto fail = [&](const std::string& why) {
            throw std::invalid_argument("recipe line " + std::to_string(lineno) + ": " + why);
        };
        if (word == "recipe") {
            if (open) fail("previous recipe not closed with 'end'");
            current = TameRecipe{0, {}, 0};
            std::string field;
            while (in >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) fail("expected key=value");
                const std::string key = field.substr(0, eq);
                const std::string value = field.substr(eq + 1);
                if (key == "m")
                    current.arity = std::stoul(value);
                else if (key == "seed")
                    current.seed = std::stoull(value);
                else if (key != "steps")
                    fail("unknown field '" + key + "'");
            }
            if (current.arity == 0) fail("missing m=");
            open = true;
        } else if (word == "triangular") {
            if (!open) fail("step outside of a recipe");
            std::size_t target;
            if (!(in >> target) || target == 0 || target > current.arity)
                fail("bad triangular target");
            std::string rest;
            std::getline(in, rest);
            const Polynomial shift =
                parse_polynomial(detail::trim(rest), default_variable_names(current.arity));
            current.steps.push_back(TriangularStep{target - 1, shift});
        } else if (word == "affine") {
            if (!open) fail("step outside of a recipe");
            const std::size_t m = current.arity;
            std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m, Rational(0)));
            std::vector<Rational> translation(m, Rational(0));
            std::string tok;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    if (!(in >> tok)) fail("affine line too short");
                    mat[i][j] = Rational::from_string(tok);
                }
            for (std::size_t i = 0; i < m; ++i) {
                if (!(in >> tok)) fail("affine line too short");
                translation[i] = Rational::from_string(tok);
            }
            if (in >> tok) fail("trailing tokens on affine line");
            current.steps.push_back(AffineStep{std::move(mat), std::move(translation)});
        } else if (word == "end") {
            if (!open) fail("'end' without a recipe");
            recipes.push_back(std::move(current));
            current = TameRecipe{0, {}, 0};
            open = false;
        } else if (word == "map:" || word == "inverse:") {
            // Realized pairs emitted next to recipes are informational.
            continue;
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (open) throw std::invalid_argument("recipe text: unterminated recipe");
    return recipes;
}

}  // namespace polyinv

#endif
