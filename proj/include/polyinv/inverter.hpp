#ifndef POLYINV_INVERTER_HPP
#define POLYINV_INVERTER_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "polyinv/poly_map.hpp"
#include "polyinv/poly_matrix.hpp"
#include "polyinv/polynomial.hpp"
#include "polyinv/series.hpp"

namespace polyinv {

// n^(m-1) for a degree-n map in m variables: the bound on the degree of the
// inverse of an automorphism, hence on how far the series must be solved.
// Saturates instead of overflowing; a saturated value always exceeds any cap.
inline std::uint64_t degree_bound(const PolyMap& f) {
    const std::int64_t deg = map_degree(f);
    if (deg < 1) throw std::domain_error("degree_bound: map degree must be at least 1");
    const auto n = static_cast<std::uint64_t>(deg);
    constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t bound = 1;
    for (std::size_t i = 1; i < f.arity(); ++i) {
        if (bound > kSat / n) return kSat;
        bound *= n;
    }
    return bound;
}

// Incremental solver for F_i(S(t)) = t*X_i + (1-t)*F_i(init) mod t^(N+1) with
// S(0) = init. Order n is obtained by matching the t^n coefficient: the new
// unknowns enter linearly through the Jacobian evaluated at init, everything
// else is determined by lower orders, so each step is one linear solve
// against the same precomputed adjugate inverse.
//
// Powers of the solution components and the per-term power products are
// memoized across orders. A step first extends every table by its t^n
// coefficient against the series solved so far (whose own t^n coefficient is
// still zero), reads off the residual, solves, and then corrects the new
// table entries for the freshly found coefficient: adding u*t^n to S changes
// [t^n] S^k by exactly k*s0^(k-1)*u, every other materialized coefficient is
// unaffected, and cross terms land beyond t^n.
class SeriesSolver {
  private:
    struct TermProduct {
        std::size_t component;
        Rational coeff;
        std::vector<std::pair<std::size_t, std::uint32_t>> factors;  // (variable, exponent > 0)
        std::vector<Polynomial> product;  // coefficients of the power product; only for >= 2 factors
        std::vector<Polynomial> fixups;   // per factor: constant part of d(product)/du_j
    };

  public:
    SeriesSolver(const PolyMap& f, std::size_t capacity,
                 std::optional<PolyMap> init = std::nullopt)
        : map_(f), work_(SeriesVec::identity(f.arity(), capacity)) {
        const std::size_t m = f.arity();
        const PolyMap start = init ? std::move(*init) : PolyMap::identity(m);
        if (start.arity() != m)
            throw std::invalid_argument("SeriesSolver: initial condition arity mismatch");

        const PolyMatrix jac = jacobian(f);
        const auto unit = constant_unit(determinant(jac));
        if (!unit)
            throw std::domain_error(
                "solve_series: Jacobian determinant is not a nonzero constant");

        const bool trivial_start = start.is_identity();
        const PolyMatrix d1 = trivial_start ? jac : mat_compose(jac, start);
        inverse_jacobian_ = adjugate_inverse(d1, *unit);

        const PolyMap f_at_start = trivial_start ? f : map_compose(f, start);
        first_order_rhs_.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            first_order_rhs_.push_back(Polynomial::variable(m, i) - f_at_start[i]);
        if (!trivial_start) work_ = SeriesVec::from_map(start, capacity);
        cand_ = start.components();

        std::vector<std::uint32_t> max_exp(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (const auto& t : f[i].terms())
                for (std::size_t j = 0; j < m; ++j)
                    max_exp[j] = std::max(max_exp[j], t.mono.exponents[j]);

        init_powers_.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            init_powers_[j].push_back(Polynomial::constant(m, Rational(1)));
            for (std::uint32_t k = 1; k <= max_exp[j]; ++k)
                init_powers_[j].push_back(init_powers_[j].back() * start[j]);
        }

        powers_.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            powers_[j].resize(max_exp[j] + 1);
            for (std::uint32_t k = 2; k <= max_exp[j]; ++k)
                powers_[j][k].push_back(init_powers_[j][k]);
        }

        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& t : f[i].terms()) {
                if (t.mono.is_constant()) continue;  // no t^n contribution for n >= 1
                TermProduct tp;
                tp.component = i;
                tp.coeff = t.coeff;
                for (std::size_t j = 0; j < m; ++j)
                    if (t.mono.exponents[j] != 0) tp.factors.push_back({j, t.mono.exponents[j]});
                if (tp.factors.size() >= 2) {
                    Polynomial at_zero = Polynomial::constant(m, Rational(1));
                    for (const auto& [j, e] : tp.factors) at_zero *= init_powers_[j][e];
                    tp.product.push_back(std::move(at_zero));
                    for (std::size_t fi = 0; fi < tp.factors.size(); ++fi) {
                        const auto [j, e] = tp.factors[fi];
                        Polynomial fix = init_powers_[j][e - 1] * Rational(static_cast<long>(e));
                        for (std::size_t l = 0; l < tp.factors.size(); ++l)
                            if (l != fi) fix *= init_powers_[tp.factors[l].first][tp.factors[l].second];
                        tp.fixups.push_back(std::move(fix));
                    }
                }
                terms_.push_back(std::move(tp));
            }
        }
    }

    std::size_t capacity() const { return work_.order(); }
    std::size_t solved_order() const { return solved_; }

    void extend_to(std::size_t n) {
        if (n > capacity()) throw std::invalid_argument("SeriesSolver: beyond capacity");
        while (solved_ < n) step();
    }

    // The series with exactly the solved orders.
    SeriesVec series() const { return work_.truncated(solved_); }

    // eval_at_one of the solved prefix, maintained incrementally.
    PolyMap candidate() const { return PolyMap(cand_); }

  private:
    // [t^a] of S_j^k for k >= 1.
    const Polynomial& power_coeff(std::size_t j, std::uint32_t k, std::size_t a) const {
        return k == 1 ? work_[j].coeff(a) : powers_[j][k][a];
    }

    // [t^rem] of the product of the factors from fi on.
    Polynomial tail_coeff(const TermProduct& tp, std::size_t fi, std::size_t rem) const {
        const auto [j, e] = tp.factors[fi];
        if (fi + 1 == tp.factors.size()) return power_coeff(j, e, rem);
        Polynomial acc(map_.arity());
        for (std::size_t a = 0; a <= rem; ++a) {
            const Polynomial& head = power_coeff(j, e, a);
            if (head.is_zero()) continue;
            const Polynomial rest = tail_coeff(tp, fi + 1, rem - a);
            if (!rest.is_zero()) acc += head * rest;
        }
        return acc;
    }

    void step() {
        const std::size_t n = solved_ + 1;
        const std::size_t m = map_.arity();

        // Extend the power tables by one order against S solved so far
        // ([t^n] of S itself is still zero).
        for (std::size_t j = 0; j < m; ++j) {
            for (std::uint32_t k = 2; k < powers_[j].size(); ++k) {
                Polynomial c(m);
                for (std::size_t a = 0; a < n; ++a) {  // [t^n] work_ is zero
                    const Polynomial& sj = work_[j].coeff(a);
                    if (sj.is_zero()) continue;
                    const Polynomial& lower = power_coeff(j, k - 1, n - a);
                    if (!lower.is_zero()) c += lower * sj;
                }
                powers_[j][k].push_back(std::move(c));
            }
        }
        for (auto& tp : terms_)
            if (tp.factors.size() >= 2) tp.product.push_back(tail_coeff(tp, 0, n));

        std::vector<Polynomial> rhs;
        rhs.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            rhs.push_back(n == 1 ? first_order_rhs_[i] : Polynomial::zero(m));
        for (const auto& tp : terms_) {
            const Polynomial& c = tp.factors.size() >= 2
                                      ? tp.product.back()
                                      : power_coeff(tp.factors[0].first, tp.factors[0].second, n);
            if (!c.is_zero()) rhs[tp.component] -= c * tp.coeff;
        }

        const auto u = mat_vec_apply(inverse_jacobian_, rhs);

        // Correct every new table entry for the found coefficient.
        for (std::size_t j = 0; j < m; ++j) {
            work_[j].coeff(n) = u[j];
            cand_[j] += u[j];
            if (u[j].is_zero()) continue;
            for (std::uint32_t k = 2; k < powers_[j].size(); ++k)
                powers_[j][k].back() +=
                    init_powers_[j][k - 1] * u[j] * Rational(static_cast<long>(k));
        }
        for (auto& tp : terms_) {
            if (tp.factors.size() < 2) continue;
            for (std::size_t fi = 0; fi < tp.factors.size(); ++fi) {
                const auto& uj = u[tp.factors[fi].first];
                if (!uj.is_zero()) tp.product.back() += tp.fixups[fi] * uj;
            }
        }
        solved_ = n;
    }

    PolyMap map_;
    SeriesVec work_;
    PolyMatrix inverse_jacobian_{1, 1, 1};
    std::vector<Polynomial> first_order_rhs_;
    std::vector<Polynomial> cand_;
    std::vector<std::vector<Polynomial>> init_powers_;          // init_j^k
    std::vector<std::vector<std::vector<Polynomial>>> powers_;  // powers_[j][k]: coeffs of S_j^k, k >= 2
    std::vector<TermProduct> terms_;
    std::size_t solved_ = 0;
};

// The unique truncated solution of the deformation system through `init`
// (identity when omitted).
inline SeriesVec solve_series(const PolyMap& f, std::size_t order,
                              std::optional<PolyMap> init = std::nullopt) {
    SeriesSolver solver(f, order, std::move(init));
    solver.extend_to(order);
    return solver.series();
}

// The candidate inverse: each series component evaluated at t = 1. Meaningful
// for series solved with the identity initial condition.
inline PolyMap candidate_inverse(const SeriesVec& s) {
    std::vector<Polynomial> comps;
    comps.reserve(s.arity());
    for (const auto& c : s.components()) comps.push_back(eval_at_one(c));
    return PolyMap(std::move(comps));
}

// One failed identity of the mutual-composition check.
struct IdentityFailure {
    bool outer_is_map;  // true: F_i(candidate) != X_i, false: candidate_i(F) != X_i
    std::size_t index;  // 0-based component
    Polynomial residual;
};

// Exact check of all 2m identities; reports the first failure.
inline std::optional<IdentityFailure> find_composition_failure(const PolyMap& f,
                                                               const PolyMap& candidate) {
    if (f.arity() != candidate.arity())
        throw std::invalid_argument("verify_mutual_inverse: arity mismatch");
    const std::size_t m = f.arity();
    {
        PolyComposer inner(candidate.components());
        for (std::size_t i = 0; i < m; ++i) {
            Polynomial r = inner.compose(f[i]) - Polynomial::variable(m, i);
            if (!r.is_zero()) return IdentityFailure{true, i, std::move(r)};
        }
    }
    {
        PolyComposer inner(f.components());
        for (std::size_t i = 0; i < m; ++i) {
            Polynomial r = inner.compose(candidate[i]) - Polynomial::variable(m, i);
            if (!r.is_zero()) return IdentityFailure{false, i, std::move(r)};
        }
    }
    return std::nullopt;
}

namespace detail {

inline Rational random_point_coordinate(std::mt19937_64& rng) {
    // Numerator in [-10^6, 10^6], denominator in [1, 10^6].
    const std::int64_t num = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const std::int64_t den = static_cast<std::int64_t>(rng() % 1000000) + 1;
    return Rational(num, den);
}

struct PointRefutation {
    bool outer_is_map;
    std::size_t index;
};

// Evaluates both composition identities at random rational points. A failed
// point proves non-identity; passing points prove nothing.
inline std::optional<PointRefutation> refute_by_sampling(const PolyMap& f,
                                                         const PolyMap& candidate,
                                                         std::mt19937_64& rng,
                                                         int points = 3) {
    const std::size_t m = f.arity();
    for (int trial = 0; trial < points; ++trial) {
        std::vector<Rational> point;
        point.reserve(m);
        for (std::size_t j = 0; j < m; ++j) point.push_back(random_point_coordinate(rng));

        std::vector<Rational> cand_at;
        cand_at.reserve(m);
        for (std::size_t i = 0; i < m; ++i) cand_at.push_back(candidate[i].evaluate(point));
        for (std::size_t i = 0; i < m; ++i)
            if (f[i].evaluate(cand_at) != point[i]) return PointRefutation{true, i};

        std::vector<Rational> f_at;
        f_at.reserve(m);
        for (std::size_t i = 0; i < m; ++i) f_at.push_back(f[i].evaluate(point));
        for (std::size_t i = 0; i < m; ++i)
            if (candidate[i].evaluate(f_at) != point[i]) return PointRefutation{false, i};
    }
    return std::nullopt;
}

inline constexpr std::uint64_t kPrecheckSeed = 0x706f6c79696e76ULL;

}  // namespace detail

// True iff F_i(A) = X_i and A_i(F) = X_i for every i, by exact composition.
// With precheck enabled, a random-point refutation short-circuits the
// negative answer; positive answers always come from exact composition.
inline bool verify_mutual_inverse(const PolyMap& f, const PolyMap& candidate,
                                  bool random_precheck = false) {
    if (f.arity() != candidate.arity())
        throw std::invalid_argument("verify_mutual_inverse: arity mismatch");
    if (random_precheck) {
        std::mt19937_64 rng(detail::kPrecheckSeed);
        if (detail::refute_by_sampling(f, candidate, rng)) return false;
    }
    return !find_composition_failure(f, candidate);
}

struct SolveConfig {
    std::uint64_t max_order = 64;
    bool eager_check = false;
    bool random_precheck = true;
};

struct Invertible {
    PolyMap inverse;
    SeriesVec series;
};

struct NotInvertibleJacobian {
    Polynomial determinant;
};

struct NotInvertibleComposition {
    bool outer_is_map;        // failing identity: F_i(candidate) vs candidate_i(F)
    std::size_t index;        // 0-based component of the failing identity
    Polynomial::Term leading; // leading term of the residual
    std::uint64_t solved_order;
};

struct BoundExceeded {
    std::uint64_t required;
    std::uint64_t cap;
};

using Verdict =
    std::variant<Invertible, NotInvertibleJacobian, NotInvertibleComposition, BoundExceeded>;

namespace detail {

inline NotInvertibleComposition make_composition_verdict(const PolyMap& f, const PolyMap& candidate,
                                                         bool outer_is_map, std::size_t index,
                                                         std::uint64_t solved_order) {
    const std::size_t m = f.arity();
    const Polynomial residual =
        outer_is_map ? compose(f[index], candidate.components()) - Polynomial::variable(m, index)
                     : compose(candidate[index], f.components()) - Polynomial::variable(m, index);
    return NotInvertibleComposition{outer_is_map, index, residual.leading_term(), solved_order};
}

}  // namespace detail

// The decision pipeline: determinant gate, degree bound, series solve,
// reconstruction at t = 1, mutual-composition check.
inline Verdict decide_invertible(const PolyMap& f, const SolveConfig& cfg = {}) {
    if (cfg.max_order < 1) throw std::invalid_argument("decide_invertible: max_order must be >= 1");

    const Polynomial det = determinant(jacobian(f));
    const auto unit = constant_unit(det);
    if (!unit) return NotInvertibleJacobian{det};

    // A unit determinant forces a nonconstant component, so the bound exists.
    const std::uint64_t required = degree_bound(f);
    if (required > cfg.max_order && !cfg.eager_check)
        return BoundExceeded{required, cfg.max_order};
    const auto budget = static_cast<std::size_t>(std::min(required, cfg.max_order));

    std::mt19937_64 rng(detail::kPrecheckSeed);
    SeriesSolver solver(f, budget);

    if (cfg.eager_check) {
        // Check the reconstructed candidate after every order; any candidate
        // that passes the exact check is a genuine inverse, so stopping early
        // never changes the answer, only the cost.
        for (std::size_t n = 1; n <= budget; ++n) {
            solver.extend_to(n);
            PolyMap candidate = solver.candidate();
            if (cfg.random_precheck) {
                if (const auto refuted = detail::refute_by_sampling(f, candidate, rng)) {
                    if (n == budget)
                        return detail::make_composition_verdict(f, candidate, refuted->outer_is_map,
                                                                refuted->index, n);
                    continue;
                }
            }
            const auto failure = find_composition_failure(f, candidate);
            if (!failure) return Invertible{std::move(candidate), solver.series()};
            if (n == budget)
                return NotInvertibleComposition{failure->outer_is_map, failure->index,
                                                failure->residual.leading_term(), n};
        }
    }

    solver.extend_to(budget);
    const SeriesVec series = solver.series();
    PolyMap candidate = candidate_inverse(series);

    if (cfg.random_precheck) {
        if (const auto refuted = detail::refute_by_sampling(f, candidate, rng))
            return detail::make_composition_verdict(f, candidate, refuted->outer_is_map,
                                                    refuted->index, budget);
    }
    if (const auto failure = find_composition_failure(f, candidate))
        return NotInvertibleComposition{failure->outer_is_map, failure->index,
                                        failure->residual.leading_term(), budget};
    return Invertible{std::move(candidate), series};
}

}  // namespace polyinv

#endif
