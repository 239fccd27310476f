#ifndef POLYINV_DERIVATIVE_RECURSION_HPP
#define POLYINV_DERIVATIVE_RECURSION_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "polyinv/poly_map.hpp"
#include "polyinv/poly_matrix.hpp"
#include "polyinv/polynomial.hpp"
#include "polyinv/series.hpp"

namespace polyinv {

namespace detail {

// d/dt of a truncation: one t-order is lost, the top slot is left zero. The
// recursion below never reads a slot whose value would depend on it.
inline TruncSeries series_derivative(const TruncSeries& s) {
    TruncSeries d(s.arity(), s.order());
    for (std::size_t j = 0; j + 1 <= s.order(); ++j)
        d.coeff(j) = s.coeff(j + 1) * Rational(static_cast<long>(j + 1));
    return d;
}

}  // namespace detail

// Two-variable cross-check route for solve_series. Repeated t-derivatives of
// the deformation system give, at each order n,
//
//   D_1 * W_n + sum_{i=2..n} D_i * Z_{i,n}(0) = (n == 1 ? (X-F, Y-G) : 0)
//
// where D_i is the 2x(i+1) matrix of i-th order mixed partials of (F, G) and
// the Z vectors collect products of derivatives of the unknowns via
//
//   Z_{i,n} = U' * (Z_{i-1,n-1} ; 0) + V' * (0 ; Z_{i-1,n-1}) + d/dt Z_{i,n-1},
//
// with Z_{i,n} = 0 for i <= 0 or i >= n+1 and Z_{1,1} = (U', V'). Solving for
// W_n = (U^(n)(0), V^(n)(0)) and dividing by n! yields the order-n
// coefficients. Independent of the truncated-substitution solver by design.
inline SeriesVec derivative_recursion_m2(const PolyMap& f, std::size_t order) {
    if (f.arity() != 2)
        throw std::invalid_argument("derivative_recursion_m2: map must have arity 2");
    const auto unit = constant_unit(determinant(jacobian(f)));
    if (!unit)
        throw std::domain_error(
            "derivative_recursion_m2: Jacobian determinant is not a nonzero constant");

    // partials[c][i][j] = d^i f_c / dX^(i-j) dY^j. Level i extends level i-1
    // by one X-derivative per column plus one Y-derivative for the new column.
    std::vector<std::vector<std::vector<Polynomial>>> partials(2);
    for (std::size_t c = 0; c < 2; ++c) {
        partials[c].push_back({f[c]});
        for (std::size_t i = 1; i <= order; ++i) {
            const auto& prev = partials[c][i - 1];
            std::vector<Polynomial> level;
            level.reserve(i + 1);
            for (const auto& p : prev) level.push_back(p.partial_derivative(0));
            level.push_back(prev.back().partial_derivative(1));
            partials[c].push_back(std::move(level));
        }
    }

    const PolyMatrix d1(2, 2,
                        {partials[0][1][0], partials[0][1][1],
                         partials[1][1][0], partials[1][1][1]});
    const PolyMatrix d1_inv = adjugate_inverse(d1, *unit);

    TruncSeries u = TruncSeries::from_polynomial(Polynomial::variable(2, 0), order);
    TruncSeries v = TruncSeries::from_polynomial(Polynomial::variable(2, 1), order);

    mpz_class factorial(1);
    for (std::size_t n = 1; n <= order; ++n) {
        factorial *= static_cast<unsigned long>(n);
        std::vector<Polynomial> rhs(2, Polynomial::zero(2));
        if (n == 1) {
            rhs[0] = Polynomial::variable(2, 0) - f[0];
            rhs[1] = Polynomial::variable(2, 1) - f[1];
        } else {
            // Z triangle rebuilt from the current partial solution. The t^0
            // entries consumed below only involve coefficients of orders
            // below n, which are already correct.
            const TruncSeries du = detail::series_derivative(u);
            const TruncSeries dv = detail::series_derivative(v);
            // z[k][i] holds the i+1 entries of Z_{i,k}; index i = 0 unused.
            std::vector<std::vector<std::vector<TruncSeries>>> z(n + 1);
            z[1] = {{}, {du, dv}};
            for (std::size_t k = 2; k <= n; ++k) {
                z[k].resize(k + 1);
                z[k][1] = {detail::series_derivative(z[k - 1][1][0]),
                           detail::series_derivative(z[k - 1][1][1])};
                for (std::size_t i = 2; i <= k; ++i) {
                    std::vector<TruncSeries> entries;
                    entries.reserve(i + 1);
                    const auto& lower = z[k - 1][i - 1];  // length i
                    for (std::size_t idx = 0; idx <= i; ++idx) {
                        TruncSeries e(2, order);
                        if (idx < i)
                            e = series_add(e, detail::mul_truncated(du, lower[idx], order));
                        if (idx > 0)
                            e = series_add(e, detail::mul_truncated(dv, lower[idx - 1], order));
                        if (i <= k - 1)
                            e = series_add(e, detail::series_derivative(z[k - 1][i][idx]));
                        entries.push_back(std::move(e));
                    }
                    z[k][i] = std::move(entries);
                }
            }
            for (std::size_t i = 2; i <= n; ++i)
                for (std::size_t c = 0; c < 2; ++c)
                    for (std::size_t j = 0; j <= i; ++j) {
                        const Polynomial& at_zero = z[n][i][j].coeff(0);
                        if (!at_zero.is_zero()) rhs[c] -= partials[c][i][j] * at_zero;
                    }
        }
        const auto w = mat_vec_apply(d1_inv, rhs);
        const Rational scale(mpz_class(1), factorial);  // W_n = n! * (u_n, v_n)
        u.coeff(n) = w[0] * scale;
        v.coeff(n) = w[1] * scale;
    }
    return SeriesVec({std::move(u), std::move(v)});
}

}  // namespace polyinv

#endif
