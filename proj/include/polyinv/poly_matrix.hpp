#ifndef POLYINV_POLY_MATRIX_HPP
#define POLYINV_POLY_MATRIX_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyinv/poly_map.hpp"
#include "polyinv/polynomial.hpp"

namespace polyinv {

// Rectangular matrix with polynomial entries of one common arity.
class PolyMatrix {
  public:
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t arity)
        : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial::zero(arity)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("PolyMatrix: empty shape");
    }

    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("PolyMatrix: empty shape");
        if (entries_.size() != rows * cols)
            throw std::invalid_argument("PolyMatrix: entry count must be rows*cols");
        for (const auto& e : entries_)
            if (e.arity() != entries_.front().arity())
                throw std::invalid_argument("PolyMatrix: entries must share one arity");
    }

    static PolyMatrix identity(std::size_t n, std::size_t arity) {
        PolyMatrix m(n, n, arity);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(arity, Rational(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t arity() const { return entries_.front().arity(); }
    bool is_square() const { return rows_ == cols_; }

    const Polynomial& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
    Polynomial& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  private:
    std::size_t rows_, cols_;
    std::vector<Polynomial> entries_;
};

// Entry (i,j) is dF_i/dX_j.
inline PolyMatrix jacobian(const PolyMap& f) {
    const std::size_t m = f.arity();
    PolyMatrix j(m, m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) j.at(i, k) = f[i].partial_derivative(k);
    return j;
}

namespace detail {

// Quotient of an exact division; used by the fraction-free elimination where
// divisibility is guaranteed.
inline Polynomial exact_div(const Polynomial& p, const Polynomial& d) {
    if (d.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
    Polynomial quotient(p.arity());
    Polynomial rem = p;
    const auto& dl = d.leading_term();
    while (!rem.is_zero()) {
        const auto& rl = rem.leading_term();
        Monomial q(p.arity());
        for (std::size_t k = 0; k < p.arity(); ++k) {
            if (rl.mono.exponents[k] < dl.mono.exponents[k])
                throw std::domain_error("exact_div: division is not exact");
            q.exponents[k] = rl.mono.exponents[k] - dl.mono.exponents[k];
        }
        const Polynomial qt = Polynomial::term(p.arity(), std::move(q), rl.coeff / dl.coeff);
        quotient += qt;
        rem -= qt * d;
    }
    return quotient;
}

inline Polynomial det_cofactor(const PolyMatrix& mx) {
    const std::size_t n = mx.rows();
    if (n == 1) return mx.at(0, 0);
    if (n == 2) return mx.at(0, 0) * mx.at(1, 1) - mx.at(0, 1) * mx.at(1, 0);
    Polynomial det(mx.arity());
    for (std::size_t j = 0; j < n; ++j) {
        if (mx.at(0, j).is_zero()) continue;
        PolyMatrix minor(n - 1, n - 1, mx.arity());
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = mx.at(r, c);
            }
        }
        const Polynomial term = mx.at(0, j) * det_cofactor(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

// Bareiss fraction-free elimination; every division is exact.
inline Polynomial det_bareiss(PolyMatrix mx) {
    const std::size_t n = mx.rows();
    const std::size_t arity = mx.arity();
    Polynomial prev = Polynomial::constant(arity, Rational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (mx.at(k, k).is_zero()) {
            std::size_t pivot = k + 1;
            while (pivot < n && mx.at(pivot, k).is_zero()) ++pivot;
            if (pivot == n) return Polynomial::zero(arity);
            for (std::size_t c = 0; c < n; ++c) std::swap(mx.at(k, c), mx.at(pivot, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                mx.at(i, j) =
                    exact_div(mx.at(k, k) * mx.at(i, j) - mx.at(i, k) * mx.at(k, j), prev);
            mx.at(i, k) = Polynomial::zero(arity);
        }
        prev = mx.at(k, k);
    }
    return negate ? -mx.at(n - 1, n - 1) : mx.at(n - 1, n - 1);
}

}  // namespace detail

// Exact determinant. Cofactor expansion up to 4x4 (the sizes that actually
// occur), fraction-free elimination beyond to contain expression swell.
inline Polynomial determinant(const PolyMatrix& mx) {
    if (!mx.is_square()) throw std::invalid_argument("determinant: matrix is not square");
    if (mx.rows() <= 4) return detail::det_cofactor(mx);
    return detail::det_bareiss(mx);
}

// The value of p as a unit of the coefficient field, if it is one.
// Nonconstant polynomials and zero are not units.
inline std::optional<Rational> constant_unit(const Polynomial& p) {
    if (p.is_zero() || !p.is_constant()) return std::nullopt;
    return p.constant_value();
}

// (1/det_unit) * adjugate; an exact two-sided inverse when the determinant is
// the nonzero constant det_unit. The caller's claim is verified.
inline PolyMatrix adjugate_inverse(const PolyMatrix& mx, const Rational& det_unit) {
    if (!mx.is_square()) throw std::invalid_argument("adjugate_inverse: matrix is not square");
    if (det_unit.is_zero())
        throw std::invalid_argument("adjugate_inverse: the unit must be nonzero");
    if (determinant(mx) != Polynomial::constant(mx.arity(), det_unit))
        throw std::invalid_argument("adjugate_inverse: determinant is not the given constant");

    const std::size_t n = mx.rows();
    const Rational inv = det_unit.inverse();
    PolyMatrix out(n, n, mx.arity());
    if (n == 1) {
        out.at(0, 0) = Polynomial::constant(mx.arity(), inv);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Cofactor C_ji: adjugate is the transposed cofactor matrix.
            PolyMatrix minor(n - 1, n - 1, mx.arity());
            std::size_t rr = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc++) = mx.at(r, c);
                }
                ++rr;
            }
            Polynomial cof = detail::det_cofactor(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            out.at(i, j) = cof * inv;
        }
    }
    return out;
}

inline std::vector<Polynomial> mat_vec_apply(const PolyMatrix& mx,
                                             const std::vector<Polynomial>& v) {
    if (mx.cols() != v.size()) throw std::invalid_argument("mat_vec_apply: shape mismatch");
    std::vector<Polynomial> out;
    out.reserve(mx.rows());
    for (std::size_t i = 0; i < mx.rows(); ++i) {
        Polynomial acc(mx.arity());
        for (std::size_t j = 0; j < mx.cols(); ++j) {
            if (mx.at(i, j).is_zero() || v[j].is_zero()) continue;
            acc += mx.at(i, j) * v[j];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    PolyMatrix out(a.rows(), b.cols(), a.arity());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Polynomial acc(a.arity());
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
            out.at(i, j) = std::move(acc);
        }
    return out;
}

// Every entry composed with the same argument map.
inline PolyMatrix mat_compose(const PolyMatrix& mx, const PolyMap& args) {
    PolyMatrix out(mx.rows(), mx.cols(), args.arity());
    for (std::size_t i = 0; i < mx.rows(); ++i)
        for (std::size_t j = 0; j < mx.cols(); ++j)
            out.at(i, j) = compose(mx.at(i, j), args.components());
    return out;
}

}  // namespace polyinv

#endif
