#ifndef POLYINV_SERIES_HPP
#define POLYINV_SERIES_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyinv/poly_map.hpp"
#include "polyinv/polynomial.hpp"

namespace polyinv {

// Power series in t with polynomial coefficients, kept modulo t^(order+1).
// Dense in t (orders are consumed contiguously by the solver), sparse in the
// polynomial direction.
class TruncSeries {
  public:
    TruncSeries(std::size_t arity, std::size_t order)
        : arity_(arity), coeffs_(order + 1, Polynomial::zero(arity)) {}

    explicit TruncSeries(std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("TruncSeries: needs at least the t^0 coefficient");
        arity_ = coeffs_.front().arity();
        for (const auto& c : coeffs_)
            if (c.arity() != arity_)
                throw std::invalid_argument("TruncSeries: all coefficients must share one arity");
    }

    // p embedded as a t^0-only series.
    static TruncSeries from_polynomial(const Polynomial& p, std::size_t order) {
        TruncSeries s(p.arity(), order);
        s.coeffs_[0] = p;
        return s;
    }

    std::size_t arity() const { return arity_; }
    std::size_t order() const { return coeffs_.size() - 1; }

    const Polynomial& coeff(std::size_t j) const { return coeffs_.at(j); }
    Polynomial& coeff(std::size_t j) { return coeffs_.at(j); }
    const std::vector<Polynomial>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    TruncSeries truncated(std::size_t new_order) const {
        if (new_order > order())
            throw std::invalid_argument("TruncSeries::truncated: cannot extend a truncation");
        return TruncSeries(std::vector<Polynomial>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
    }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.arity_ == b.arity_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  private:
    std::size_t arity_;
    std::vector<Polynomial> coeffs_;
};

inline TruncSeries series_add(const TruncSeries& s, const TruncSeries& r) {
    if (s.order() != r.order()) throw std::invalid_argument("series_add: order mismatch");
    if (s.arity() != r.arity()) throw std::invalid_argument("series_add: arity mismatch");
    TruncSeries out = s;
    for (std::size_t j = 0; j <= s.order(); ++j)
        if (!r.coeff(j).is_zero()) out.coeff(j) += r.coeff(j);
    return out;
}

inline TruncSeries series_sub(const TruncSeries& s, const TruncSeries& r) {
    return series_add(s, -r);
}

namespace detail {

// Cauchy product truncated at `order`; reads at most the first order+1
// coefficients of each factor, so the factors may be longer.
inline TruncSeries mul_truncated(const TruncSeries& a, const TruncSeries& b, std::size_t order) {
    TruncSeries out(a.arity(), order);
    for (std::size_t i = 0; i <= order && i <= a.order(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        const std::size_t jmax = std::min(order - i, b.order());
        for (std::size_t j = 0; j <= jmax; ++j) {
            if (b.coeff(j).is_zero()) continue;
            out.coeff(i + j) += a.coeff(i) * b.coeff(j);
        }
    }
    return out;
}

}  // namespace detail

inline TruncSeries series_mul(const TruncSeries& s, const TruncSeries& r) {
    if (s.order() != r.order()) throw std::invalid_argument("series_mul: order mismatch");
    if (s.arity() != r.arity()) throw std::invalid_argument("series_mul: arity mismatch");
    return detail::mul_truncated(s, r, s.order());
}

// m-tuple of series of equal order whose coefficients live in m variables.
class SeriesVec {
  public:
    explicit SeriesVec(std::vector<TruncSeries> components) : components_(std::move(components)) {
        if (components_.empty()) throw std::invalid_argument("SeriesVec: needs at least one component");
        const std::size_t m = components_.size();
        for (const auto& s : components_) {
            if (s.arity() != m)
                throw std::invalid_argument("SeriesVec: coefficient arity must equal component count");
            if (s.order() != components_.front().order())
                throw std::invalid_argument("SeriesVec: components must share one order");
        }
    }

    // S_i = X_i + 0*t + ... : the series starting at the identity map.
    static SeriesVec identity(std::size_t m, std::size_t order) {
        std::vector<TruncSeries> comps;
        comps.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
            comps.push_back(TruncSeries::from_polynomial(Polynomial::variable(m, i), order));
        return SeriesVec(std::move(comps));
    }

    static SeriesVec from_map(const PolyMap& p, std::size_t order) {
        std::vector<TruncSeries> comps;
        comps.reserve(p.arity());
        for (const auto& c : p.components()) comps.push_back(TruncSeries::from_polynomial(c, order));
        return SeriesVec(std::move(comps));
    }

    std::size_t arity() const { return components_.size(); }
    std::size_t order() const { return components_.front().order(); }
    const TruncSeries& operator[](std::size_t i) const { return components_.at(i); }
    TruncSeries& operator[](std::size_t i) { return components_.at(i); }
    const std::vector<TruncSeries>& components() const { return components_; }

    SeriesVec truncated(std::size_t new_order) const {
        std::vector<TruncSeries> comps;
        comps.reserve(components_.size());
        for (const auto& s : components_) comps.push_back(s.truncated(new_order));
        return SeriesVec(std::move(comps));
    }

    friend bool operator==(const SeriesVec& a, const SeriesVec& b) {
        return a.components_ == b.components_;
    }
    friend bool operator!=(const SeriesVec& a, const SeriesVec& b) { return !(a == b); }

  private:
    std::vector<TruncSeries> components_;
};

// Substitutes the series tuple into polynomials, memoizing truncated powers of
// each component. One composer instance should serve a whole map so the power
// tables are shared; this is the inner loop of the solver.
class SeriesComposer {
  public:
    // `order` may be below S.order() to compose against a prefix of S without
    // copying it.
    SeriesComposer(const SeriesVec& s, std::size_t order)
        : s_(s), order_(order), powers_(s.arity()) {
        if (order > s.order())
            throw std::invalid_argument("SeriesComposer: order exceeds the series order");
    }
    explicit SeriesComposer(const SeriesVec& s) : SeriesComposer(s, s.order()) {}

    TruncSeries compose(const Polynomial& f) {
        if (f.arity() != s_.arity())
            throw std::invalid_argument("compose_poly_series: arity mismatch");
        TruncSeries result(s_.arity(), order_);
        for (const auto& t : f.terms()) {
            TruncSeries prod =
                TruncSeries::from_polynomial(Polynomial::constant(s_.arity(), t.coeff), order_);
            for (std::size_t j = 0; j < s_.arity(); ++j) {
                const auto e = t.mono.exponents[j];
                if (e != 0) prod = detail::mul_truncated(prod, power(j, e), order_);
            }
            result = series_add(result, prod);
        }
        return result;
    }

  private:
    const TruncSeries& power(std::size_t j, std::uint32_t e) {
        auto& tab = powers_[j];
        if (tab.empty())
            tab.push_back(TruncSeries::from_polynomial(
                Polynomial::constant(s_.arity(), Rational(1)), order_));
        while (tab.size() <= e) tab.push_back(detail::mul_truncated(tab.back(), s_[j], order_));
        return tab[e];
    }

    const SeriesVec& s_;
    std::size_t order_;
    std::vector<std::vector<TruncSeries>> powers_;
};

inline TruncSeries compose_poly_series(const Polynomial& f, const SeriesVec& s) {
    return SeriesComposer(s).compose(f);
}

inline std::vector<TruncSeries> compose_map_series(const PolyMap& f, const SeriesVec& s,
                                                   std::size_t order) {
    SeriesComposer composer(s, order);
    std::vector<TruncSeries> out;
    out.reserve(f.arity());
    for (const auto& c : f.components()) out.push_back(composer.compose(c));
    return out;
}

// Sum of all t-coefficients: the series evaluated at t = 1.
inline Polynomial eval_at_one(const TruncSeries& s) {
    Polynomial sum = Polynomial::zero(s.arity());
    for (const auto& c : s.coeffs()) sum += c;
    return sum;
}

}  // namespace polyinv

#endif
