#ifndef POLYINV_POLYNOMIAL_HPP
#define POLYINV_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polyinv/monomial.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

// Degree of the zero polynomial. Kept distinct from 0, the degree of nonzero
// constants, so degenerate maps are rejected explicitly.
inline constexpr std::int64_t kDegreeOfZero = -1;

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Terms are stored grevlex-descending with nonzero coefficients and distinct
// monomials; every operation returns a value in that canonical form.
class Polynomial {
  public:
    struct Term {
        Monomial mono;
        Rational coeff;

        friend bool operator==(const Term& a, const Term& b) {
            return a.mono == b.mono && a.coeff == b.coeff;
        }
    };

    explicit Polynomial(std::size_t arity) : arity_(arity) {}

    static Polynomial zero(std::size_t arity) { return Polynomial(arity); }

    static Polynomial constant(std::size_t arity, Rational c) {
        Polynomial p(arity);
        if (!c.is_zero()) p.terms_.push_back({Monomial(arity), std::move(c)});
        return p;
    }

    static Polynomial variable(std::size_t arity, std::size_t index) {
        if (index >= arity) throw std::out_of_range("Polynomial::variable: index out of range");
        Monomial m(arity);
        m.exponents[index] = 1;
        Polynomial p(arity);
        p.terms_.push_back({std::move(m), Rational(1)});
        return p;
    }

    static Polynomial term(std::size_t arity, Monomial m, Rational c) {
        if (m.arity() != arity) throw std::invalid_argument("Polynomial::term: monomial arity mismatch");
        Polynomial p(arity);
        if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    // Normalizing factory: merges duplicates, drops zeros, sorts.
    static Polynomial from_terms(std::size_t arity, const std::vector<Term>& raw) {
        std::map<Monomial, Rational, TermOrder> acc;
        for (const auto& t : raw) {
            if (t.mono.arity() != arity)
                throw std::invalid_argument("Polynomial::from_terms: monomial arity mismatch");
            acc[t.mono] += t.coeff;
        }
        return collect(arity, acc);
    }

    std::size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_constant());
    }

    // Value as a constant; zero polynomial gives 0. Caller checks is_constant().
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("Polynomial::constant_value: not a constant");
        return terms_.front().coeff;
    }

    // Grevlex-greatest term: the first entry of the top degree block.
    const Term& leading_term() const {
        if (terms_.empty()) throw std::logic_error("Polynomial::leading_term: zero polynomial");
        const auto top = terms_.back().mono.total_degree();
        std::size_t i = terms_.size() - 1;
        while (i > 0 && terms_[i - 1].mono.total_degree() == top) --i;
        return terms_[i];
    }

    std::int64_t total_degree() const {
        if (terms_.empty()) return kDegreeOfZero;
        return static_cast<std::int64_t>(terms_.back().mono.total_degree());
    }

    Rational coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return Rational(0);
    }

    Polynomial operator-() const {
        Polynomial r(arity_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_same_arity(b, "+");
        Polynomial r(a.arity_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        const TermOrder before;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const auto& ta = a.terms_[i];
            const auto& tb = b.terms_[j];
            if (ta.mono == tb.mono) {
                Rational c = ta.coeff + tb.coeff;
                if (!c.is_zero()) r.terms_.push_back({ta.mono, std::move(c)});
                ++i, ++j;
            } else if (before(ta.mono, tb.mono)) {
                r.terms_.push_back(ta);
                ++i;
            } else {
                r.terms_.push_back(tb);
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_arity(b, "*");
        if (a.is_zero() || b.is_zero()) return Polynomial(a.arity_);
        // Shifting every exponent by the same vector preserves the term
        // order, so a single-term factor needs no re-normalization.
        if (a.terms_.size() == 1) return scaled_shift(b, a.terms_.front());
        if (b.terms_.size() == 1) return scaled_shift(a, b.terms_.front());

        std::unordered_map<Monomial, Rational, MonomialHash> acc;
        acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), std::size_t{1} << 16));
        Monomial m(a.arity_);
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                for (std::size_t k = 0; k < a.arity_; ++k)
                    m.exponents[k] = ta.mono.exponents[k] + tb.mono.exponents[k];
                acc[m] += ta.coeff * tb.coeff;
            }
        }
        Polynomial r(a.arity_);
        r.terms_.reserve(acc.size());
        for (auto& [mono, coeff] : acc)
            if (!coeff.is_zero()) r.terms_.push_back({mono, std::move(coeff)});
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) {
            return TermOrder{}(x.mono, y.mono);
        });
        return r;
    }

    friend Polynomial operator*(const Polynomial& p, const Rational& c) {
        if (c.is_zero()) return Polynomial(p.arity_);
        Polynomial r(p.arity_);
        r.terms_.reserve(p.terms_.size());
        for (const auto& t : p.terms_) r.terms_.push_back({t.mono, t.coeff * c});
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(std::uint64_t e) const {
        Polynomial result = constant(arity_, Rational(1));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    Polynomial partial_derivative(std::size_t var) const {
        if (var >= arity_) throw std::out_of_range("partial_derivative: variable index out of range");
        Polynomial r(arity_);
        for (const auto& t : terms_) {
            const std::uint32_t e = t.mono.exponents[var];
            if (e == 0) continue;
            Monomial m = t.mono;
            m.exponents[var] = e - 1;
            r.terms_.push_back({std::move(m), t.coeff * Rational(static_cast<long>(e))});
        }
        // Surviving terms all lose exactly one degree and their pairwise
        // difference vectors are unchanged, so grevlex order is preserved.
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != arity_)
            throw std::invalid_argument("evaluate: point length must equal arity");
        Rational total(0);
        for (const auto& t : terms_) {
            Rational v = t.coeff;
            for (std::size_t j = 0; j < arity_; ++j) {
                const auto e = t.mono.exponents[j];
                if (e != 0) v *= point[j].pow(e);
            }
            total += v;
        }
        return total;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Canonical-form check, used by the normalization property tests.
    bool is_canonical() const {
        const TermOrder before;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].mono.arity() != arity_) return false;
            if (terms_[i].coeff.is_zero()) return false;
            if (i > 0 && !before(terms_[i - 1].mono, terms_[i].mono)) return false;
        }
        return true;
    }

  private:
    static Polynomial collect(std::size_t arity,
                              const std::map<Monomial, Rational, TermOrder>& acc) {
        Polynomial r(arity);
        r.terms_.reserve(acc.size());
        for (const auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }

    static Polynomial scaled_shift(const Polynomial& p, const Term& by) {
        Polynomial r(p.arity_);
        r.terms_.reserve(p.terms_.size());
        for (const auto& t : p.terms_) {
            Monomial m(p.arity_);
            for (std::size_t k = 0; k < p.arity_; ++k)
                m.exponents[k] = t.mono.exponents[k] + by.mono.exponents[k];
            r.terms_.push_back({std::move(m), t.coeff * by.coeff});
        }
        return r;
    }

    void check_same_arity(const Polynomial& o, const char* op) const {
        if (arity_ != o.arity_)
            throw std::invalid_argument(std::string("Polynomial: arity mismatch in operator") + op);
    }

    std::size_t arity_;
    std::vector<Term> terms_;
};

// Substitutes a fixed argument tuple into polynomials, memoizing powers of
// each argument. Composition dominates the runtime of everything built on
// top, so one composer should serve every polynomial sharing the same
// arguments.
class PolyComposer {
  public:
    explicit PolyComposer(std::vector<Polynomial> args) : args_(std::move(args)) {
        if (args_.empty()) throw std::invalid_argument("PolyComposer: needs at least one argument");
        out_arity_ = args_.front().arity();
        for (const auto& a : args_)
            if (a.arity() != out_arity_)
                throw std::invalid_argument("PolyComposer: arguments must share a common arity");
        powers_.resize(args_.size());
    }

    Polynomial compose(const Polynomial& f) {
        if (f.arity() != args_.size())
            throw std::invalid_argument("compose: argument count must equal arity of f");
        Polynomial result(out_arity_);
        for (const auto& t : f.terms()) {
            Polynomial prod = Polynomial::constant(out_arity_, t.coeff);
            for (std::size_t j = 0; j < args_.size(); ++j) {
                const auto e = t.mono.exponents[j];
                if (e != 0) prod *= arg_power(j, e);
            }
            result += prod;
        }
        return result;
    }

  private:
    const Polynomial& arg_power(std::size_t j, std::uint32_t e) {
        auto& tab = powers_[j];
        if (tab.empty()) tab.push_back(Polynomial::constant(out_arity_, Rational(1)));
        while (tab.size() <= e) tab.push_back(tab.back() * args_[j]);
        return tab[e];
    }

    std::vector<Polynomial> args_;
    std::size_t out_arity_;
    std::vector<std::vector<Polynomial>> powers_;
};

// f with X_i substituted by args[i]; the result lives in the args' ring.
inline Polynomial compose(const Polynomial& f, const std::vector<Polynomial>& args) {
    return PolyComposer(args).compose(f);
}

}  // namespace polyinv

#endif
