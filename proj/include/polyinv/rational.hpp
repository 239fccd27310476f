#ifndef POLYINV_RATIONAL_HPP
#define POLYINV_RATIONAL_HPP

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace polyinv {

// Exact rational scalar backed by GMP. Always kept canonical:
// gcd(|num|, den) = 1, den > 0, zero is 0/1.
class Rational {
  public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {}

    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }

    Rational(mpz_class num, mpz_class den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        value_ = mpq_class(std::move(num), std::move(den));
        value_.canonicalize();
    }

    explicit Rational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

    static Rational from_string(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
        q.canonicalize();
        return Rational(std::move(q));
    }

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }

    Rational pow(unsigned long e) const {
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), value_.get_num().get_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), value_.get_den().get_mpz_t(), e);
        mpq_class q(std::move(n), std::move(d));   // already canonical: gcd preserved by powering
        return Rational(std::move(q));
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / value_);
    }

    // "p/q", or just "p" when the denominator is 1.
    std::string str() const { return value_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.value_;
    }

  private:
    mpq_class value_;
};

}  // namespace polyinv

#endif
