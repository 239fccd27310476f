#ifndef POLYINV_MONOMIAL_HPP
#define POLYINV_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace polyinv {

// Exponent vector of a power product. Its length is the ambient arity m.
struct Monomial {
    std::vector<std::uint32_t> exponents;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : exponents(arity, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}

    std::size_t arity() const { return exponents.size(); }

    std::uint64_t total_degree() const {
        return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
    }

    bool is_constant() const {
        for (auto e : exponents)
            if (e != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponents == b.exponents;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) {
        return a.exponents != b.exponents;
    }
};

// Graded reverse lexicographic: graded by total degree, ties broken so that
// the monomial whose rightmost differing exponent is smaller is the greater
// one (X^2 > X*Y > Y^2).
inline bool grevlex_less(const Monomial& a, const Monomial& b) {
    const auto da = a.total_degree();
    const auto db = b.total_degree();
    if (da != db) return da < db;
    for (std::size_t i = a.exponents.size(); i-- > 0;) {
        if (a.exponents[i] != b.exponents[i]) return a.exponents[i] > b.exponents[i];
    }
    return false;
}

// Canonical storage and printing position: ascending total degree, grevlex-
// descending inside each degree ("1 + 2*X", "-2*X^2 + 6*X*Y - 9/2*Y^2").
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.total_degree();
        const auto db = b.total_degree();
        if (da != db) return da < db;
        return grevlex_less(b, a);
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto e : m.exponents) {
            h ^= e;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace polyinv

#endif
