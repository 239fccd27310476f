#ifndef POLYINV_POLY_MAP_HPP
#define POLYINV_POLY_MAP_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyinv/polynomial.hpp"

namespace polyinv {

// m-tuple (F_1,...,F_m) of polynomials in m variables; the data of the
// algebra endomorphism X_i -> F_i.
class PolyMap {
  public:
    explicit PolyMap(std::vector<Polynomial> components) : components_(std::move(components)) {
        const std::size_t m = components_.size();
        if (m == 0) throw std::invalid_argument("PolyMap: needs at least one component");
        for (const auto& c : components_)
            if (c.arity() != m)
                throw std::invalid_argument("PolyMap: every component must have arity equal to the component count");
    }

    static PolyMap identity(std::size_t m) {
        std::vector<Polynomial> comps;
        comps.reserve(m);
        for (std::size_t i = 0; i < m; ++i) comps.push_back(Polynomial::variable(m, i));
        return PolyMap(std::move(comps));
    }

    std::size_t arity() const { return components_.size(); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& operator[](std::size_t i) const { return components_.at(i); }

    bool is_identity() const {
        for (std::size_t i = 0; i < arity(); ++i)
            if (components_[i] != Polynomial::variable(arity(), i)) return false;
        return true;
    }

    friend bool operator==(const PolyMap& a, const PolyMap& b) {
        return a.components_ == b.components_;
    }
    friend bool operator!=(const PolyMap& a, const PolyMap& b) { return !(a == b); }

  private:
    std::vector<Polynomial> components_;
};

// max of the component total degrees. Rejects the all-zero map, whose degree
// would be the zero sentinel.
inline std::int64_t map_degree(const PolyMap& f) {
    std::int64_t deg = kDegreeOfZero;
    for (const auto& c : f.components()) deg = std::max(deg, c.total_degree());
    if (deg == kDegreeOfZero) throw std::domain_error("map_degree: all components are zero");
    return deg;
}

// Substitutes inner into every component of outer: result_i = outer_i(inner).
inline PolyMap map_compose(const PolyMap& outer, const PolyMap& inner) {
    if (outer.arity() != inner.arity())
        throw std::invalid_argument("map_compose: arity mismatch");
    PolyComposer composer(inner.components());
    std::vector<Polynomial> comps;
    comps.reserve(outer.arity());
    for (const auto& c : outer.components()) comps.push_back(composer.compose(c));
    return PolyMap(std::move(comps));
}

}  // namespace polyinv

#endif
