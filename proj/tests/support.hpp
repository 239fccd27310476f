#ifndef POLYINV_TESTS_SUPPORT_HPP
#define POLYINV_TESTS_SUPPORT_HPP

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyinv/polynomial.hpp"
#include "polyinv/text.hpp"

namespace testsupport {

using polyinv::Monomial;
using polyinv::Polynomial;
using polyinv::Rational;

// Shorthand: parse with the default variable names for the given arity.
inline Polynomial poly(const std::string& text, std::size_t arity = 2) {
    return polyinv::parse_polynomial(text, polyinv::default_variable_names(arity));
}

inline polyinv::PolyMap map_of(const std::string& text) {
    return polyinv::parse_map_text(text).map;
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline Rational random_coeff(std::mt19937_64& rng, long bound = 9) {
    const long num = static_cast<long>(draw(rng, 2 * bound + 1)) - bound;
    const long den = 1 + static_cast<long>(draw(rng, bound));
    return Rational(num == 0 ? 1 : num, den);
}

inline Polynomial random_poly(std::mt19937_64& rng, std::size_t arity, std::size_t max_terms,
                              std::uint32_t max_degree) {
    std::vector<Polynomial::Term> terms;
    const std::size_t n = 1 + draw(rng, max_terms);
    for (std::size_t i = 0; i < n; ++i) {
        Monomial m(arity);
        const std::uint32_t degree = static_cast<std::uint32_t>(draw(rng, max_degree + 1));
        for (std::uint32_t d = 0; d < degree; ++d)
            ++m.exponents[draw(rng, arity)];
        terms.push_back({std::move(m), random_coeff(rng)});
    }
    return Polynomial::from_terms(arity, terms);
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t arity, long bound = 20) {
    std::vector<Rational> point;
    point.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) point.push_back(random_coeff(rng, bound));
    return point;
}

struct CliResult {
    int exit_code;
    std::string output;
};

// Runs the built CLI binary, capturing stdout (stderr folded in).
inline CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(POLYINV_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string output;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

inline std::string write_temp_file(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/polyinv_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace testsupport

#endif
