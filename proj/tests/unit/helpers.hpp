#pragma once

#include "derand/distribution.hpp"
#include "derand/rational.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <string>
#include <vector>

inline derand::Rational Q(const char* text) { return derand::parse_rational(text); }

inline std::vector<derand::Rational> probs(std::initializer_list<const char*> items) {
    std::vector<derand::Rational> out;
    for (const char* s : items)
        out.push_back(Q(s));
    return out;
}

inline oracle::Dist as_dist(const derand::StateDistribution& d) { return d.probabilities(); }

namespace doctest {
template <>
struct StringMaker<derand::Rational> {
    static String convert(const derand::Rational& r) { return derand::to_string(r).c_str(); }
};
} // namespace doctest
