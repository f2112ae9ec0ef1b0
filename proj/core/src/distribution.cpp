#include "derand/distribution.hpp"

#include "derand/error.hpp"

#include <string>

namespace derand {

StateDistribution::StateDistribution(std::vector<Rational> p) : p_(std::move(p)) {
    if (p_.empty())
        throw Error("distribution", "empty support");
    Rational sum = 0;
    for (const Rational& v : p_) {
        if (sgn(v) < 0)
            throw Error("distribution", "negative probability");
        sum += v;
    }
    if (sum != 1)
        throw Error("distribution", "probabilities sum to " + to_string(sum));
}

StateDistribution StateDistribution::point(std::uint32_t n, State q) {
    if (q < 1 || q > n)
        throw Error("distribution", "state out of range");
    std::vector<Rational> p(n, Rational(0));
    p[q - 1] = 1;
    return StateDistribution(std::move(p));
}

StateDistribution StateDistribution::from_counts(const std::vector<std::uint64_t>& counts) {
    std::vector<Integer> big;
    big.reserve(counts.size());
    for (std::uint64_t c : counts)
        big.push_back(to_integer(c));
    return from_counts(big);
}

StateDistribution StateDistribution::from_counts(const std::vector<Integer>& counts) {
    Integer total = 0;
    for (const Integer& c : counts)
        total += c;
    if (total == 0)
        throw Error("distribution", "counts sum to zero");
    std::vector<Rational> p;
    p.reserve(counts.size());
    for (const Integer& c : counts) {
        Rational v(c, total);
        v.canonicalize();
        p.push_back(v);
    }
    return StateDistribution(std::move(p));
}

std::vector<std::uint64_t> reach_counts(const Automaton& a, State q, std::uint64_t m) {
    if (!a.valid_state(q))
        throw Error("exact_distribution", "start state " + std::to_string(q) + " out of range");
    if (m * a.bits() > 63)
        throw BudgetExceeded("reach_counts", "m*d exceeds 63 bits");
    std::vector<std::uint64_t> cur(a.states(), 0), next(a.states());
    cur[q - 1] = 1;
    for (std::uint64_t step = 0; step < m; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (State p = 1; p <= a.states(); ++p) {
            const std::uint64_t weight = cur[p - 1];
            if (weight == 0)
                continue;
            for (State r : a.row(p))
                next[r - 1] += weight;
        }
        cur.swap(next);
    }
    return cur;
}

std::vector<Integer> reach_counts_big(const Automaton& a, State q, std::uint64_t m) {
    if (!a.valid_state(q))
        throw Error("exact_distribution", "start state " + std::to_string(q) + " out of range");
    // Per-state transition multiplicities, so each step costs w^2 bignum products.
    const std::uint32_t w = a.states();
    std::vector<std::uint64_t> mult(static_cast<std::size_t>(w) * w, 0);
    for (State p = 1; p <= w; ++p)
        for (State r : a.row(p))
            ++mult[(p - 1) * w + (r - 1)];
    std::vector<Integer> cur(w, Integer(0)), next(w);
    cur[q - 1] = 1;
    for (std::uint64_t step = 0; step < m; ++step) {
        std::fill(next.begin(), next.end(), Integer(0));
        for (State p = 1; p <= w; ++p) {
            if (cur[p - 1] == 0)
                continue;
            for (State r = 1; r <= w; ++r)
                if (const std::uint64_t k = mult[(p - 1) * w + (r - 1)])
                    next[r - 1] += cur[p - 1] * to_integer(k);
        }
        cur.swap(next);
    }
    return cur;
}

StateDistribution exact_distribution(const Automaton& a, State q, std::uint64_t m) {
    if (m * a.bits() <= 63)
        return StateDistribution::from_counts(reach_counts(a, q, m));
    return StateDistribution::from_counts(reach_counts_big(a, q, m));
}

Rational tv_distance(const StateDistribution& a, const StateDistribution& b) {
    if (a.size() != b.size())
        throw Error("tv_distance", "supports differ in size");
    Rational sum = 0;
    for (State q = 1; q <= a.size(); ++q)
        sum += abs(a[q] - b[q]);
    return sum / 2;
}

StateDistribution collapse(const StateDistribution& d, std::uint32_t keep, State sink) {
    if (keep == 0 || keep > d.size() || sink < 1 || sink > keep)
        throw Error("collapse", "invalid projection");
    std::vector<Rational> p(keep, Rational(0));
    for (State q = 1; q <= d.size(); ++q)
        p[(q <= keep ? q : sink) - 1] += d[q];
    return StateDistribution(std::move(p));
}

} // namespace derand
