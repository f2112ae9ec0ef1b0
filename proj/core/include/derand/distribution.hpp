#pragma once

#include "derand/automaton.hpp"
#include "derand/rational.hpp"

#include <cstdint>
#include <vector>

namespace derand {

/// Exact probability vector over states 1..n. Entries are nonnegative and sum to 1.
class StateDistribution {
public:
    explicit StateDistribution(std::vector<Rational> p);
    /// Point mass on state q.
    static StateDistribution point(std::uint32_t n, State q);
    /// counts[r-1] / total for r in 1..n; the counts must sum to total.
    static StateDistribution from_counts(const std::vector<std::uint64_t>& counts);
    static StateDistribution from_counts(const std::vector<Integer>& counts);

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(p_.size()); }
    const Rational& operator[](State q) const { return p_[q - 1]; }
    const std::vector<Rational>& probabilities() const noexcept { return p_; }

    friend bool operator==(const StateDistribution&, const StateDistribution&) = default;

private:
    std::vector<Rational> p_;
};

/// Number of inputs in {0,1}^{m d} that drive q to each state (index r-1).
/// Requires m*d <= 63.
std::vector<std::uint64_t> reach_counts(const Automaton& a, State q, std::uint64_t m);
/// As reach_counts without the 63-bit limit.
std::vector<Integer> reach_counts_big(const Automaton& a, State q, std::uint64_t m);

/// Distribution of Q^m(q; U_{md}).
StateDistribution exact_distribution(const Automaton& a, State q, std::uint64_t m);
inline StateDistribution exact_distribution(const FailAutomaton& a, State q, std::uint64_t m) {
    return exact_distribution(a.automaton(), q, m);
}

/// Half the L1 distance.
Rational tv_distance(const StateDistribution& a, const StateDistribution& b);

/// Projects a distribution over [w+1] onto [w'] by keeping the first w' states and
/// moving the remaining mass onto `sink`.
StateDistribution collapse(const StateDistribution& d, std::uint32_t keep, State sink);

} // namespace derand
