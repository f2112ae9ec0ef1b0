#pragma once

#include "derand/harness/report.hpp"
#include "derand/simulator.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace derand::harness {

struct MeasureOptions {
    unsigned budget_bits = 24;     ///< enumerate every seed when s <= budget_bits
    std::uint64_t samples = 4096;  ///< seeds per (Q, q) otherwise
    double confidence = 0.99;      ///< per (Q, q) confidence of the sampled upper bound
};

/// Worst case over a family of TV(Sim(Q, q, U_s), Q^m(q; U_md)).
struct ErrorMeasurement {
    bool vacuous = true;
    bool exhaustive = true;
    Rational worst;             ///< exact worst TV (exhaustive mode)
    double estimate = 0;        ///< worst empirical TV (sampled mode)
    double upper = 0;           ///< worst Clopper-Pearson upper bound (sampled mode)
    std::size_t worst_index = 0;
    State worst_state = 0;
    std::uint64_t evaluations = 0;

    /// Exhaustive: worst <= bound. Sampled: estimate <= bound (upper is reported alongside).
    /// A vacuous measurement never passes.
    Record to_record(std::string check, std::string anchor, const Rational& bound) const;
};

/// Simultaneous Clopper-Pearson interval for one of `k` binomial proportions.
std::pair<double, double> clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence,
                                          std::uint64_t k = 1);

/// Upper bound on TV(p, exact) given per-state counts from `trials` draws of p.
double tv_upper_bound(const std::vector<std::uint64_t>& counts, std::uint64_t trials, const StateDistribution& exact,
                      double confidence);

/// Every automaton in `family` must belong to sim's family; fail-family automata are passed
/// with their fail state as the last state. Start states are 1..w.
ErrorMeasurement measure_error(const Simulator& sim, const std::vector<Automaton>& family, const MeasureOptions& opt,
                               std::mt19937_64& rng);

} // namespace derand::harness
