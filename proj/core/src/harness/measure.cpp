#include "derand/harness/measure.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <cmath>

namespace derand::harness {

std::pair<double, double> clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence,
                                          std::uint64_t k) {
    using boost::math::binomial_distribution;
    const double alpha = (1 - confidence) / static_cast<double>(k);
    const auto n = static_cast<double>(trials), x = static_cast<double>(successes);
    const double lo = binomial_distribution<>::find_lower_bound_on_p(
        n, x, alpha / 2, binomial_distribution<>::clopper_pearson_exact_interval);
    const double hi = binomial_distribution<>::find_upper_bound_on_p(
        n, x, alpha / 2, binomial_distribution<>::clopper_pearson_exact_interval);
    return {lo, hi};
}

double tv_upper_bound(const std::vector<std::uint64_t>& counts, std::uint64_t trials, const StateDistribution& exact,
                      double confidence) {
    double sum = 0;
    for (State r = 1; r <= counts.size(); ++r) {
        const auto [lo, hi] = clopper_pearson(counts[r - 1], trials, confidence, counts.size());
        const double p = to_double(exact[r]);
        sum += std::max(std::abs(hi - p), std::abs(p - lo));
    }
    return std::min(1.0, sum / 2);
}

Record ErrorMeasurement::to_record(std::string check, std::string anchor, const Rational& bound) const {
    Record r{std::move(check), std::move(anchor), "", to_string(bound), Provenance::vacuous, false, {}};
    if (vacuous) {
        r.measured = "none";
        r.detail("note", "empty family");
        return r;
    }
    if (exhaustive) {
        r.provenance = Provenance::exhaustive;
        r.measured = to_string(worst);
        r.pass = worst <= bound;
    } else {
        r.provenance = Provenance::sampled;
        r.measured = std::to_string(estimate);
        r.pass = estimate <= to_double(bound);
        r.detail("upper", std::to_string(upper));
    }
    r.detail("worst_index", std::to_string(worst_index));
    r.detail("worst_state", std::to_string(worst_state));
    r.detail("evaluations", std::to_string(evaluations));
    return r;
}

ErrorMeasurement measure_error(const Simulator& sim, const std::vector<Automaton>& family, const MeasureOptions& opt,
                               std::mt19937_64& rng) {
    const SimulatorParams& p = sim.params();
    ErrorMeasurement out;
    out.vacuous = family.empty();
    out.exhaustive = p.s <= opt.budget_bits;
    std::uniform_int_distribution<std::uint64_t> seed_dist(0, p.s == 0 ? 0 : (std::uint64_t{1} << p.s) - 1);
    bool first = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const Automaton& a = family[i];
        sim.check_automaton(a);
        const auto bound = sim.bind(a);
        for (State q = 1; q <= p.w; ++q) {
            const StateDistribution exact = exact_distribution(a, q, p.m);
            bool worse = false;
            if (out.exhaustive) {
                const Rational tv = tv_distance(simulated_distribution(*bound, q), exact);
                out.evaluations += std::uint64_t{1} << p.s;
                worse = first || tv > out.worst;
                if (worse)
                    out.worst = tv;
            } else {
                std::vector<std::uint64_t> counts(a.states(), 0);
                for (std::uint64_t k = 0; k < opt.samples; ++k)
                    ++counts[bound->evaluate(q, seed_dist(rng)) - 1];
                out.evaluations += opt.samples;
                const double est = to_double(tv_distance(StateDistribution::from_counts(counts), exact));
                out.upper = std::max(out.upper, tv_upper_bound(counts, opt.samples, exact, opt.confidence));
                worse = first || est > out.estimate;
                if (worse)
                    out.estimate = est;
            }
            if (worse) {
                out.worst_index = i;
                out.worst_state = q;
            }
            first = false;
        }
    }
    return out;
}

} // namespace derand::harness
