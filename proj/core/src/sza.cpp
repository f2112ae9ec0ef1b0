#include "derand/sza.hpp"

#include "derand/error.hpp"
#include "derand/snap.hpp"

#include <algorithm>
#include <mutex>

namespace derand {

std::string SZAParams::describe() const {
    return "w=" + std::to_string(w) + " eps=" + to_string(epsilon) + " s=" + std::to_string(s) +
           " m0=" + std::to_string(m0) + " m=" + std::to_string(m) + " Delta=" + std::to_string(Delta) +
           " u=" + std::to_string(u) + " m'=" + std::to_string(m_prime) + " sampler=" + sampler->spec().kind +
           " ell=" + std::to_string(ell) + " d=" + std::to_string(d) + " seed=" + std::to_string(seed_bits());
}

SZASeed SZASeed::split(const SZAParams& p, std::uint64_t seed) {
    const BitString bits = BitString::from_uint(seed, p.seed_bits());
    SZASeed out;
    out.x = bits.slice(0, p.ell);
    for (unsigned i = 0; i < p.u; ++i)
        out.y.push_back(bits.to_uint(p.ell + i * p.Delta, p.Delta));
    out.z = bits.to_uint(p.ell + p.u * p.Delta, p.d);
    return out;
}

std::uint64_t SZASeed::join(const SZAParams& p) const {
    BitString bits = x;
    for (std::uint64_t yi : y)
        bits.append_uint(yi, p.Delta);
    bits.append_uint(z, p.d);
    return bits.to_uint();
}

SZAParams sza_params(std::uint32_t w, const Rational& epsilon, unsigned s, std::uint64_t m0, std::uint64_t m,
                     const std::string& sampler_kind, std::uint64_t max_blocks) {
    if (sgn(epsilon) <= 0 || epsilon >= 1)
        throw Error("sza", "epsilon must lie in (0,1)");
    // Delta is recomputed by the overload below; it fixes delta and gamma for the sampler.
    unsigned Delta = 0;
    while (pow2(Delta) * epsilon < Rational(w) * w)
        ++Delta;
    const Rational delta = pow2(-2 * static_cast<long>(Delta) - 1);
    const Rational gamma = 2 * epsilon / w;
    SamplerHandle sampler;
    if (sampler_kind == "shift")
        sampler = shift_sampler(s, w);
    else if (sampler_kind == "blocks")
        sampler = blocks_sampler(s, delta, gamma, w, max_blocks);
    else
        throw Error("sza", "unknown sampler kind '" + sampler_kind + "'");
    return sza_params(w, epsilon, s, m0, m, std::move(sampler));
}

SZAParams sza_params(std::uint32_t w, const Rational& epsilon, unsigned s, std::uint64_t m0, std::uint64_t m,
                     SamplerHandle sampler) {
    if (w == 0)
        throw Error("sza", "width must be positive");
    if (sgn(epsilon) <= 0 || epsilon >= 1)
        throw Error("sza", "epsilon must lie in (0,1)");
    if (s == 0 || s > m0)
        throw Error("sza", "seed length s=" + std::to_string(s) + " must satisfy 1 <= s <= m0=" + std::to_string(m0));
    if (m == 0)
        throw Error("sza", "m must be positive");
    SZAParams p;
    p.w = w;
    p.epsilon = epsilon;
    p.s = s;
    p.m0 = m0;
    p.m = m;
    while (pow2(p.Delta) * epsilon < Rational(w) * w)
        ++p.Delta;
    if (p.Delta == 0)
        p.Delta = 1;
    if (2 * p.Delta > kMaxDyadicPrecision)
        throw Error("sza", "Delta=" + std::to_string(p.Delta) + " exceeds the supported snap precision");
    p.delta = pow2(-2 * static_cast<long>(p.Delta) - 1);
    p.gamma = 2 * epsilon / w;
    if (m0 == 1 && m > 1)
        throw Error("sza", "m0=1 cannot reach m > 1");
    p.u = 1;
    p.m_prime = m0;
    while (p.m_prime < m) {
        p.m_prime *= m0;
        ++p.u;
    }
    const SamplerSpec& spec = sampler->spec();
    if (spec.s != s)
        throw Error("sza", "sampler outputs " + std::to_string(spec.s) + " bits, simulator seed is " + std::to_string(s));
    if (spec.delta > p.delta || spec.gamma > p.gamma || spec.w < w)
        throw Error("sza", "sampler does not meet (delta, gamma) = (" + to_string(p.delta) + ", " + to_string(p.gamma) + ")");
    p.sampler = std::move(sampler);
    p.ell = spec.ell;
    p.d = std::max(spec.d, p.Delta);
    if (p.d > kMaxTableBits)
        throw BudgetExceeded("sza", "symbol width d=" + std::to_string(p.d) + " too large to tabulate");
    if (p.seed_bits() > kMaxSeedBits)
        throw Error("sza", "seed length " + std::to_string(p.seed_bits()) + " exceeds 62 bits");
    p.claimed_error = 12 * Rational(to_integer(m)) * epsilon;
    p.theorem_regime = s <= m0 && m0 <= w;
    return p;
}

void check_base_simulator(const SZAParams& p, const Simulator& sim) {
    const SimulatorParams& sp = sim.params();
    if (!sp.fail_family || sp.w != p.w || sp.d != p.d || sp.m != p.m0 || sp.s != p.s)
        throw Error("sza", "base simulator (" + sp.describe() + ") does not match w=" + std::to_string(p.w) +
                               " d=" + std::to_string(p.d) + " m0=" + std::to_string(p.m0) + " s=" + std::to_string(p.s) +
                               " with fail state");
}

namespace {

void check_level_automaton(const SZAParams& p, const FailAutomaton& a) {
    if (a.width() != p.w || a.bits() != p.d)
        throw Error("sza", "automaton must be a (w, d)-automaton with fail state, w=" + std::to_string(p.w) +
                               " d=" + std::to_string(p.d));
}

unsigned sampler_shift(const SZAParams& p) { return p.d - p.sampler->spec().d; }

// Sim(Q, q, Samp(x, z)) for each distinct sampler inner seed, row by row.
std::vector<State> pow_hat_core(const SZAParams& p, const BoundSimulator& bound, const BitString& x) {
    const std::uint64_t inner = std::uint64_t{1} << p.sampler->spec().d;
    std::vector<std::uint64_t> seeds(inner);
    for (std::uint64_t zs = 0; zs < inner; ++zs)
        seeds[zs] = p.sampler->sample(x, zs);
    std::vector<State> out(static_cast<std::size_t>(p.w) * inner);
    for (State q = 1; q <= p.w; ++q)
        for (std::uint64_t zs = 0; zs < inner; ++zs)
            out[(q - 1) * inner + zs] = bound.evaluate(q, seeds[zs]);
    return out;
}

SubstochasticMatrix pow_hat_matrix_bound(const SZAParams& p, const BoundSimulator& bound, const BitString& x) {
    const auto core = pow_hat_core(p, bound, x);
    const std::uint64_t inner = std::uint64_t{1} << p.sampler->spec().d;
    const std::uint64_t weight = std::uint64_t{1} << sampler_shift(p);
    std::vector<std::uint64_t> num(static_cast<std::size_t>(p.w) * p.w, 0);
    for (State q = 1; q <= p.w; ++q)
        for (std::uint64_t zs = 0; zs < inner; ++zs)
            if (const State r = core[(q - 1) * inner + zs]; r <= p.w)
                num[(q - 1) * p.w + (r - 1)] += weight;
    return SubstochasticMatrix(p.w, p.d, std::move(num));
}

// Snap(M, y) as a canonical automaton reading d bits.
FailAutomaton snap_step(const SZAParams& p, const SubstochasticMatrix& m, std::uint64_t y) {
    FailAutomaton snapped = canonical_automaton(snap_matrix(m, y, p.Delta));
    return p.d == p.Delta ? snapped : embed(snapped, p.d);
}

void check_y(const SZAParams& p, const std::vector<std::uint64_t>& y, unsigned levels) {
    if (y.size() < levels)
        throw Error("sza", "need " + std::to_string(levels) + " snap offsets");
    for (std::uint64_t yi : y)
        if ((yi >> p.Delta) != 0)
            throw Error("sza", "snap offset wider than Delta bits");
}

} // namespace

FailAutomaton pow_hat(const SZAParams& p, const Simulator& sim, const FailAutomaton& q, const BitString& x) {
    check_base_simulator(p, sim);
    check_level_automaton(p, q);
    const auto core = pow_hat_core(p, *sim.bind(q), x);
    const unsigned shift = sampler_shift(p);
    const std::uint64_t inner = std::uint64_t{1} << p.sampler->spec().d;
    return FailAutomaton::from_function(p.w, p.d, [&](State v, Symbol z) { return core[(v - 1) * inner + (z >> shift)]; });
}

SubstochasticMatrix pow_hat_matrix(const SZAParams& p, const Simulator& sim, const FailAutomaton& q, const BitString& x) {
    check_base_simulator(p, sim);
    check_level_automaton(p, q);
    return pow_hat_matrix_bound(p, *sim.bind(q), x);
}

FailAutomaton pow_exact(const Simulator& sim, const FailAutomaton& q) {
    const auto bound = sim.bind(q);
    const unsigned s = sim.params().s;
    if (s > kMaxTableBits)
        throw BudgetExceeded("pow_exact", "seed space too large to tabulate");
    return FailAutomaton::from_function(q.width(), s, [&](State v, Symbol z) { return bound->evaluate(v, z); });
}

std::vector<FailAutomaton> q_hat_chain(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0,
                                       const BitString& x, const std::vector<std::uint64_t>& y) {
    check_base_simulator(p, sim);
    check_level_automaton(p, q0);
    check_y(p, y, p.u);
    std::vector<FailAutomaton> chain{q0};
    for (unsigned i = 0; i < p.u; ++i)
        chain.push_back(snap_step(p, pow_hat_matrix_bound(p, *sim.bind(chain.back()), x), y[i]));
    return chain;
}

FailAutomaton q_hat(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0, const BitString& x,
                    const std::vector<std::uint64_t>& y, unsigned i) {
    if (i > p.u)
        throw Error("sza", "level " + std::to_string(i) + " exceeds u=" + std::to_string(p.u));
    check_base_simulator(p, sim);
    check_level_automaton(p, q0);
    check_y(p, y, i);
    FailAutomaton cur = q0;
    for (unsigned k = 0; k < i; ++k)
        cur = snap_step(p, pow_hat_matrix_bound(p, *sim.bind(cur), x), y[k]);
    return cur;
}

std::vector<FailAutomaton> q_exact_chain(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0,
                                         const std::vector<std::uint64_t>& y) {
    check_base_simulator(p, sim);
    check_level_automaton(p, q0);
    check_y(p, y, p.u);
    std::vector<FailAutomaton> chain{q0};
    for (unsigned i = 0; i < p.u; ++i)
        chain.push_back(snap_step(p, transition_matrix(pow_exact(sim, chain.back())), y[i]));
    return chain;
}

namespace {

// The two mutually recursive subroutines: entry(i, r, z) = Q-hat_i(r; z), and
// pow_hat_row(i, r) counting Pow-hat(Q-hat_i, x)(r; z') over all z' by oracle invocations.
class OnDemandSZA {
public:
    OnDemandSZA(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0, const SZASeed& seed, bool cache,
                ResourceLedger& ledger)
        : p_(p), sim_(sim), q0_(q0), seed_(seed), cache_(cache), ledger_(ledger) {}

    State entry(unsigned i, State r, Symbol z) {
        if (i == 0) {
            ledger_.count_automaton_read();
            return q0_.next(r, z);
        }
        if (r == p_.w + 1)
            return r;
        if (cache_)
            return cached_row(i, r)[z];
        return canonical(snapped_row(i, r), z);
    }

    void read_row(unsigned i, State r, std::span<State> out) {
        if (cache_ && i > 0 && r <= p_.w) {
            const auto& row = cached_row(i, r);
            std::copy(row.begin(), row.end(), out.begin());
            return;
        }
        for (Symbol z = 0; z < out.size(); ++z)
            out[z] = entry(i, r, z);
    }

private:
    class LevelOracle final : public AutomatonOracle {
    public:
        LevelOracle(OnDemandSZA& owner, unsigned level) : owner_(owner), level_(level) {}
        std::uint32_t states() const override { return owner_.p_.w + 1; }
        unsigned bits() const override { return owner_.p_.d; }
        State next(State q, Symbol z) const override { return owner_.entry(level_, q, z); }
        void read_row(State q, std::span<State> out) const override { owner_.read_row(level_, q, out); }

    private:
        OnDemandSZA& owner_;
        unsigned level_;
    };

    class SampledSeed final : public SeedOracle {
    public:
        SampledSeed(OnDemandSZA& owner, Symbol z) : owner_(owner), z_(z) {}
        unsigned length() const override { return owner_.p_.s; }
        bool bit(unsigned j) const override {
            // Resolved by recomputing Samp(x, z') without invoking the oracle.
            auto read = owner_.ledger_.read_seed();
            owner_.ledger_.count_sampler_evaluation();
            const std::uint64_t v = owner_.p_.sampler->sample(owner_.seed_.x, z_ >> sampler_shift(owner_.p_));
            return (v >> (owner_.p_.s - 1 - j)) & 1u;
        }

    private:
        OnDemandSZA& owner_;
        Symbol z_;
    };

    std::vector<std::uint64_t> pow_hat_row(unsigned i, State r) {
        std::vector<std::uint64_t> counts(p_.w + 1, 0);
        const LevelOracle oracle(*this, i);
        for (Symbol z = 0; z < (Symbol{1} << p_.d); ++z) {
            auto invocation = ledger_.invoke();
            const SampledSeed seed(*this, z);
            ++counts[sim_.simulate(oracle, r, seed) - 1];
        }
        return counts;
    }

    // Row r of Snap(M(Pow-hat(Q-hat_{i-1}, x)), y_i), numerators at precision Delta.
    std::vector<std::uint64_t> snapped_row(unsigned i, State r) {
        const auto counts = pow_hat_row(i - 1, r);
        std::vector<std::uint64_t> row(p_.w);
        for (State v = 1; v <= p_.w; ++v)
            row[v - 1] = snap_numerator(counts[v - 1], p_.d, seed_.y[i - 1], p_.Delta);
        return row;
    }

    State canonical(const std::vector<std::uint64_t>& row, Symbol z) const {
        const std::uint64_t zi = (z >> (p_.d - p_.Delta)) + 1;
        std::uint64_t cum = 0;
        for (State v = 1; v <= p_.w; ++v)
            if (zi <= (cum += row[v - 1]))
                return v;
        return p_.w + 1;
    }

    const std::vector<State>& cached_row(unsigned i, State r) {
        const auto key = std::make_pair(i, r);
        if (auto it = rows_.find(key); it != rows_.end())
            return it->second;
        const auto snapped = snapped_row(i, r);
        std::vector<State> row(std::size_t{1} << p_.d);
        for (Symbol z = 0; z < row.size(); ++z)
            row[z] = canonical(snapped, z);
        return rows_.emplace(key, std::move(row)).first->second;
    }

    const SZAParams& p_;
    const Simulator& sim_;
    const FailAutomaton& q0_;
    const SZASeed& seed_;
    bool cache_;
    ResourceLedger& ledger_;
    std::map<std::pair<unsigned, State>, std::vector<State>> rows_;
};

} // namespace

SZAResult sza_simulate(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0, State q, std::uint64_t seed,
                       SZAMode mode, bool row_cache) {
    check_base_simulator(p, sim);
    check_level_automaton(p, q0);
    if (q < 1 || q > p.w + 1)
        throw Error("sza", "start state out of range");
    if ((seed >> p.seed_bits()) != 0)
        throw Error("sza", "seed must have " + std::to_string(p.seed_bits()) + " bits");
    const SZASeed parts = SZASeed::split(p, seed);
    SZAResult result;
    if (mode == SZAMode::memo) {
        const FailAutomaton top = q_hat(p, sim, q0, parts.x, parts.y, p.u);
        result.state = top.next(q, parts.z);
    } else {
        OnDemandSZA eval(p, sim, q0, parts, row_cache, result.ledger);
        result.state = eval.entry(p.u, q, parts.z);
    }
    return result;
}

std::string LedgerReport::describe() const {
    return std::string("invocations<=u:") + (invocations_within_u ? "yes" : "no") +
           " invocations==u:" + (invocations_equal_u ? "yes" : "no") +
           " seed-reads<=1:" + (seed_reads_at_most_one ? "yes" : "no") + " space[" + space.describe() + "]";
}

LedgerReport ledger_check(const ResourceLedger& ledger, const SZAParams& p, std::uint64_t advice_bits) {
    LedgerReport report;
    report.invocations_within_u = ledger.max_invocations() <= p.u;
    report.invocations_equal_u = ledger.max_invocations() == p.u;
    report.seed_reads_at_most_one = ledger.max_seed_reads() <= 1;
    const std::uint64_t state_bits = ceil_log2(p.w + 1);
    // Own storage: the seed, plus per recursion level a state pair, a symbol, and a d+1 bit counter.
    report.space.algorithm_bits = p.seed_bits() + p.u * (2 * state_bits + 2 * p.d + 1);
    report.space.seed_bits = p.s;
    report.space.seed_reads = ledger.max_seed_reads();
    report.space.invocations = ledger.max_invocations();
    report.space.symbol_bits = p.d;
    report.space.width = p.w + 1;
    report.space.advice_bits = advice_bits == 0 ? p.s : advice_bits;
    return report;
}

namespace {

class SZABound final : public BoundSimulator {
public:
    SZABound(const SZAParams& p, SimulatorHandle base, FailAutomaton q0)
        : BoundSimulator(p.w + 1, p.seed_bits()), p_(p), base_(std::move(base)), q0_(std::move(q0)) {}

    State evaluate(State q, std::uint64_t seed) const override {
        const SZASeed parts = SZASeed::split(p_, seed);
        if (q == p_.w + 1)
            return q;
        return top(parts)->next(q, parts.z);
    }

    std::vector<std::uint64_t> seed_counts(State q) const override {
        if (p_.ell + p_.u * p_.Delta > 30)
            throw BudgetExceeded("sza", "outer seeds exceed the enumeration budget");
        std::vector<std::uint64_t> counts(p_.w + 1, 0);
        if (q == p_.w + 1) {
            counts[p_.w] = std::uint64_t{1} << p_.seed_bits();
            return counts;
        }
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << p_.ell); ++x)
            accumulate(q0_, BitString::from_uint(x, p_.ell), 0, q, counts);
        return counts;
    }

private:
    void accumulate(const FailAutomaton& level, const BitString& x, unsigned i, State q,
                    std::vector<std::uint64_t>& counts) const {
        const SubstochasticMatrix m = pow_hat_matrix_bound(p_, *base_->bind(level), x);
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << p_.Delta); ++y) {
            if (i + 1 < p_.u) {
                accumulate(snap_step(p_, m, y), x, i + 1, q, counts);
                continue;
            }
            // Q-hat_u reads d bits of which the first Delta matter.
            const SubstochasticMatrix snapped = snap_matrix(m, y, p_.Delta);
            const unsigned spread = p_.d - p_.Delta;
            std::uint64_t used = 0;
            for (State r = 1; r <= p_.w; ++r) {
                counts[r - 1] += snapped.numerator(q, r) << spread;
                used += snapped.numerator(q, r) << spread;
            }
            counts[p_.w] += (std::uint64_t{1} << p_.d) - used;
        }
    }

    std::shared_ptr<const FailAutomaton> top(const SZASeed& parts) const {
        const auto key = std::make_pair(parts.x, parts.y);
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;
        }
        auto chain = q_hat_chain(p_, *base_, q0_, parts.x, parts.y);
        auto top = std::make_shared<const FailAutomaton>(std::move(chain.back()));
        std::lock_guard lock(mutex_);
        if (memo_.size() >= kMemoLimit)
            memo_.clear();
        memo_.emplace(key, top);
        return top;
    }

    static constexpr std::size_t kMemoLimit = 4096;

    SZAParams p_;
    SimulatorHandle base_;
    FailAutomaton q0_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<BitString, std::vector<std::uint64_t>>, std::shared_ptr<const FailAutomaton>> memo_;
};

class SZASimulator final : public Simulator {
public:
    SZASimulator(SimulatorParams params, SZAParams p, SimulatorHandle base)
        : Simulator(std::move(params)), p_(std::move(p)), base_(std::move(base)) {}
    std::string kind() const override { return "sza(" + base_->kind() + ")"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<SZABound>(p_, base_, FailAutomaton(a));
    }

private:
    SZAParams p_;
    SimulatorHandle base_;
};

} // namespace

SimulatorHandle sza_simulator(const SZAParams& p, SimulatorHandle base) {
    check_base_simulator(p, *base);
    Rational eps = p.claimed_error > 1 ? Rational(1) : p.claimed_error;
    SimulatorParams params{p.w, p.d, p.m_prime, std::move(eps), p.seed_bits(), true};
    return std::make_shared<SZASimulator>(std::move(params), p, std::move(base));
}

} // namespace derand
