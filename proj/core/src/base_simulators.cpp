#include "derand/base_simulators.hpp"

#include "derand/error.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

namespace derand {

namespace {

__extension__ typedef unsigned __int128 u128;

// Cumulative seed thresholds C_1 <= ... <= C_N = 2^s for one start state.
std::vector<std::uint64_t> quantized_cdf(const Automaton& a, State q, std::uint64_t m0, unsigned s) {
    const std::uint64_t bits = m0 * a.bits();
    std::vector<std::uint64_t> cdf(a.states());
    if (bits <= 63) {
        const auto counts = reach_counts(a, q, m0);
        u128 cum = 0;
        for (std::size_t r = 0; r < counts.size(); ++r) {
            cum += counts[r];
            if (s >= bits)
                cdf[r] = static_cast<std::uint64_t>(cum << (s - bits));
            else
                cdf[r] = static_cast<std::uint64_t>(((cum << s) + (u128{1} << (bits - 1))) >> bits);
        }
        return cdf;
    }
    const auto counts = reach_counts_big(a, q, m0);
    Integer cum = 0;
    for (std::size_t r = 0; r < counts.size(); ++r) {
        cum += counts[r];
        Integer scaled = cum << s;
        scaled += Integer(1) << static_cast<unsigned long>(bits - 1);
        scaled >>= static_cast<unsigned long>(bits);
        cdf[r] = scaled.get_ui();
    }
    return cdf;
}

class PerfectBound final : public BoundSimulator {
public:
    PerfectBound(const Automaton& a, std::uint64_t m0, unsigned s)
        : BoundSimulator(a.states(), s), a_(a), m0_(m0), cdf_(a.states()) {}

    State evaluate(State q, std::uint64_t seed) const override {
        const auto& cdf = thresholds(q);
        return static_cast<State>(std::upper_bound(cdf.begin(), cdf.end(), seed) - cdf.begin()) + 1;
    }

    std::vector<std::uint64_t> seed_counts(State q) const override {
        const auto& cdf = thresholds(q);
        std::vector<std::uint64_t> counts(cdf.size());
        std::uint64_t prev = 0;
        for (std::size_t r = 0; r < cdf.size(); ++r) {
            counts[r] = cdf[r] - prev;
            prev = cdf[r];
        }
        return counts;
    }

private:
    const std::vector<std::uint64_t>& thresholds(State q) const {
        std::lock_guard lock(mutex_);
        auto& slot = cdf_[q - 1];
        if (!slot)
            slot = quantized_cdf(a_, q, m0_, seed_bits());
        return *slot;
    }

    Automaton a_;
    std::uint64_t m0_;
    mutable std::mutex mutex_;
    mutable std::vector<std::optional<std::vector<std::uint64_t>>> cdf_;
};

class PerfectSimulator final : public Simulator {
public:
    using Simulator::Simulator;
    std::string kind() const override { return "perfect"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<PerfectBound>(a, params().m, params().s);
    }
};

class PrgBound final : public BoundSimulator {
public:
    PrgBound(const Generator& gen, const Automaton& a) : BoundSimulator(a.states(), gen.seed_bits()), gen_(&gen), a_(a) {}
    State evaluate(State q, std::uint64_t seed) const override { return run(a_, q, gen_->generate(seed)); }

private:
    const Generator* gen_;
    Automaton a_;
};

class PrgSimulator final : public Simulator {
public:
    PrgSimulator(SimulatorParams p, GeneratorHandle gen) : Simulator(std::move(p)), gen_(std::move(gen)) {}
    std::string kind() const override { return "prg(" + gen_->kind() + ")"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<PrgBound>(*gen_, a);
    }

private:
    GeneratorHandle gen_;
};

class PrgAdvice final : public AdviceGenerator {
public:
    PrgAdvice(SimulatorParams p, GeneratorHandle gen) : AdviceGenerator(std::move(p), gen->output_bits()), gen_(std::move(gen)) {}
    std::string kind() const override { return "prg-advice(" + gen_->kind() + ")"; }
    BitString generate(std::uint64_t seed) const override { return gen_->generate(seed); }
    State interpret(const Automaton& a, State q, const BitString& advice) const override { return run(a, q, advice); }

private:
    GeneratorHandle gen_;
};

class IdentityInterpreter final : public AdviceInterpreter {
public:
    explicit IdentityInterpreter(std::unique_ptr<BoundSimulator> bound) : bound_(std::move(bound)) {}
    State interpret(State q, const BitString& advice) const override { return bound_->evaluate(q, advice.to_uint()); }

private:
    std::unique_ptr<BoundSimulator> bound_;
};

class IdentityAdvice final : public AdviceGenerator {
public:
    explicit IdentityAdvice(SimulatorHandle sim) : AdviceGenerator(sim->params(), sim->params().s), sim_(std::move(sim)) {}
    std::string kind() const override { return "identity-advice(" + sim_->kind() + ")"; }
    BitString generate(std::uint64_t seed) const override { return BitString::from_uint(seed, params().s); }
    State interpret(const Automaton& a, State q, const BitString& advice) const override {
        return sim_->evaluate(a, q, advice.to_uint());
    }
    std::unique_ptr<AdviceInterpreter> bind(const Automaton& a) const override {
        return std::make_unique<IdentityInterpreter>(sim_->bind(a));
    }

private:
    SimulatorHandle sim_;
};

// Seed x is routed to output r when x < T_r, where T is the running sum of
// per-state counts (thresholds plus one leftover seed for the first L fractional states).
std::vector<std::uint64_t> decider_cdf(const Automaton& a, State q, std::uint64_t K) {
    const auto dist = exact_distribution(a, q, a.states());
    std::vector<std::uint64_t> counts(a.states());
    std::uint64_t assigned = 0;
    for (State r = 1; r <= a.states(); ++r)
        assigned += counts[r - 1] = decider_threshold(dist[r], K);
    std::uint64_t leftover = K - assigned;
    for (State r = 1; r <= a.states() && leftover > 0; ++r)
        if (Rational(dist[r] * Rational(to_integer(K))).get_den() != 1) {
            ++counts[r - 1];
            --leftover;
        }
    std::vector<std::uint64_t> cdf(a.states());
    std::uint64_t cum = 0;
    for (State r = 1; r <= a.states(); ++r)
        cdf[r - 1] = cum += counts[r - 1];
    return cdf;
}

class DeciderInterpreter final : public AdviceInterpreter {
public:
    DeciderInterpreter(const Automaton& a, std::uint64_t K, unsigned s) : a_(a), K_(K), s_(s), cdf_(a.states()) {}

    State interpret(State q, const BitString& advice) const override {
        if (q < 1 || q > a_.states())
            throw Error("decider", "start state out of range");
        const std::uint64_t x = advice.to_uint(0, s_);
        std::lock_guard lock(mutex_);
        auto& slot = cdf_[q - 1];
        if (!slot)
            slot = decider_cdf(a_, q, K_);
        return static_cast<State>(std::upper_bound(slot->begin(), slot->end(), x) - slot->begin()) + 1;
    }

private:
    Automaton a_;
    std::uint64_t K_;
    unsigned s_;
    mutable std::mutex mutex_;
    mutable std::vector<std::optional<std::vector<std::uint64_t>>> cdf_;
};

class DeciderAdvice final : public AdviceGenerator {
public:
    DeciderAdvice(SimulatorParams p, std::uint64_t K, std::uint64_t a) : AdviceGenerator(std::move(p), a), K_(K) {}
    std::string kind() const override { return "decider"; }

    BitString generate(std::uint64_t seed) const override {
        BitString out = BitString::from_uint(seed, params().s);
        out.append(BitString(advice_bits() - params().s));
        return out;
    }
    State interpret(const Automaton& a, State q, const BitString& advice) const override {
        return DeciderInterpreter(checked(a), K_, params().s).interpret(q, advice);
    }
    std::unique_ptr<AdviceInterpreter> bind(const Automaton& a) const override {
        return std::make_unique<DeciderInterpreter>(checked(a), K_, params().s);
    }

private:
    const Automaton& checked(const Automaton& a) const {
        if (a.states() != params().w || a.bits() != 1)
            throw Error("decider", "expects (w,1)-automata with w=" + std::to_string(params().w));
        return a;
    }

    std::uint64_t K_;
};

} // namespace

SimulatorHandle perfect_simulator(std::uint32_t w, unsigned d, std::uint64_t m0, unsigned s, bool fail_family) {
    if (s < 1 || s > kMaxSeedBits)
        throw Error("perfect", "seed length must lie in [1, 62]");
    const std::uint32_t states = fail_family ? w + 1 : w;
    Rational eps = m0 * d <= s ? Rational(0) : Rational(states) * pow2(-static_cast<long>(s));
    if (eps > 1)
        eps = 1;
    return std::make_shared<PerfectSimulator>(SimulatorParams{w, d, m0, eps, s, fail_family});
}

namespace {

unsigned nisan_seed_bits(unsigned d, std::uint64_t m0, unsigned n) {
    if (m0 == 0 || (m0 & (m0 - 1)) != 0)
        throw Error("nisan", "step count must be a power of two");
    if (n < d)
        throw Error("nisan", "field width must be at least d");
    const std::uint64_t s = static_cast<std::uint64_t>(n) * (1 + 2 * ceil_log2(m0));
    if (s > kMaxSeedBits)
        throw Error("nisan", "seed length " + std::to_string(s) + " exceeds 62 bits");
    return static_cast<unsigned>(s);
}

} // namespace

NisanGenerator::NisanGenerator(unsigned d, std::uint64_t m0, unsigned n)
    : Generator(nisan_seed_bits(d, m0, n), m0 * d), d_(d), levels_(ceil_log2(m0)), field_(n) {}

void NisanGenerator::expand(std::uint64_t x, unsigned level, std::uint64_t seed, BitString& out) const {
    const unsigned n = field_.degree();
    if (level == 0) {
        out.append_uint(x >> (n - d_), d_);
        return;
    }
    // Hash h_level sits at seed bits [n + 2n(level-1), n + 2n level).
    const unsigned shift = seed_bits() - n - 2 * n * level;
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    const std::uint64_t a = (seed >> (shift + n)) & mask;
    const std::uint64_t b = (seed >> shift) & mask;
    expand(x, level - 1, seed, out);
    expand(field_.add(field_.mul(a, x), b), level - 1, seed, out);
}

BitString NisanGenerator::generate(std::uint64_t seed) const {
    if (seed_bits() < 64 && (seed >> seed_bits()) != 0)
        throw Error("nisan", "seed wider than the seed length");
    BitString out;
    const unsigned n = field_.degree();
    expand(seed >> (seed_bits() - n), levels_, seed, out);
    return out;
}

std::uint64_t NisanGenerator::generate_word(std::uint64_t seed) const {
    if (output_bits() > 64)
        throw Error("nisan", "output wider than 64 bits");
    return generate(seed).to_uint();
}

unsigned nisan_default_field_bits(std::uint32_t w, unsigned d) { return std::max(d, ceil_log2(w) + 2); }

SimulatorHandle prg_simulator(GeneratorHandle gen, std::uint32_t w, unsigned d, Rational epsilon, bool fail_family) {
    if (d == 0 || gen->output_bits() % d != 0)
        throw Error("prg", "generator output is not a whole number of d-bit steps");
    SimulatorParams p{w, d, gen->output_bits() / d, std::move(epsilon), gen->seed_bits(), fail_family};
    return std::make_shared<PrgSimulator>(std::move(p), std::move(gen));
}

Rational certify_generator(const Generator& gen, unsigned d, const std::vector<Automaton>& family) {
    if (family.empty())
        return 1;
    if (gen.seed_bits() > 30)
        throw BudgetExceeded("certify", "seed space exceeds the enumeration budget");
    const std::uint64_t m = gen.output_bits() / d;
    std::vector<BitString> outputs;
    outputs.reserve(std::size_t{1} << gen.seed_bits());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << gen.seed_bits()); ++x)
        outputs.push_back(gen.generate(x));
    Rational worst = 0;
    for (const Automaton& a : family) {
        if (a.bits() != d)
            throw Error("certify", "family automaton reads the wrong number of bits");
        for (State q = 1; q <= a.states(); ++q) {
            std::vector<std::uint64_t> counts(a.states(), 0);
            for (const BitString& y : outputs)
                ++counts[run(a, q, y) - 1];
            const Rational tv = tv_distance(StateDistribution::from_counts(counts), exact_distribution(a, q, m));
            worst = std::max(worst, tv);
        }
    }
    return worst;
}

SimulatorHandle nisan_simulator(std::uint32_t w, unsigned d, std::uint64_t m0, unsigned n, const std::vector<Automaton>& family) {
    auto gen = std::make_shared<NisanGenerator>(d, m0, n == 0 ? nisan_default_field_bits(w, d) : n);
    Rational eps = certify_generator(*gen, d, family);
    return prg_simulator(std::move(gen), w, d, std::move(eps));
}

AdviceHandle prg_to_advice(GeneratorHandle gen, std::uint32_t w, unsigned d, Rational epsilon, bool fail_family) {
    if (d == 0 || gen->output_bits() % d != 0)
        throw Error("prg-advice", "generator output is not a whole number of d-bit steps");
    SimulatorParams p{w, d, gen->output_bits() / d, std::move(epsilon), gen->seed_bits(), fail_family};
    return std::make_shared<PrgAdvice>(std::move(p), std::move(gen));
}

AdviceHandle identity_advice(SimulatorHandle sim) { return std::make_shared<IdentityAdvice>(std::move(sim)); }

std::uint64_t decider_threshold(const Rational& p, std::uint64_t K) {
    Rational scaled = p * Rational(to_integer(K));
    Integer t;
    mpz_fdiv_q(t.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return t.get_ui();
}

AdviceHandle decider_advice(std::uint32_t w, std::uint64_t K, std::uint64_t advice_bits) {
    if (K < 2 || (K & (K - 1)) != 0)
        throw Error("decider", "resolution K must be a power of two >= 2");
    const unsigned s = ceil_log2(K);
    if (advice_bits == 0)
        advice_bits = s;
    if (advice_bits < s)
        throw Error("decider", "advice must hold the seed");
    Rational eps = Rational(w) / Rational(to_integer(2 * K));
    if (eps > 1)
        eps = 1;
    return std::make_shared<DeciderAdvice>(SimulatorParams{w, 1, w, eps, s, false}, K, advice_bits);
}

} // namespace derand
