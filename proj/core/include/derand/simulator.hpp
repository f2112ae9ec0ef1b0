#pragma once

#include "derand/automaton.hpp"
#include "derand/bits.hpp"
#include "derand/distribution.hpp"
#include "derand/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace derand {

/// Largest seed length a simulator may declare (seeds are passed as integers).
inline constexpr unsigned kMaxSeedBits = 62;

/// Family and guarantees of a simulator: it handles (w,d)-automata (with a fail state
/// when `fail_family`) for m steps with claimed error epsilon and seed length s.
struct SimulatorParams {
    std::uint32_t w = 0;
    unsigned d = 0;
    std::uint64_t m = 0;
    Rational epsilon;
    unsigned s = 0;
    bool fail_family = false;

    std::uint32_t states() const noexcept { return fail_family ? w + 1 : w; }
    std::string describe() const;
};

/// Random access to an automaton's transitions, answered by the caller.
class AutomatonOracle {
public:
    virtual ~AutomatonOracle() = default;
    virtual std::uint32_t states() const = 0;
    virtual unsigned bits() const = 0;
    virtual State next(State q, Symbol z) const = 0;
    /// All transitions out of q; out.size() == 2^bits().
    virtual void read_row(State q, std::span<State> out) const;
};

/// Oracle answering from a stored table.
class TableOracle final : public AutomatonOracle {
public:
    explicit TableOracle(const Automaton& a) : a_(&a) {}
    std::uint32_t states() const override { return a_->states(); }
    unsigned bits() const override { return a_->bits(); }
    State next(State q, Symbol z) const override { return a_->next(q, z); }
    void read_row(State q, std::span<State> out) const override;

private:
    const Automaton* a_;
};

/// Random access to seed bits, answered by the caller.
class SeedOracle {
public:
    virtual ~SeedOracle() = default;
    virtual unsigned length() const = 0;
    virtual bool bit(unsigned i) const = 0;
};

class FixedSeed final : public SeedOracle {
public:
    FixedSeed(std::uint64_t value, unsigned length) : value_(value), length_(length) {}
    unsigned length() const override { return length_; }
    bool bit(unsigned i) const override { return (value_ >> (length_ - 1 - i)) & 1u; }

private:
    std::uint64_t value_;
    unsigned length_;
};

/// A simulator with its automaton fixed.
class BoundSimulator {
public:
    BoundSimulator(std::uint32_t states, unsigned seed_bits) : states_(states), seed_bits_(seed_bits) {}
    virtual ~BoundSimulator() = default;

    std::uint32_t states() const noexcept { return states_; }
    unsigned seed_bits() const noexcept { return seed_bits_; }

    virtual State evaluate(State q, std::uint64_t seed) const = 0;
    /// Number of seeds mapping q to each state (index r-1). Enumerates all 2^s seeds.
    virtual std::vector<std::uint64_t> seed_counts(State q) const;

private:
    std::uint32_t states_;
    unsigned seed_bits_;
};

/// Sim(Q, q, x): a deterministic procedure whose output on a uniform seed is
/// epsilon-close to Q^m(q; U_md).
class Simulator {
public:
    explicit Simulator(SimulatorParams params);
    virtual ~Simulator() = default;

    const SimulatorParams& params() const noexcept { return params_; }
    virtual std::string kind() const = 0;

    virtual std::unique_ptr<BoundSimulator> bind(const Automaton& a) const = 0;
    std::unique_ptr<BoundSimulator> bind(const FailAutomaton& a) const { return bind(a.automaton()); }

    /// Evaluation with the automaton and seed supplied through oracles. The default
    /// reads the automaton row by row, then the seed bit by bit, then evaluates.
    virtual State simulate(const AutomatonOracle& a, State q, const SeedOracle& seed) const;

    State evaluate(const Automaton& a, State q, std::uint64_t seed) const { return bind(a)->evaluate(q, seed); }

    /// Throws unless `a` belongs to the simulated family.
    void check_automaton(const Automaton& a) const;
    void check_state(State q) const;
    void check_seed(std::uint64_t seed) const;

private:
    SimulatorParams params_;
};

using SimulatorHandle = std::shared_ptr<const Simulator>;

/// Output distribution of a bound simulator from q over a uniform seed.
StateDistribution simulated_distribution(const BoundSimulator& sim, State q);

/// A seeded generator with fixed output length.
class Generator {
public:
    Generator(unsigned seed_bits, std::uint64_t output_bits) : seed_bits_(seed_bits), output_bits_(output_bits) {}
    virtual ~Generator() = default;

    unsigned seed_bits() const noexcept { return seed_bits_; }
    std::uint64_t output_bits() const noexcept { return output_bits_; }
    virtual std::string kind() const = 0;
    virtual BitString generate(std::uint64_t seed) const = 0;

private:
    unsigned seed_bits_;
    std::uint64_t output_bits_;
};

using GeneratorHandle = std::shared_ptr<const Generator>;

/// Outputs a fixed string for every seed.
GeneratorHandle constant_generator(BitString output, unsigned seed_bits = 1);

/// The interpreter S of an advice generator with its automaton fixed.
class AdviceInterpreter {
public:
    virtual ~AdviceInterpreter() = default;
    virtual State interpret(State q, const BitString& advice) const = 0;
};

/// Gen: {0,1}^s -> {0,1}^a together with an interpreter S; Sim(Q, q, x) = S(Q, q, Gen(x)).
class AdviceGenerator {
public:
    AdviceGenerator(SimulatorParams params, std::uint64_t advice_bits);
    virtual ~AdviceGenerator() = default;

    const SimulatorParams& params() const noexcept { return params_; }
    std::uint64_t advice_bits() const noexcept { return advice_bits_; }
    virtual std::string kind() const = 0;

    virtual BitString generate(std::uint64_t seed) const = 0;
    virtual State interpret(const Automaton& a, State q, const BitString& advice) const = 0;
    /// Interpreter specialized to one automaton; the default forwards to interpret().
    virtual std::unique_ptr<AdviceInterpreter> bind(const Automaton& a) const;

private:
    SimulatorParams params_;
    std::uint64_t advice_bits_;
};

using AdviceHandle = std::shared_ptr<const AdviceGenerator>;

/// S(Q, q, Gen(x)).
State advice_simulate(const AdviceGenerator& adv, const Automaton& a, State q, std::uint64_t x);
State advice_simulate(const AdviceGenerator& adv, const Automaton& a, State q, const BitString& x);

/// The simulator x -> S(Q, q, Gen(x)).
SimulatorHandle advice_simulator(AdviceHandle adv);

/// Gen(Q, q, x) of m d bits; fools the specific (Q, q) it is given.
class TargetedPRG {
public:
    explicit TargetedPRG(SimulatorParams params);
    virtual ~TargetedPRG() = default;

    const SimulatorParams& params() const noexcept { return params_; }
    virtual std::string kind() const = 0;

    virtual BitString generate(const Automaton& a, State q, std::uint64_t seed) const = 0;
    /// Number of seeds producing each output; the default enumerates all 2^s seeds.
    virtual std::map<BitString, std::uint64_t> output_counts(const Automaton& a, State q) const;

private:
    SimulatorParams params_;
};

using TargetedHandle = std::shared_ptr<const TargetedPRG>;

/// Distribution of Q^m(q; Gen(Q, q, U_s)).
StateDistribution pushforward(const TargetedPRG& gen, const Automaton& a, State q);

/// The simulator Sim(Q, q, x) = Q^m(q; Gen(Q, q, x)).
SimulatorHandle targeted_simulator(TargetedHandle gen);

} // namespace derand
