#include "derand/simulator.hpp"

#include "derand/error.hpp"

namespace derand {

std::string SimulatorParams::describe() const {
    return "w=" + std::to_string(w) + " d=" + std::to_string(d) + " m=" + std::to_string(m) +
           " eps=" + to_string(epsilon) + " s=" + std::to_string(s) + (fail_family ? " fail" : "");
}

void AutomatonOracle::read_row(State q, std::span<State> out) const {
    for (Symbol z = 0; z < out.size(); ++z)
        out[z] = next(q, z);
}

void TableOracle::read_row(State q, std::span<State> out) const {
    const auto row = a_->row(q);
    std::copy(row.begin(), row.end(), out.begin());
}

std::vector<std::uint64_t> BoundSimulator::seed_counts(State q) const {
    if (seed_bits_ > 30)
        throw BudgetExceeded("seed_counts", "2^" + std::to_string(seed_bits_) + " seeds exceed the enumeration budget");
    std::vector<std::uint64_t> counts(states_, 0);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << seed_bits_); ++x)
        ++counts[evaluate(q, x) - 1];
    return counts;
}

Simulator::Simulator(SimulatorParams params) : params_(std::move(params)) {
    if (params_.w == 0)
        throw Error("simulator", "width must be positive");
    if (params_.s > kMaxSeedBits)
        throw Error("simulator", "seed length exceeds 62 bits");
    if (sgn(params_.epsilon) < 0 || params_.epsilon > 1)
        throw Error("simulator", "claimed error must lie in [0,1]");
}

void Simulator::check_automaton(const Automaton& a) const {
    if (a.states() != params_.states() || a.bits() != params_.d)
        throw Error(kind(), "automaton with " + std::to_string(a.states()) + " states and " + std::to_string(a.bits()) +
                                " bits is outside the simulated family (" + params_.describe() + ")");
    if (params_.fail_family)
        (void)FailAutomaton(a);
}

void Simulator::check_state(State q) const {
    if (q < 1 || q > params_.states())
        throw Error(kind(), "start state " + std::to_string(q) + " out of range");
}

void Simulator::check_seed(std::uint64_t seed) const {
    if (params_.s < 64 && (seed >> params_.s) != 0)
        throw Error(kind(), "seed wider than " + std::to_string(params_.s) + " bits");
}

State Simulator::simulate(const AutomatonOracle& a, State q, const SeedOracle& seed) const {
    if (a.bits() > kMaxTableBits)
        throw BudgetExceeded(kind(), "oracle alphabet too wide to read");
    std::vector<State> table(static_cast<std::size_t>(a.states()) << a.bits());
    const std::size_t row = std::size_t{1} << a.bits();
    for (State p = 1; p <= a.states(); ++p)
        a.read_row(p, std::span<State>(table.data() + (p - 1) * row, row));
    if (seed.length() != params_.s)
        throw Error(kind(), "seed oracle has the wrong length");
    std::uint64_t x = 0;
    for (unsigned i = 0; i < seed.length(); ++i)
        x = (x << 1) | (seed.bit(i) ? 1u : 0u);
    return evaluate(Automaton(a.states(), a.bits(), std::move(table)), q, x);
}

StateDistribution simulated_distribution(const BoundSimulator& sim, State q) {
    return StateDistribution::from_counts(sim.seed_counts(q));
}

namespace {

class ConstantGenerator final : public Generator {
public:
    ConstantGenerator(BitString out, unsigned seed_bits) : Generator(seed_bits, out.size()), out_(std::move(out)) {}
    std::string kind() const override { return "constant"; }
    BitString generate(std::uint64_t) const override { return out_; }

private:
    BitString out_;
};

class ForwardingInterpreter final : public AdviceInterpreter {
public:
    ForwardingInterpreter(const AdviceGenerator& adv, const Automaton& a) : adv_(&adv), a_(a) {}
    State interpret(State q, const BitString& advice) const override { return adv_->interpret(a_, q, advice); }

private:
    const AdviceGenerator* adv_;
    Automaton a_;
};

class AdviceBound final : public BoundSimulator {
public:
    AdviceBound(const AdviceGenerator& adv, std::unique_ptr<AdviceInterpreter> interp, std::uint32_t states)
        : BoundSimulator(states, adv.params().s), adv_(&adv), interp_(std::move(interp)) {}

    State evaluate(State q, std::uint64_t seed) const override { return interp_->interpret(q, adv_->generate(seed)); }

private:
    const AdviceGenerator* adv_;
    std::unique_ptr<AdviceInterpreter> interp_;
};

class AdviceSimulator final : public Simulator {
public:
    explicit AdviceSimulator(AdviceHandle adv) : Simulator(adv->params()), adv_(std::move(adv)) {}
    std::string kind() const override { return "advice(" + adv_->kind() + ")"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<AdviceBound>(*adv_, adv_->bind(a), a.states());
    }

private:
    AdviceHandle adv_;
};

class TargetedBound final : public BoundSimulator {
public:
    TargetedBound(const TargetedPRG& gen, const Automaton& a)
        : BoundSimulator(a.states(), gen.params().s), gen_(&gen), a_(a) {}

    State evaluate(State q, std::uint64_t seed) const override { return run(a_, q, gen_->generate(a_, q, seed)); }

    std::vector<std::uint64_t> seed_counts(State q) const override {
        std::vector<std::uint64_t> counts(states(), 0);
        for (const auto& [out, n] : gen_->output_counts(a_, q))
            counts[run(a_, q, out) - 1] += n;
        return counts;
    }

private:
    const TargetedPRG* gen_;
    Automaton a_;
};

class TargetedSimulator final : public Simulator {
public:
    explicit TargetedSimulator(TargetedHandle gen) : Simulator(gen->params()), gen_(std::move(gen)) {}
    std::string kind() const override { return "targeted(" + gen_->kind() + ")"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<TargetedBound>(*gen_, a);
    }

private:
    TargetedHandle gen_;
};

} // namespace

GeneratorHandle constant_generator(BitString output, unsigned seed_bits) {
    return std::make_shared<ConstantGenerator>(std::move(output), seed_bits);
}

AdviceGenerator::AdviceGenerator(SimulatorParams params, std::uint64_t advice_bits)
    : params_(std::move(params)), advice_bits_(advice_bits) {
    if (params_.s > kMaxSeedBits)
        throw Error("advice", "seed length exceeds 62 bits");
}

std::unique_ptr<AdviceInterpreter> AdviceGenerator::bind(const Automaton& a) const {
    return std::make_unique<ForwardingInterpreter>(*this, a);
}

State advice_simulate(const AdviceGenerator& adv, const Automaton& a, State q, std::uint64_t x) {
    const unsigned s = adv.params().s;
    if (s < 64 && (x >> s) != 0)
        throw Error("advice_simulate", "seed wider than " + std::to_string(s) + " bits");
    BitString advice = adv.generate(x);
    if (advice.size() != adv.advice_bits())
        throw Error("advice_simulate", "generator produced advice of the wrong length");
    return adv.interpret(a, q, advice);
}

State advice_simulate(const AdviceGenerator& adv, const Automaton& a, State q, const BitString& x) {
    if (x.size() != adv.params().s)
        throw Error("advice_simulate", "seed must have " + std::to_string(adv.params().s) + " bits");
    return advice_simulate(adv, a, q, x.to_uint());
}

SimulatorHandle advice_simulator(AdviceHandle adv) { return std::make_shared<AdviceSimulator>(std::move(adv)); }

TargetedPRG::TargetedPRG(SimulatorParams params) : params_(std::move(params)) {
    if (params_.s > kMaxSeedBits)
        throw Error("targeted-prg", "seed length exceeds 62 bits");
}

std::map<BitString, std::uint64_t> TargetedPRG::output_counts(const Automaton& a, State q) const {
    if (params_.s > 30)
        throw BudgetExceeded("targeted-prg", "seed space exceeds the enumeration budget");
    std::map<BitString, std::uint64_t> counts;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << params_.s); ++x)
        ++counts[generate(a, q, x)];
    return counts;
}

StateDistribution pushforward(const TargetedPRG& gen, const Automaton& a, State q) {
    std::vector<std::uint64_t> counts(a.states(), 0);
    for (const auto& [out, n] : gen.output_counts(a, q))
        counts[run(a, q, out) - 1] += n;
    return StateDistribution::from_counts(counts);
}

SimulatorHandle targeted_simulator(TargetedHandle gen) { return std::make_shared<TargetedSimulator>(std::move(gen)); }

} // namespace derand
