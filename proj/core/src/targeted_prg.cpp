#include "derand/targeted_prg.hpp"

#include "derand/error.hpp"

#include <algorithm>

namespace derand {

Automaton pad_with_dummies(const Automaton& a, std::uint32_t states) {
    if (states < a.states())
        throw Error("pad", "cannot pad to fewer states");
    return Automaton::from_function(states, a.bits(), [&](State q, Symbol z) { return q <= a.states() ? a.next(q, z) : q; });
}

Automaton layered_automaton(const Automaton& a, std::uint64_t m) {
    const std::uint32_t w = a.states();
    if (m == 0)
        throw Error("layered", "m must be positive");
    return Automaton::from_function(static_cast<std::uint32_t>(w * m), a.bits(), [&](State s, Symbol z) {
        const State q = (s - 1) % w + 1;
        const std::uint64_t t = (s - 1) / w + 1;
        if (t == m)
            return s;
        return static_cast<State>(t * w + a.next(q, z));
    });
}

std::uint64_t GreedyTrace::max_drop() const {
    std::uint64_t prev = target_count, drop = 0;
    for (const GreedyStep& step : steps) {
        const std::uint64_t cur = step.counts.empty() ? 0 : step.counts[step.chosen];
        if (cur < prev)
            drop = std::max(drop, prev - cur);
        prev = cur;
    }
    return drop;
}

namespace {

SimulatorParams cond_prob_params(const Simulator& sim, std::uint32_t w, unsigned d, std::uint64_t m) {
    const SimulatorParams& sp = sim.params();
    if (sp.fail_family || sp.w != w * m || sp.d != d || sp.m != m)
        throw Error("cond-prob", "simulator (" + sp.describe() + ") must simulate " + std::to_string(m) +
                                     " steps of plain (" + std::to_string(w * m) + ", " + std::to_string(d) + ")-automata");
    Rational eps = 2 * Rational(to_integer(m)) * w * w * sp.epsilon;
    if (eps > 1)
        eps = 1;
    return {w, d, m, eps, sp.s, false};
}

} // namespace

CondProbPRG::CondProbPRG(SimulatorHandle sim, std::uint32_t w, unsigned d, std::uint64_t m)
    : TargetedPRG(cond_prob_params(*sim, w, d, m)), sim_(std::move(sim)) {}

void CondProbPRG::check(const Automaton& a, State q) const {
    if (a.states() != params().w || a.bits() != params().d)
        throw Error("cond-prob", "expects (" + std::to_string(params().w) + ", " + std::to_string(params().d) + ")-automata");
    if (!a.valid_state(q))
        throw Error("cond-prob", "start state out of range");
}

State CondProbPRG::target(const Automaton& a, State q, std::uint64_t seed) const {
    check(a, q);
    return sim_->evaluate(pad_with_dummies(a, sim_->params().w), q, seed);
}

BitString CondProbPRG::greedy(const Automaton& a, State q, State target, GreedyTrace* trace) const {
    check(a, q);
    const std::uint32_t w = params().w;
    const unsigned d = params().d;
    const std::uint64_t m = params().m;
    const auto bound = sim_->bind(layered_automaton(a, m));
    if (trace) {
        trace->target = target;
        trace->target_count = sim_->bind(pad_with_dummies(a, sim_->params().w))->seed_counts(q)[target - 1];
        trace->steps.clear();
    }
    BitString out;
    State v = q;
    for (std::uint64_t i = 0; i < m; ++i) {
        GreedyStep step;
        if (target <= w) {
            // Successor v_z starts at layer i+1, leaving m-i-1 steps; R' = (R, m).
            const State goal = static_cast<State>((m - 1) * w + target);
            step.counts.resize(std::size_t{1} << d);
            for (Symbol z = 0; z < step.counts.size(); ++z) {
                const State start = static_cast<State>(i * w + a.next(v, z));
                step.counts[z] = bound->seed_counts(start)[goal - 1];
                if (step.counts[z] > step.counts[step.chosen])
                    step.chosen = z;
            }
        }
        out.append_uint(step.chosen, d);
        v = a.next(v, step.chosen);
        if (trace)
            trace->steps.push_back(std::move(step));
    }
    return out;
}

BitString CondProbPRG::generate(const Automaton& a, State q, std::uint64_t seed) const {
    return greedy(a, q, target(a, q, seed));
}

std::map<BitString, std::uint64_t> CondProbPRG::output_counts(const Automaton& a, State q) const {
    check(a, q);
    const auto targets = sim_->bind(pad_with_dummies(a, sim_->params().w))->seed_counts(q);
    std::map<BitString, std::uint64_t> counts;
    for (State r = 1; r <= targets.size(); ++r)
        if (targets[r - 1] > 0)
            counts[greedy(a, q, r)] += targets[r - 1];
    return counts;
}

std::shared_ptr<const CondProbPRG> cond_prob_prg(SimulatorHandle sim, std::uint32_t w, unsigned d, std::uint64_t m) {
    return std::make_shared<CondProbPRG>(std::move(sim), w, d, m);
}

State binarize_start(State q, unsigned d) { return ((q - 1) << d) + 2; }

State binarize_project(State r, unsigned d) { return ((r - 1) >> d) + 1; }

Automaton binarize_automaton(const FailAutomaton& a) {
    const unsigned d = a.bits();
    const std::uint32_t states = static_cast<std::uint32_t>((a.width() + 1) << d);
    const std::uint64_t block = std::uint64_t{1} << d;
    return Automaton::from_function(states, 1, [&](State s, Symbol b) -> State {
        const State q = binarize_project(s, d);
        const std::uint64_t code = (s - 1) & (block - 1);
        if (code == 0)
            return s;
        const std::uint64_t next = (code << 1) | b;
        if (next >= block)
            return binarize_start(a.next(q, next - block), d);
        return static_cast<State>(((q - 1) << d) + next + 1);
    });
}

namespace {

class BinarizedBound final : public BoundSimulator {
public:
    BinarizedBound(const AdviceGenerator& adv, const FailAutomaton& a)
        : BoundSimulator(a.width() + 1, adv.params().s), adv_(&adv), d_(a.bits()),
          interp_(adv.bind(binarize_automaton(a))) {}

    State evaluate(State q, std::uint64_t seed) const override {
        return binarize_project(interp_->interpret(binarize_start(q, d_), adv_->generate(seed)), d_);
    }

private:
    const AdviceGenerator* adv_;
    unsigned d_;
    std::unique_ptr<AdviceInterpreter> interp_;
};

class BinarizedSimulator final : public Simulator {
public:
    BinarizedSimulator(SimulatorParams p, AdviceHandle adv) : Simulator(std::move(p)), adv_(std::move(adv)) {}
    std::string kind() const override { return "binarize(" + adv_->kind() + ")"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<BinarizedBound>(*adv_, FailAutomaton(a));
    }

private:
    AdviceHandle adv_;
};

} // namespace

SimulatorHandle binarize(AdviceHandle advgen, std::uint32_t w, unsigned d) {
    const SimulatorParams& ap = advgen->params();
    if (d == 0 || d > 20)
        throw Error("binarize", "symbol width must lie in [1, 20]");
    const std::uint64_t states = static_cast<std::uint64_t>(w + 1) << d;
    if (ap.fail_family || ap.states() != states || ap.d != 1)
        throw Error("binarize", "advice generator (" + ap.describe() + ") must handle plain " + std::to_string(states) +
                                    "-state 1-bit automata");
    if (ap.m < d)
        throw Error("binarize", "advice generator simulates fewer than d steps");
    return std::make_shared<BinarizedSimulator>(SimulatorParams{w, d, ap.m / d, ap.epsilon, ap.s, true}, std::move(advgen));
}

FailAutomaton clock_automaton(const Automaton& a, std::uint64_t m, unsigned outer_bits) {
    const std::uint32_t W = a.states();
    const unsigned d = a.bits();
    if (outer_bits < d)
        throw Error("pad_states", "outer alphabet narrower than the target");
    const std::uint64_t width = static_cast<std::uint64_t>(W) * (m + 1);
    if (width >= UINT32_MAX)
        throw Error("pad_states", "layered state space too large");
    return FailAutomaton::from_function(static_cast<std::uint32_t>(width), outer_bits, [&](State s, Symbol z) -> State {
        const State q = (s - 1) % W + 1;
        const std::uint64_t t = (s - 1) / W + 1;
        if (t == m + 1)
            return s;
        return static_cast<State>(t * W + a.next(q, z >> (outer_bits - d)));
    });
}

namespace {

class PaddedBound final : public BoundSimulator {
public:
    PaddedBound(const Simulator& inner, const Automaton& a, std::uint64_t m)
        : BoundSimulator(a.states(), inner.params().s), W_(a.states()),
          inner_(inner.bind(clock_automaton(a, m, inner.params().d))) {}

    State evaluate(State q, std::uint64_t seed) const override { return project(inner_->evaluate(q, seed)); }

    std::vector<std::uint64_t> seed_counts(State q) const override {
        const auto inner = inner_->seed_counts(q);
        std::vector<std::uint64_t> counts(W_, 0);
        for (State r = 1; r <= inner.size(); ++r)
            counts[project(r) - 1] += inner[r - 1];
        return counts;
    }

private:
    State project(State r) const { return r == inner_->states() ? 1 : (r - 1) % W_ + 1; }

    std::uint32_t W_;
    std::unique_ptr<BoundSimulator> inner_;
};

class PaddedSimulator final : public Simulator {
public:
    PaddedSimulator(SimulatorParams p, SimulatorHandle inner) : Simulator(std::move(p)), inner_(std::move(inner)) {}
    std::string kind() const override { return "pad(" + inner_->kind() + ")"; }

    std::unique_ptr<BoundSimulator> bind(const Automaton& a) const override {
        check_automaton(a);
        return std::make_unique<PaddedBound>(*inner_, a, params().m);
    }

private:
    SimulatorHandle inner_;
};

} // namespace

SimulatorHandle pad_states(SimulatorHandle sim, std::uint32_t W, unsigned d, std::uint64_t m) {
    const SimulatorParams& sp = sim->params();
    if (!sp.fail_family || static_cast<std::uint64_t>(sp.w) != static_cast<std::uint64_t>(W) * (m + 1) || sp.m < m ||
        sp.d < d)
        throw Error("pad_states", "simulator (" + sp.describe() + ") must handle (" + std::to_string(W * (m + 1)) +
                                      ", d' >= " + std::to_string(d) + ")-automata with fail state over >= " +
                                      std::to_string(m) + " steps");
    return std::make_shared<PaddedSimulator>(SimulatorParams{W, d, m, sp.epsilon, sp.s, false}, std::move(sim));
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.stage() == name)
            throw;
        throw Error(name, e.what());
    }
}

StageReport report_of(const std::string& name, const SimulatorParams& p, std::string note = {}) {
    return {name, p.w, p.d, p.m, p.s, p.epsilon, std::move(note)};
}

} // namespace

CycleResult cycle_compose(const AdviceFactory& advgen, const CycleConfig& config) {
    CycleResult result;
    const std::uint32_t W = static_cast<std::uint32_t>(config.w * config.m);
    const std::uint32_t W_sza = static_cast<std::uint32_t>(W * (config.m + 1));
    result.sza = stage("sza", [&] {
        return sza_params(W_sza, config.sza_epsilon, config.s, config.m0, config.m, config.sampler);
    });
    const SZAParams& p = result.sza;
    const std::uint32_t bin_states = static_cast<std::uint32_t>((W_sza + 1) << p.d);
    AdviceHandle adv = stage("advgen", [&] { return advgen(bin_states, p.m0 * p.d, config.s); });
    result.stages.push_back(report_of("advgen", adv->params(), adv->kind()));
    SimulatorHandle base = stage("binarize", [&] { return binarize(adv, W_sza, p.d); });
    result.stages.push_back(report_of("binarize", base->params()));
    SimulatorHandle sza = stage("sza", [&] { return sza_simulator(p, base); });
    result.stages.push_back(report_of("sza", sza->params(), p.describe()));
    SimulatorHandle padded = stage("pad_states", [&] { return pad_states(sza, W, 1, config.m); });
    result.stages.push_back(report_of("pad_states", padded->params()));
    result.prg = stage("cond_prob", [&] { return cond_prob_prg(padded, config.w, 1, config.m); });
    result.stages.push_back(report_of("cond_prob", result.prg->params()));
    const Rational mm = to_integer(config.m);
    result.claimed_bound = 2 * mm * config.w * config.w * p.claimed_error;
    result.hypotheses_met = base->params().epsilon <= p.epsilon && p.theorem_regime;
    return result;
}

} // namespace derand
