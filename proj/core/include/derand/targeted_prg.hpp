#pragma once

#include "derand/simulator.hpp"
#include "derand/sza.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace derand {

/// Q with w' - w extra states that loop on themselves.
Automaton pad_with_dummies(const Automaton& a, std::uint32_t states);

/// Layered copy of Q on [w] x [m], state (t-1) w + q: layers t < m advance on Q,
/// layer m loops. Started at layer t it runs m - t steps of Q and then freezes.
Automaton layered_automaton(const Automaton& a, std::uint64_t m);

/// One iteration of the greedy loop.
struct GreedyStep {
    std::vector<std::uint64_t> counts; ///< seeds reaching the target from each successor v_z
    Symbol chosen = 0;
};

struct GreedyTrace {
    State target = 0;               ///< R
    std::uint64_t target_count = 0; ///< seeds x' with Sim(Q', q, x') = R
    std::vector<GreedyStep> steps;

    /// Largest drop of the tracked count from one step to the next (starting from target_count).
    std::uint64_t max_drop() const;
};

/// The method-of-conditional-probabilities generator G^Sim against (w,d)-automata over m
/// steps. `sim` must simulate m steps of plain (w m, d)-automata. Ties go to the smallest z.
class CondProbPRG final : public TargetedPRG {
public:
    CondProbPRG(SimulatorHandle sim, std::uint32_t w, unsigned d, std::uint64_t m);

    std::string kind() const override { return "cond-prob(" + sim_->kind() + ")"; }
    BitString generate(const Automaton& a, State q, std::uint64_t seed) const override;
    /// Groups seeds by the target R they select, so only one greedy pass per R is run.
    std::map<BitString, std::uint64_t> output_counts(const Automaton& a, State q) const override;

    /// The greedy output for a fixed target R, with its per-step counts.
    BitString greedy(const Automaton& a, State q, State target, GreedyTrace* trace = nullptr) const;
    State target(const Automaton& a, State q, std::uint64_t seed) const;

    const SimulatorHandle& simulator() const noexcept { return sim_; }

private:
    void check(const Automaton& a, State q) const;

    SimulatorHandle sim_;
};

std::shared_ptr<const CondProbPRG> cond_prob_prg(SimulatorHandle sim, std::uint32_t w, unsigned d, std::uint64_t m);

/// A (w,d)-automaton with fail state as a ((w+1) 2^d, 1)-automaton: state (q, buffer) with
/// index (q-1) 2^d + code + 1, where code = 2^len + bits holds the len < d buffered bits
/// (code 0 is an unused self-loop).
Automaton binarize_automaton(const FailAutomaton& a);
State binarize_start(State q, unsigned d);
State binarize_project(State r, unsigned d);

/// Simulator for (w,d)-automata with fail state over floor(m/d) steps, from an advice
/// generator for ((w+1) 2^d)-state 1-bit automata over m steps.
SimulatorHandle binarize(AdviceHandle advgen, std::uint32_t w, unsigned d);

/// Layered clock automaton on [W] x [m+1] plus a fail state, reading d' >= d bits of
/// which the first d are used. Started at (q, 1) it runs m steps of Q, then loops.
FailAutomaton clock_automaton(const Automaton& a, std::uint64_t m, unsigned outer_bits);

/// Simulator for plain (W, d)-automata over m steps, from a simulator for
/// (W (m+1), d')-automata with fail state over m' >= m steps; projects to the first coordinate.
SimulatorHandle pad_states(SimulatorHandle sim, std::uint32_t W, unsigned d, std::uint64_t m);

/// Realized parameters of one pipeline stage.
struct StageReport {
    std::string stage;
    std::uint32_t w = 0;
    unsigned d = 0;
    std::uint64_t m = 0;
    unsigned s = 0;
    Rational epsilon;
    std::string note;
};

struct CycleConfig {
    std::uint32_t w = 2;       ///< width of the final targeted PRG (it reads 1 bit per step)
    std::uint64_t m = 1;       ///< steps fooled by the final targeted PRG
    std::uint64_t m0 = 1;      ///< steps of the base simulator
    unsigned s = 1;            ///< seed length of the base advice generator
    Rational sza_epsilon;      ///< error parameter handed to SZA
    std::string sampler = "shift";
};

/// Base advice generator for (states)-state 1-bit automata over `steps` steps with seed s.
using AdviceFactory = std::function<AdviceHandle(std::uint32_t states, std::uint64_t steps, unsigned s)>;

struct CycleResult {
    std::shared_ptr<const CondProbPRG> prg;
    SZAParams sza;
    std::vector<StageReport> stages;
    Rational claimed_bound;       ///< 2 m w^2 (12 m epsilon) from the configured SZA epsilon
    bool hypotheses_met = false;  ///< base error <= SZA epsilon and s <= m0 <= W
};

/// advgen -> binarize -> SZA -> pad_states -> G. Errors name the failing stage.
CycleResult cycle_compose(const AdviceFactory& advgen, const CycleConfig& config);

} // namespace derand
