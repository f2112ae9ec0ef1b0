#pragma once

#include "derand/bits.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace derand {

/// 1-based state index. A fail automaton over [w] uses w + 1 as its fail state.
using State = std::uint32_t;
/// A d-bit input symbol as an unsigned integer, first bit most significant.
using Symbol = std::uint64_t;

/// Largest alphabet width for which a dense transition table is materialized.
inline constexpr unsigned kMaxTableBits = 26;

/// A (w,d)-automaton: a total map [w] x {0,1}^d -> [w] stored as a dense table.
class Automaton {
public:
    Automaton(std::uint32_t states, unsigned bits, std::vector<State> table);

    template <typename F>
    static Automaton from_function(std::uint32_t states, unsigned bits, F&& f) {
        std::vector<State> table;
        table.reserve(static_cast<std::size_t>(states) << bits);
        for (State q = 1; q <= states; ++q)
            for (Symbol z = 0; z < (Symbol{1} << bits); ++z)
                table.push_back(f(q, z));
        return Automaton(states, bits, std::move(table));
    }

    std::uint32_t states() const noexcept { return states_; }
    unsigned bits() const noexcept { return bits_; }
    Symbol alphabet_size() const noexcept { return Symbol{1} << bits_; }

    State next(State q, Symbol z) const noexcept {
        return table_[(static_cast<std::size_t>(q - 1) << bits_) | z];
    }
    std::span<const State> row(State q) const noexcept {
        return {table_.data() + (static_cast<std::size_t>(q - 1) << bits_), static_cast<std::size_t>(alphabet_size())};
    }
    std::span<const State> table() const noexcept { return table_; }

    bool valid_state(State q) const noexcept { return q >= 1 && q <= states_; }

    friend bool operator==(const Automaton&, const Automaton&) = default;

private:
    std::uint32_t states_;
    unsigned bits_;
    std::vector<State> table_;
};

/// A (w,d)-automaton with fail state: w + 1 states where w + 1 is absorbing.
class FailAutomaton {
public:
    /// `base` must have width + 1 states and an absorbing last state.
    explicit FailAutomaton(Automaton base);

    template <typename F>
    static FailAutomaton from_function(std::uint32_t width, unsigned bits, F&& f) {
        const State fail = width + 1;
        return FailAutomaton(Automaton::from_function(width + 1, bits, [&](State q, Symbol z) {
            return q == fail ? fail : static_cast<State>(f(q, z));
        }));
    }

    std::uint32_t width() const noexcept { return base_.states() - 1; }
    State fail_state() const noexcept { return base_.states(); }
    unsigned bits() const noexcept { return base_.bits(); }
    State next(State q, Symbol z) const noexcept { return base_.next(q, z); }
    const Automaton& automaton() const noexcept { return base_; }

    friend bool operator==(const FailAutomaton&, const FailAutomaton&) = default;

private:
    Automaton base_;
};

/// State after reading `input` in d-bit steps from q.
State run(const Automaton& a, State q, const BitString& input);
inline State run(const FailAutomaton& a, State q, const BitString& input) { return run(a.automaton(), q, input); }

/// The (w, d1+d2)-automaton that reads x with `first` and then y with `second`.
Automaton compose(const Automaton& first, const Automaton& second);

/// Adds an unreachable absorbing fail state w + 1.
FailAutomaton fail_lift(const Automaton& a);

/// Reads `bits` >= a.bits() per step and ignores all but the first a.bits() of them.
Automaton embed(const Automaton& a, unsigned bits);
FailAutomaton embed(const FailAutomaton& a, unsigned bits);

namespace fixtures {

/// w = 2, d = 1: bit 1 swaps the states.
Automaton toggle();
/// w = 2, d = 1: state 2 absorbing, state 1 moves to 2 on bit 1.
Automaton absorb();
/// The identity automaton Q(q; z) = q.
Automaton constant(std::uint32_t states = 2, unsigned bits = 1);
/// Every non-fail state moves to the fail state.
FailAutomaton all_to_fail(std::uint32_t width, unsigned bits);

} // namespace fixtures

/// Uniformly random transition table.
template <typename URBG>
Automaton random_automaton(std::uint32_t states, unsigned bits, URBG& rng) {
    std::uniform_int_distribution<State> pick(1, states);
    return Automaton::from_function(states, bits, [&](State, Symbol) { return pick(rng); });
}

/// Random fail automaton: every non-fail transition is uniform over [w+1].
template <typename URBG>
FailAutomaton random_fail_automaton(std::uint32_t width, unsigned bits, URBG& rng) {
    std::uniform_int_distribution<State> pick(1, width + 1);
    return FailAutomaton::from_function(width, bits, [&](State, Symbol) { return pick(rng); });
}

} // namespace derand
