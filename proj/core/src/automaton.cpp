#include "derand/automaton.hpp"

#include "derand/error.hpp"

#include <string>

namespace derand {

Automaton::Automaton(std::uint32_t states, unsigned bits, std::vector<State> table)
    : states_(states), bits_(bits), table_(std::move(table)) {
    if (states == 0)
        throw Error("automaton", "state count must be positive");
    if (bits > kMaxTableBits)
        throw BudgetExceeded("automaton", "alphabet of " + std::to_string(bits) + " bits is too wide to tabulate");
    if (table_.size() != (static_cast<std::size_t>(states) << bits))
        throw Error("automaton", "table must have w*2^d entries");
    for (State r : table_)
        if (r < 1 || r > states)
            throw Error("automaton", "transition target " + std::to_string(r) + " outside [1," + std::to_string(states) + "]");
}

FailAutomaton::FailAutomaton(Automaton base) : base_(std::move(base)) {
    if (base_.states() < 1)
        throw Error("fail-automaton", "missing fail state");
    const State fail = base_.states();
    for (State r : base_.row(fail))
        if (r != fail)
            throw Error("fail-automaton", "fail state must be absorbing");
}

State run(const Automaton& a, State q, const BitString& input) {
    if (!a.valid_state(q))
        throw Error("run", "start state " + std::to_string(q) + " out of range");
    const unsigned d = a.bits();
    if (d == 0) {
        if (!input.empty())
            throw Error("run", "a 0-bit automaton reads no input");
        return q;
    }
    if (input.size() % d != 0)
        throw Error("run", "input length " + std::to_string(input.size()) + " is not a multiple of d=" + std::to_string(d));
    for (std::size_t pos = 0; pos < input.size(); pos += d)
        q = a.next(q, input.to_uint(pos, d));
    return q;
}

Automaton compose(const Automaton& first, const Automaton& second) {
    if (first.states() != second.states())
        throw Error("compose", "automata have different state counts");
    const unsigned d2 = second.bits();
    return Automaton::from_function(first.states(), first.bits() + d2, [&](State q, Symbol xy) {
        return second.next(first.next(q, xy >> d2), xy & ((Symbol{1} << d2) - 1));
    });
}

FailAutomaton fail_lift(const Automaton& a) {
    return FailAutomaton::from_function(a.states(), a.bits(), [&](State q, Symbol z) { return a.next(q, z); });
}

Automaton embed(const Automaton& a, unsigned bits) {
    if (bits < a.bits())
        throw Error("embed", "cannot embed into a narrower alphabet");
    const unsigned drop = bits - a.bits();
    return Automaton::from_function(a.states(), bits, [&](State q, Symbol z) { return a.next(q, z >> drop); });
}

FailAutomaton embed(const FailAutomaton& a, unsigned bits) { return FailAutomaton(embed(a.automaton(), bits)); }

namespace fixtures {

Automaton toggle() { return Automaton(2, 1, {1, 2, 2, 1}); }

Automaton absorb() { return Automaton(2, 1, {1, 2, 2, 2}); }

Automaton constant(std::uint32_t states, unsigned bits) {
    return Automaton::from_function(states, bits, [](State q, Symbol) { return q; });
}

FailAutomaton all_to_fail(std::uint32_t width, unsigned bits) {
    return FailAutomaton::from_function(width, bits, [&](State, Symbol) { return width + 1; });
}

} // namespace fixtures

} // namespace derand
