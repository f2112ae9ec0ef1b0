#pragma once

#include "derand/simulator.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace derand {

/// A named rule producing (Q_w, q_w) for each requested width.
struct ProgramDescriptor {
    std::string name;
    std::function<std::pair<Automaton, State>(std::uint32_t w)> produce;
};

using ProgramRegistry = std::vector<ProgramDescriptor>;

/// Triple (Q, q, z) in the advice wire format: big-endian fields
/// w:32 | d:32 | table: w 2^d entries of (r-1) in max(1, bitwidth(w-1)) bits | q:32 | |z|:32 | z.
BitString encode_triple(const Automaton& a, State q, const BitString& z);

struct DecodedTriple {
    Automaton automaton;
    State start = 0;
    BitString z;
};

/// Decodes the triple starting at `pos`, advancing it; throws on truncated input.
DecodedTriple decode_triple(const BitString& advice, std::size_t& pos);

/// Gen'(x) = concatenation over the registry of (Q_w, q_w, tgen(Q_w, q_w, x)); the interpreter
/// returns run(Q, q, z) for the first triple matching (Q, q), and state 1 otherwise.
/// `max_advice_bits` = 0 means unbounded.
AdviceHandle uniform_advice(ProgramRegistry registry, TargetedHandle tgen, std::uint32_t w,
                            std::uint64_t max_advice_bits = 0);

} // namespace derand
