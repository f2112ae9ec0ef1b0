#pragma once

#include "derand/gf2.hpp"
#include "derand/simulator.hpp"

#include <cstdint>
#include <vector>

namespace derand {

/// Quantizes the exact m0-step distribution to multiples of 2^-s (nearest, ties up) and
/// returns the state whose cumulative interval contains the seed index. Claimed error is
/// min(1, W 2^-s) with W the number of states, or 0 when s >= m0 d.
SimulatorHandle perfect_simulator(std::uint32_t w, unsigned d, std::uint64_t m0, unsigned s, bool fail_family = false);

/// Recursive hash-based generator: G_0(x) = first d bits of x,
/// G_k(x; h_1..h_k) = G_{k-1}(x; h_1..h_{k-1}) || G_{k-1}(h_k(x); h_1..h_{k-1}),
/// with h(x) = a x + b over GF(2^n). Seed layout x || a_1 b_1 || ... || a_k b_k.
class NisanGenerator final : public Generator {
public:
    NisanGenerator(unsigned d, std::uint64_t m0, unsigned n);

    std::string kind() const override { return "nisan"; }
    BitString generate(std::uint64_t seed) const override;
    /// Output as an integer, first bit most significant; requires m0 d <= 64.
    std::uint64_t generate_word(std::uint64_t seed) const;

    unsigned field_bits() const noexcept { return field_.degree(); }
    unsigned levels() const noexcept { return levels_; }

private:
    void expand(std::uint64_t x, unsigned level, std::uint64_t seed, BitString& out) const;

    unsigned d_;
    unsigned levels_;
    GF2n field_;
};

/// Default field width max(d, ceil(log w) + 2).
unsigned nisan_default_field_bits(std::uint32_t w, unsigned d);

/// Sim(Q, q, x) = Q^m(q; gen(x)). Claimed error is supplied by the caller.
SimulatorHandle prg_simulator(GeneratorHandle gen, std::uint32_t w, unsigned d, Rational epsilon, bool fail_family = false);

/// Worst TV over every (Q, q) in the family between Q^m(q; gen(U_s)) and Q^m(q; U_md),
/// by exhaustive seed enumeration; 1 for an empty family.
Rational certify_generator(const Generator& gen, unsigned d, const std::vector<Automaton>& family);

/// Nisan simulator whose claimed error is certified on `family` (1 when the family is empty).
/// n = 0 selects the default field width.
SimulatorHandle nisan_simulator(std::uint32_t w, unsigned d, std::uint64_t m0, unsigned n = 0,
                                const std::vector<Automaton>& family = {});

/// Gen' = gen and S(Q, q, y) = run(Q, q, y); a = m d.
AdviceHandle prg_to_advice(GeneratorHandle gen, std::uint32_t w, unsigned d, Rational epsilon, bool fail_family = false);

/// Gen' = identity on s bits and S(Q, q, x) = sim(Q, q, x); a = s.
AdviceHandle identity_advice(SimulatorHandle sim);

/// Advice generator for (w,1)-automata over w steps at resolution K (a power of two):
/// the seed x in [0, K) is the advice (padded with zeroes to `advice_bits`). For each
/// state r, dt_r = largest t with Pr[Q^w(q; U_w) = r] >= t/K, decided exactly. The
/// output is the first r whose running total of dt exceeds x; the K - sum dt seeds left
/// over go one each to the states with fractional K Pr[r], in state order.
AdviceHandle decider_advice(std::uint32_t w, std::uint64_t K, std::uint64_t advice_bits = 0);

/// The decider's threshold: largest t with p >= t/K.
std::uint64_t decider_threshold(const Rational& p, std::uint64_t K);

} // namespace derand
