#pragma once

#include "derand/ledger.hpp"
#include "derand/matrix.hpp"
#include "derand/sampler.hpp"
#include "derand/simulator.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace derand {

/// Derived constants of the SZA transformation for a base simulator of m0 steps.
struct SZAParams {
    std::uint32_t w = 0;
    Rational epsilon;
    unsigned s = 0;
    std::uint64_t m0 = 0;
    std::uint64_t m = 0;

    unsigned Delta = 0;        ///< ceil(log(w^2 / epsilon))
    Rational delta;            ///< sampler accuracy 2^(-2 Delta - 1)
    Rational gamma;            ///< sampler confidence 2 epsilon / w
    unsigned u = 0;            ///< least u with m0^u >= m
    std::uint64_t m_prime = 0; ///< m0^u
    SamplerHandle sampler;
    unsigned ell = 0;          ///< outer sampler seed
    unsigned d = 0;            ///< symbol width: max(sampler inner seed, Delta)
    Rational claimed_error;    ///< 12 m epsilon
    bool theorem_regime = false; ///< s <= m0 <= w holds

    unsigned seed_bits() const noexcept { return ell + u * Delta + d; }
    std::string describe() const;
};

/// Splits an SZA seed x || y_1 .. y_u || z.
struct SZASeed {
    BitString x;
    std::vector<std::uint64_t> y;
    std::uint64_t z = 0;

    static SZASeed split(const SZAParams& p, std::uint64_t seed);
    std::uint64_t join(const SZAParams& p) const;
};

/// Builds the parameters. `sampler_kind` is "shift" or "blocks".
SZAParams sza_params(std::uint32_t w, const Rational& epsilon, unsigned s, std::uint64_t m0, std::uint64_t m,
                     const std::string& sampler_kind = "shift", std::uint64_t max_blocks = std::uint64_t{1} << 20);
SZAParams sza_params(std::uint32_t w, const Rational& epsilon, unsigned s, std::uint64_t m0, std::uint64_t m,
                     SamplerHandle sampler);

/// Throws unless `sim` is an m0-step simulator for (w, d)-automata with fail state and seed s.
void check_base_simulator(const SZAParams& p, const Simulator& sim);

/// Pow-hat(Q, x)(q; z) = Sim(Q, q, Samp(x, z)); the sampler reads the first bits of z.
FailAutomaton pow_hat(const SZAParams& p, const Simulator& sim, const FailAutomaton& q, const BitString& x);
/// M(Pow-hat(Q, x)) without materializing the automaton.
SubstochasticMatrix pow_hat_matrix(const SZAParams& p, const Simulator& sim, const FailAutomaton& q, const BitString& x);

/// Pow(Q)(q; z) = Sim(Q, q, z), a (w, s)-automaton with fail state.
FailAutomaton pow_exact(const Simulator& sim, const FailAutomaton& q);

/// Q-hat_i[x, y]: Q-hat_0 = Q0, Q-hat_{i+1} = Snap(Pow-hat(Q-hat_i, x), y_{i+1}) read through d bits.
FailAutomaton q_hat(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0, const BitString& x,
                    const std::vector<std::uint64_t>& y, unsigned i);
/// The whole chain Q-hat_0 .. Q-hat_u.
std::vector<FailAutomaton> q_hat_chain(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0,
                                       const BitString& x, const std::vector<std::uint64_t>& y);
/// Analysis chain Q_0 .. Q_u with Q_{i+1} = Snap(Pow(Q_i), y_{i+1}).
std::vector<FailAutomaton> q_exact_chain(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0,
                                         const std::vector<std::uint64_t>& y);

enum class SZAMode {
    memo,      ///< materialize each Q-hat_i table
    on_demand, ///< two-subroutine recursion through the oracle interfaces
};

struct SZAResult {
    State state = 0;
    ResourceLedger ledger;
};

/// Q-hat_u[x, y](q; z). In on_demand mode the ledger records oracle invocations and seed
/// reads; `row_cache` keeps each computed row of Q-hat_i instead of recomputing it.
SZAResult sza_simulate(const SZAParams& p, const Simulator& sim, const FailAutomaton& q0, State q, std::uint64_t seed,
                       SZAMode mode = SZAMode::memo, bool row_cache = false);

struct LedgerReport {
    bool invocations_within_u = false;
    bool invocations_equal_u = false;
    bool seed_reads_at_most_one = false;
    SpaceEstimate space;

    bool pass() const noexcept { return invocations_within_u && seed_reads_at_most_one; }
    std::string describe() const;
};

/// Checks an on-demand ledger against u and fills the space estimate.
/// `advice_bits` is the base simulator's advice length (its seed length when unknown).
LedgerReport ledger_check(const ResourceLedger& ledger, const SZAParams& p, std::uint64_t advice_bits = 0);

/// The SZA transformation as a simulator for (w, d)-automata with fail state over m' steps,
/// claimed error 12 m epsilon, seed length ell + u Delta + d.
SimulatorHandle sza_simulator(const SZAParams& p, SimulatorHandle base);

} // namespace derand
