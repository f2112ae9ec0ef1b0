#include "helpers.hpp"

#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/sza.hpp"

#include <random>

using namespace derand;

namespace {

struct Setup {
    SZAParams p;
    SimulatorHandle base;
};

Setup small(std::uint64_t m) {
    SZAParams p = sza_params(2, Q("1/2"), 1, 2, m);
    SimulatorHandle base = perfect_simulator(p.w, p.d, p.m0, p.s, true);
    return {std::move(p), std::move(base)};
}

} // namespace

TEST_CASE("derived parameters") {
    const SZAParams p = sza_params(3, pow2(-10), 4, 4, 16);
    CHECK(p.Delta == 14); // 2^13 < 9 * 2^10 <= 2^14
    CHECK(p.delta == pow2(-29));
    CHECK(p.gamma == Q("1/1536"));
    CHECK(p.u == 2);
    CHECK(p.m_prime == 16);
    CHECK(p.ell == 4);
    CHECK(p.d == 14);
    CHECK(p.seed_bits() == 4 + 2 * 14 + 14);
    CHECK(p.claimed_error == Q("192/1024"));
    CHECK_FALSE(p.theorem_regime); // m0 = 4 > w = 3
    CHECK(sza_params(4, pow2(-10), 4, 4, 16).theorem_regime);

    CHECK(sza_params(3, pow2(-10), 4, 4, 4).u == 1);
    CHECK(sza_params(3, pow2(-10), 4, 4, 17).u == 3);
    CHECK(sza_params(2, Q("1/2"), 1, 1, 1).u == 1);
    CHECK_FALSE(sza_params(2, Q("1/2"), 1, 4, 4).theorem_regime);
    CHECK(sza_params(2, Q("1/2"), 1, 2, 64).claimed_error == 384);

    CHECK_THROWS_AS(sza_params(3, pow2(-10), 5, 4, 16), Error);
    CHECK_THROWS_AS(sza_params(2, Q("1/2"), 1, 1, 2), Error);
    CHECK_THROWS_AS(sza_params(2, Rational(0), 1, 2, 2), Error);
    CHECK_THROWS_AS(sza_params(2, Q("1/2"), 1, 2, 2, "nope"), Error);
}

TEST_CASE("seed split and join") {
    const SZAParams p = sza_params(3, pow2(-10), 4, 4, 16);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t seed = rng() >> (64 - p.seed_bits());
        const SZASeed parts = SZASeed::split(p, seed);
        CHECK(parts.x.size() == p.ell);
        CHECK(parts.y.size() == p.u);
        CHECK(parts.x.to_uint() == seed >> (p.seed_bits() - p.ell));
        CHECK(parts.z == (seed & ((std::uint64_t{1} << p.d) - 1)));
        CHECK(parts.join(p) == seed);
    }
}

TEST_CASE("base simulator checks") {
    const Setup st = small(4);
    CHECK_NOTHROW(check_base_simulator(st.p, *st.base));
    CHECK_THROWS_AS(check_base_simulator(st.p, *perfect_simulator(st.p.w, st.p.d, st.p.m0, st.p.s)), Error);
    CHECK_THROWS_AS(check_base_simulator(st.p, *perfect_simulator(st.p.w, st.p.d, 3, st.p.s, true)), Error);
}

TEST_CASE("fail handling") {
    const Setup st = small(4);
    std::mt19937_64 rng(2);
    const FailAutomaton q0 = embed(fail_lift(random_automaton(2, 1, rng)), st.p.d);
    for (std::uint64_t seed = 0; seed < (std::uint64_t{1} << st.p.seed_bits()); seed += 7) {
        CHECK(sza_simulate(st.p, *st.base, q0, 3, seed).state == 3);
        CHECK(sza_simulate(st.p, *st.base, q0, 3, seed, SZAMode::on_demand).state == 3);
    }

    const FailAutomaton dead = fixtures::all_to_fail(2, st.p.d);
    for (std::uint64_t x = 0; x < 2; ++x)
        for (std::uint64_t y = 0; y < 64; y += 5) {
            const auto chain = q_hat_chain(st.p, *st.base, dead, BitString::from_uint(x, 1), {y >> 3, y & 7});
            REQUIRE(chain.size() == 3);
            for (const FailAutomaton& a : chain)
                for (State q = 1; q <= 3; ++q)
                    for (Symbol z = 0; z < a.automaton().alphabet_size(); ++z)
                        CHECK(a.next(q, z) == 3);
        }
}

TEST_CASE("memo and on-demand agree") {
    for (std::uint64_t m : {2, 8}) {
        const Setup st = small(m);
        std::mt19937_64 rng(m);
        const FailAutomaton q0 = embed(fail_lift(random_automaton(2, 1, rng)), st.p.d);
        for (int i = 0; i < 40; ++i) {
            const std::uint64_t seed = rng() >> (64 - st.p.seed_bits());
            const State q = 1 + (i & 1);
            const SZAResult memo = sza_simulate(st.p, *st.base, q0, q, seed, SZAMode::memo);
            const SZAResult od = sza_simulate(st.p, *st.base, q0, q, seed, SZAMode::on_demand);
            const SZAResult cached = sza_simulate(st.p, *st.base, q0, q, seed, SZAMode::on_demand, true);
            CHECK(memo.state == od.state);
            CHECK(cached.state == od.state);
            CHECK(od.ledger.max_invocations() == st.p.u);
            CHECK(od.ledger.max_seed_reads() <= 1);
            const LedgerReport lr = ledger_check(od.ledger, st.p, st.p.s);
            CHECK(lr.pass());
            CHECK(lr.invocations_equal_u);
            CHECK(lr.space.invocations == st.p.u);
            CHECK(lr.space.total() > 0);
        }
    }
}

TEST_CASE("simulator wrapper") {
    const Setup st = small(4);
    const SimulatorHandle sim = sza_simulator(st.p, st.base);
    CHECK(sim->params().s == st.p.seed_bits());
    CHECK(sim->params().m == 4);
    CHECK(sim->params().fail_family);
    CHECK(sim->params().epsilon == 1); // 12 * 4 / 2 clamps

    std::mt19937_64 rng(5);
    const FailAutomaton q0 = embed(fail_lift(random_automaton(2, 1, rng)), st.p.d);
    const auto bound = sim->bind(q0);
    for (State q = 1; q <= 2; ++q) {
        std::vector<std::uint64_t> counts(3, 0);
        for (std::uint64_t seed = 0; seed < (std::uint64_t{1} << st.p.seed_bits()); ++seed) {
            const State r = bound->evaluate(q, seed);
            CHECK(r == sza_simulate(st.p, *st.base, q0, q, seed).state);
            ++counts[r - 1];
        }
        CHECK(bound->seed_counts(q) == counts);
    }
}

TEST_CASE("exact chain matches Q-hat under an exact sampler") {
    const Setup st = small(4);
    std::mt19937_64 rng(9);
    const FailAutomaton q0 = embed(fail_lift(random_automaton(2, 1, rng)), st.p.d);
    // the shift sampler is exactly uniform, so Pow-hat equals Pow for every x
    for (std::uint64_t x = 0; x < 2; ++x)
        for (std::uint64_t y = 0; y < 64; ++y) {
            const std::vector<std::uint64_t> ys = {y >> 3, y & 7};
            const auto hat = q_hat_chain(st.p, *st.base, q0, BitString::from_uint(x, 1), ys);
            const auto exact = q_exact_chain(st.p, *st.base, q0, ys);
            REQUIRE(hat.size() == exact.size());
            for (std::size_t i = 0; i < hat.size(); ++i)
                CHECK(hat[i].automaton() == exact[i].automaton());
        }
}
