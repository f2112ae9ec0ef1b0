#include "helpers.hpp"

#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/targeted_prg.hpp"
#include "derand/uniform.hpp"

#include <random>

using namespace derand;
using namespace derand::fixtures;

TEST_CASE("layered helpers") {
    const Automaton p = pad_with_dummies(toggle(), 4);
    CHECK(p.states() == 4);
    CHECK(p.next(1, 1) == 2);
    CHECK(p.next(3, 1) == 3);
    CHECK(p.next(4, 0) == 4);

    const Automaton l = layered_automaton(absorb(), 3);
    CHECK(l.states() == 6);
    CHECK(l.next(1, 1) == 4); // (layer 1, q=1) -> (layer 2, q=2)
    CHECK(l.next(1, 0) == 3);
    CHECK(l.next(3, 1) == 6);
    CHECK(l.next(5, 0) == 5); // last layer loops
    CHECK(l.next(6, 1) == 6);
}

TEST_CASE("conditional probabilities generator") {
    const auto prg = cond_prob_prg(perfect_simulator(4, 1, 2, 2), 2, 1, 2);
    CHECK(prg->params().s == 2);
    CHECK(prg->params().m == 2);
    for (std::uint64_t x = 0; x < 4; ++x)
        CHECK(prg->generate(toggle(), 1, x).size() == 2);
    // constant automaton stays put
    for (State q = 1; q <= 2; ++q)
        CHECK(as_dist(pushforward(*prg, constant(), q)) == as_dist(StateDistribution::point(2, q)));
    // exact simulator gives the exact distribution
    CHECK(as_dist(pushforward(*prg, toggle(), 1)) == probs({"1/2", "1/2"}));
    CHECK(as_dist(pushforward(*prg, absorb(), 1)) == probs({"1/4", "3/4"}));

    // output_counts agrees with seed-by-seed generation
    std::mt19937_64 rng(4);
    const auto coarse = cond_prob_prg(perfect_simulator(6, 1, 3, 3), 2, 1, 3);
    for (int t = 0; t < 10; ++t) {
        const Automaton a = random_automaton(2, 1, rng);
        std::map<BitString, std::uint64_t> counts;
        for (std::uint64_t x = 0; x < 8; ++x)
            ++counts[coarse->generate(a, 2, x)];
        CHECK(coarse->output_counts(a, 2) == counts);
        for (std::uint64_t x = 0; x < 8; ++x)
            CHECK(run(a, 2, coarse->generate(a, 2, x)) == coarse->target(a, 2, x));
    }

    GreedyTrace trace;
    const BitString out = prg->greedy(absorb(), 1, 2, &trace);
    CHECK(trace.target == 2);
    CHECK(trace.target_count == 3);
    CHECK(trace.steps.size() == 2);
    CHECK(trace.max_drop() == 0);
    CHECK(run(absorb(), 1, out) == 2);

    CHECK_THROWS_AS(cond_prob_prg(perfect_simulator(3, 1, 2, 2), 2, 1, 2), Error);
    CHECK_THROWS_AS(cond_prob_prg(perfect_simulator(4, 1, 2, 2, true), 2, 1, 2), Error);
}

TEST_CASE("binarize") {
    const FailAutomaton t1 = fail_lift(toggle());
    const Automaton b1 = binarize_automaton(t1);
    CHECK(b1.states() == 6);
    CHECK(b1.bits() == 1);
    for (State q = 1; q <= 3; ++q) {
        CHECK(binarize_start(q, 1) == 2 * q);
        CHECK(binarize_project(2 * q, 1) == q);
        for (Symbol z = 0; z < 2; ++z)
            CHECK(b1.next(2 * q, z) == 2 * t1.next(q, z));
    }

    const FailAutomaton t2 = embed(fail_lift(toggle()), 2);
    const Automaton b2 = binarize_automaton(t2);
    CHECK(b2.states() == 12);
    for (State q = 1; q <= 3; ++q)
        for (Symbol z = 0; z < 4; ++z) {
            const State r = run(b2, binarize_start(q, 2), BitString::from_uint(z, 2));
            CHECK(binarize_project(r, 2) == t2.next(q, z));
        }
    for (std::uint64_t z = 0; z < 16; ++z)
        CHECK(binarize_project(run(b2, binarize_start(3, 2), BitString::from_uint(z, 4)), 2) == 3);

    // exact advice over 4 bit-steps simulates 2 steps of the 2-bit automaton
    const AdviceHandle adv = identity_advice(perfect_simulator(12, 1, 4, 4));
    const SimulatorHandle sim = binarize(adv, 2, 2);
    CHECK(sim->params().m == 2);
    CHECK(sim->params().fail_family);
    const FailAutomaton a2 = embed(fail_lift(absorb()), 2);
    CHECK(oracle::simulated(*sim, a2.automaton(), 1) == oracle::distribution(a2.automaton(), 1, 2));
}

TEST_CASE("state padding") {
    const FailAutomaton c = clock_automaton(absorb(), 2, 1);
    CHECK(c.width() == 6);
    for (State q = 1; q <= 2; ++q)
        for (std::uint64_t z = 0; z < 16; ++z) {
            const BitString in = BitString::from_uint(z, 4);
            const State r = run(c, q, in);
            CHECK(r <= 6);
            CHECK((r - 1) % 2 + 1 == run(absorb(), q, in.slice(0, 2)));
        }

    const SimulatorHandle inner = perfect_simulator(6, 1, 4, 4, true);
    const SimulatorHandle sim = pad_states(inner, 2, 1, 2);
    CHECK(sim->params().w == 2);
    CHECK(sim->params().m == 2);
    CHECK_FALSE(sim->params().fail_family);
    CHECK(oracle::simulated(*sim, absorb(), 1) == probs({"1/4", "3/4"}));
    CHECK_THROWS_AS(pad_states(inner, 2, 1, 5), Error);
}

TEST_CASE("cycle stage errors") {
    const AdviceFactory factory = [](std::uint32_t states, std::uint64_t steps, unsigned s) {
        return identity_advice(perfect_simulator(states, 1, steps, s));
    };
    CycleConfig cfg;
    cfg.sza_epsilon = pow2(-7);
    cfg.s = 2;
    try {
        cycle_compose(factory, cfg);
        FAIL("expected a stage error");
    } catch (const Error& e) {
        CHECK(e.stage() == "sza");
    }
    const AdviceFactory broken = [](std::uint32_t, std::uint64_t, unsigned) -> AdviceHandle {
        throw Error("", "no generator");
    };
    cfg.s = 1;
    try {
        cycle_compose(broken, cfg);
        FAIL("expected a stage error");
    } catch (const Error& e) {
        CHECK(e.stage() == "advgen");
    }
    const CycleResult r = cycle_compose(factory, cfg);
    REQUIRE(r.stages.size() >= 4);
    CHECK(r.prg->params().w == 2);
    CHECK(r.prg->params().m == 1);
}

TEST_CASE("triple wire format") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
        const Automaton a = random_automaton(1 + i % 5, 1 + i % 3, rng);
        const State q = 1 + static_cast<State>(i % a.states());
        BitString z;
        for (int k = 0; k < i; ++k)
            z.push_back(rng() & 1);
        const BitString enc = encode_triple(a, q, z);
        const unsigned eb = std::max(1u, static_cast<unsigned>(std::bit_width(a.states() - 1)));
        CHECK(enc.size() == 128 + a.states() * (std::size_t{1} << a.bits()) * eb + z.size());
        std::size_t pos = 0;
        const DecodedTriple t = decode_triple(enc, pos);
        CHECK(pos == enc.size());
        CHECK(t.automaton == a);
        CHECK(t.start == q);
        CHECK(t.z == z);
        std::size_t p2 = 0;
        CHECK_THROWS_AS(decode_triple(enc.slice(0, enc.size() - 1), p2), Error);
    }
    const BitString header = encode_triple(toggle(), 2, BitString::from_string("1"));
    CHECK(header.to_uint(0, 32) == 2);
    CHECK(header.to_uint(32, 32) == 1);
    CHECK(header.slice(64, 4) == BitString::from_string("0110")); // toggle table, r-1 in one bit
}

TEST_CASE("uniform advice") {
    const auto prg = cond_prob_prg(perfect_simulator(4, 1, 2, 2), 2, 1, 2);
    const AdviceHandle empty = uniform_advice({}, prg, 2);
    CHECK(empty->advice_bits() == 0);
    for (std::uint64_t x = 0; x < 4; ++x) {
        CHECK(advice_simulate(*empty, toggle(), 1, x) == 1);
        CHECK(advice_simulate(*empty, absorb(), 2, x) == 1);
    }

    ProgramRegistry reg = {{"toggle", [](std::uint32_t) { return std::pair{toggle(), State{1}}; }}};
    const AdviceHandle one = uniform_advice(reg, prg, 2);
    CHECK(one->advice_bits() == 128 + 4 + 2);
    for (std::uint64_t x = 0; x < 4; ++x) {
        CHECK(advice_simulate(*one, toggle(), 1, x) == run(toggle(), 1, prg->generate(toggle(), 1, x)));
        CHECK(advice_simulate(*one, toggle(), 2, x) == 1);
        CHECK(advice_simulate(*one, absorb(), 1, x) == 1);
    }
    CHECK_THROWS_AS(uniform_advice(reg, prg, 2, 100), Error);
}
