#include "helpers.hpp"

#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/gf2.hpp"

#include <random>

using namespace derand;
using namespace derand::fixtures;

TEST_CASE("GF(2^n)") {
    CHECK(smallest_irreducible(1) == 0b10);
    CHECK(smallest_irreducible(2) == 0b111);
    CHECK(smallest_irreducible(3) == 0b1011);
    CHECK(smallest_irreducible(4) == 0b10011);
    CHECK(smallest_irreducible(8) == 0x11b);
    CHECK_FALSE(is_irreducible(0b101));
    const GF2n f(4);
    for (std::uint64_t a = 1; a < 16; ++a) {
        int inverses = 0;
        for (std::uint64_t b = 1; b < 16; ++b)
            inverses += f.mul(a, b) == 1;
        CHECK(inverses == 1);
    }
    CHECK(f.mul(0b10, 0b1000) == 0b0011); // x * x^3 = x^4 = x + 1
}

TEST_CASE("perfect simulator") {
    const SimulatorHandle c = perfect_simulator(2, 1, 3, 2);
    for (std::uint64_t x = 0; x < 4; ++x)
        CHECK(c->evaluate(constant(), 2, x) == 2);
    const SimulatorHandle t = perfect_simulator(2, 1, 1, 1);
    CHECK(oracle::simulated(*t, toggle(), 1) == probs({"1/2", "1/2"}));
    const SimulatorHandle a = perfect_simulator(2, 1, 2, 2);
    CHECK(oracle::simulated(*a, absorb(), 1) == probs({"1/4", "3/4"}));
    CHECK(a->params().epsilon == 0);
    CHECK(perfect_simulator(3, 2, 2, 3)->params().epsilon == Q("3/8"));
    CHECK(perfect_simulator(3, 2, 2, 3, true)->params().epsilon == Q("1/2"));

    std::mt19937_64 rng(21);
    for (unsigned s = 1; s <= 12; s += 1) {
        const std::uint32_t w = 1 + s % 4;
        const SimulatorHandle sim = perfect_simulator(w, 2, 3, s);
        for (int t = 0; t < 3; ++t) {
            const Automaton q = random_automaton(w, 2, rng);
            for (State st = 1; st <= w; ++st)
                CHECK(oracle::tv(oracle::simulated(*sim, q, st), oracle::distribution(q, st, 3)) <=
                      w * oracle::pow2(-static_cast<long>(s)));
        }
    }
}

TEST_CASE("Nisan generator") {
    for (unsigned k = 0; k <= 4; ++k) {
        const NisanGenerator g(2, std::uint64_t{1} << k, 4);
        CHECK(g.seed_bits() == 4 * (1 + 2 * k));
        CHECK(g.output_bits() == (2u << k));
        CHECK(g.generate(5).size() == (2u << k));
    }
    // log m0 = 0: the first d bits of x
    const NisanGenerator id(2, 1, 3);
    for (std::uint64_t x = 0; x < 8; ++x)
        CHECK(id.generate(x) == BitString::from_uint(x >> 1, 2));
    // m0 = 2: G_1 = x_top || h(x)_top with h(x) = a x + b
    const NisanGenerator g(1, 2, 2);
    const GF2n f(2);
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        const std::uint64_t x = seed >> 4, a = (seed >> 2) & 3, b = seed & 3;
        const std::uint64_t hx = f.add(f.mul(a, x), b);
        CHECK(g.generate(seed) == BitString::from_uint(((x >> 1) << 1) | (hx >> 1), 2));
        CHECK(g.generate_word(seed) == g.generate(seed).to_uint());
    }
    CHECK_THROWS_AS(NisanGenerator(1, 3, 4), Error);

    // measured error on TOGGLE/ABSORB at w=2, d=1, m0=4, n=4
    const auto gen = std::make_shared<NisanGenerator>(1, 4, 4);
    const Rational e = certify_generator(*gen, 1, {toggle(), absorb()});
    CHECK(e < Q("1/4"));
    CHECK(certify_generator(*gen, 1, {}) == 1);
    const SimulatorHandle sim = nisan_simulator(2, 1, 4, 4, {toggle(), absorb()});
    CHECK(sim->params().epsilon == e);
    CHECK(sim->params().s == 20);
}

TEST_CASE("advice generators") {
    const auto zeros = constant_generator(BitString(4), 2);
    const AdviceHandle pa = prg_to_advice(zeros, 2, 1, 1);
    CHECK(pa->advice_bits() == 4);
    for (std::uint64_t x = 0; x < 4; ++x)
        CHECK(advice_simulate(*pa, toggle(), 1, x) == run(toggle(), 1, BitString(4)));

    const SimulatorHandle perfect = perfect_simulator(3, 1, 2, 3);
    const AdviceHandle ia = identity_advice(perfect);
    CHECK(ia->advice_bits() == 3);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 5; ++t) {
        const Automaton a = random_automaton(3, 1, rng);
        for (State q = 1; q <= 3; ++q)
            for (std::uint64_t x = 0; x < 8; ++x)
                CHECK(advice_simulate(*ia, a, q, x) == perfect->evaluate(a, q, x));
    }

    const auto gen = std::make_shared<NisanGenerator>(1, 4, 3);
    const SimulatorHandle ps = prg_simulator(gen, 2, 1, 1);
    const SimulatorHandle as = advice_simulator(prg_to_advice(gen, 2, 1, 1));
    for (std::uint64_t x = 0; x < (1u << gen->seed_bits()); ++x)
        CHECK(ps->evaluate(absorb(), 1, x) == as->evaluate(absorb(), 1, x));
}

TEST_CASE("decider advice") {
    CHECK(decider_threshold(Q("1/2"), 4) == 2);
    CHECK(decider_threshold(Q("3/8"), 4) == 1);
    CHECK(decider_threshold(Rational(1), 8) == 8);
    CHECK_THROWS_AS(decider_advice(2, 6), Error);

    const SimulatorHandle t = advice_simulator(decider_advice(2, 4));
    CHECK(t->params().s == 2);
    CHECK(oracle::simulated(*t, toggle(), 1) == probs({"1/2", "1/2"}));
    const SimulatorHandle c = advice_simulator(decider_advice(3, 8));
    CHECK(oracle::simulated(*c, constant(3, 1), 2) == probs({"0", "1", "0"}));

    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const Automaton a = random_automaton(3, 1, rng);
        for (State q = 1; q <= 3; ++q)
            CHECK(oracle::tv(oracle::simulated(*c, a, q), oracle::distribution(a, q, 3)) <= Q("3/16"));
    }
    const AdviceHandle padded = decider_advice(2, 4, 10);
    CHECK(padded->advice_bits() == 10);
    CHECK(padded->generate(3) == BitString::from_string("1100000000"));
}
