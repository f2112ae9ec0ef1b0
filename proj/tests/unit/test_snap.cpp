#include "helpers.hpp"

#include "derand/error.hpp"
#include "derand/matrix.hpp"
#include "derand/snap.hpp"

#include <random>

using namespace derand;
using namespace derand::fixtures;

TEST_CASE("truncate") {
    CHECK(truncate(Rational(0), 3).value() == 0);
    CHECK(truncate(Q("3/4"), 1).value() == Q("1/2"));
    CHECK(truncate(Rational(1), 3).value() == 1);
    CHECK_THROWS_AS(truncate(Q("5/4"), 2), Error);
}

TEST_CASE("snap_prob") {
    for (std::uint64_t y = 0; y < 8; ++y)
        CHECK(snap_prob(Rational(0), BitString::from_uint(y, 3)).value() == 0);
    CHECK(snap_prob(Q("3/4"), BitString::from_string("1")).value() == Q("1/2"));
    CHECK(snap_prob(Rational(1), BitString::from_string("1")).value() == Q("1/2"));
    CHECK(snap_prob(Dyadic(3, 2), BitString::from_string("1")).value() == Q("1/2"));
}

TEST_CASE("snap agrees with the displayed formula") {
    for (unsigned D = 1; D <= 5; ++D)
        for (std::uint64_t num = 0; num <= (std::uint64_t{1} << (2 * D + 1)); ++num) {
            const Rational p = Rational(static_cast<unsigned long>(num)) * oracle::pow2(-static_cast<long>(2 * D + 1));
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y) {
                const Rational s = snap_prob(p, BitString::from_uint(y, D)).value();
                CHECK(s == oracle::snap(p, y, D));
                CHECK(s <= p);
                CHECK(p <= s + oracle::pow2(1 - static_cast<long>(D)));
            }
        }
    // non-dyadic input
    CHECK(snap_prob(Q("1/3"), BitString::from_string("01")).value() == oracle::snap(Q("1/3"), 1, 2));
}

TEST_CASE("snap_matrix") {
    CHECK(snap_matrix(SubstochasticMatrix(2, 3), BitString::from_string("10")) == SubstochasticMatrix(2, 2));
    const SubstochasticMatrix m(2, 2, {3, 1, 0, 4});
    CHECK(snap_matrix(m, BitString::from_string("1")) == SubstochasticMatrix(2, 1, {1, 0, 0, 1}));

    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        const SubstochasticMatrix r = transition_matrix(random_fail_automaton(3, 4, rng));
        const SubstochasticMatrix s = snap_matrix(r, t % 8, 3);
        for (State q = 1; q <= 3; ++q)
            CHECK(RationalMatrix::from(s)(q, 1) + RationalMatrix::from(s)(q, 2) + RationalMatrix::from(s)(q, 3) <=
                  RationalMatrix::from(r)(q, 1) + RationalMatrix::from(r)(q, 2) + RationalMatrix::from(r)(q, 3));
    }
}

TEST_CASE("snap_automaton") {
    CHECK(transition_matrix(snap_automaton(all_to_fail(2, 2), BitString::from_string("101"))) ==
          SubstochasticMatrix(2, 3));
    // CONST with y = 0: entries 1 and 0 are already multiples, so the self loops survive
    const FailAutomaton c = snap_automaton(fail_lift(constant()), BitString::from_string("00"));
    CHECK(transition_matrix(c) == SubstochasticMatrix(2, 2, {4, 0, 0, 4}));
    const FailAutomaton e = snap_automaton(fail_lift(absorb()), 1, 2, 5);
    CHECK(e.bits() == 5);
    CHECK(RationalMatrix::from(transition_matrix(e)) ==
          RationalMatrix::from(transition_matrix(snap_automaton(fail_lift(absorb()), BitString::from_string("01")))));
}

TEST_CASE("snap closeness") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        const std::uint32_t w = 1 + t % 4;
        const FailAutomaton a = random_fail_automaton(w, 1 + t % 3, rng);
        for (unsigned D = 1; D <= 8; ++D)
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y)
                CHECK(rho(a, snap_automaton(a, BitString::from_uint(y, D))) <= w * oracle::pow2(1 - static_cast<long>(D)));
    }
}

namespace {

// Instability straight from the definition: some entry's snap changes when the entry
// moves anywhere in [p - 2^-2D, p + 2^-2D] (clamped to [0, 1]); checked on the grid of
// precision 2D + 2, which contains both endpoints.
bool unstable_by_grid(const SubstochasticMatrix& m, std::uint64_t y, unsigned D) {
    const unsigned P = std::max(m.precision(), 2 * D) + 2;
    for (std::uint64_t num : m.numerators()) {
        const Rational p = Rational(static_cast<unsigned long>(num)) * oracle::pow2(-static_cast<long>(m.precision()));
        const Rational s = oracle::snap(p, y, D);
        const Rational step = oracle::pow2(-static_cast<long>(P));
        for (Rational v = p - oracle::pow2(-2 * static_cast<long>(D)); v <= p + oracle::pow2(-2 * static_cast<long>(D)); v += step) {
            if (v < 0 || v > 1)
                continue;
            if (oracle::snap(v, y, D) != s)
                return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("boundary risk") {
    // zero matrix: at most 2 risky offsets per entry
    for (unsigned D = 1; D <= 6; ++D) {
        const Rational r = boundary_risk(SubstochasticMatrix(2, 4), D);
        CHECK(r <= 4 * 2 * oracle::pow2(-static_cast<long>(D)));
    }
    for (std::uint64_t num = 0; num <= 16; ++num)
        for (unsigned D = 1; D <= 6; ++D)
            CHECK(boundary_risk(SubstochasticMatrix(1, 4, {num}), D) <= oracle::pow2(1 - static_cast<long>(D)));

    std::mt19937_64 rng(8);
    for (int t = 0; t < 12; ++t) {
        const std::uint32_t w = 1 + t % 3;
        const unsigned D = 1 + t % 5;
        const SubstochasticMatrix m = transition_matrix(random_fail_automaton(w, 2 * D + 1, rng));
        CHECK(boundary_risk(m, D) <= Rational(w * w) * oracle::pow2(1 - static_cast<long>(D)));
        std::uint64_t unstable = 0;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y) {
            const bool flagged = snap_unstable(m, y, D);
            unstable += flagged;
            // outside the event, the whole perturbation interval snaps identically
            if (!flagged) {
                CHECK_FALSE(unstable_by_grid(m, y, D));
                CHECK(snap_endpoint_stable(m, y, D));
            }
        }
        CHECK(boundary_risk(m, D) == Rational(static_cast<unsigned long>(unstable)) / Rational(1ul << D));
    }
}
