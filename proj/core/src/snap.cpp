#include "derand/snap.hpp"

#include "derand/error.hpp"

#include <algorithm>
#include <string>

namespace derand {

namespace {

void check_unit(const Rational& p, const char* stage) {
    if (sgn(p) < 0 || p > 1)
        throw Error(stage, "probability " + to_string(p) + " outside [0,1]");
}

void check_delta(unsigned delta, const char* stage) {
    if (delta == 0 || 2 * delta > kMaxDyadicPrecision)
        throw Error(stage, "snap precision must satisfy 1 <= delta <= 31");
}

Dyadic floor_at(const Rational& p, unsigned delta) {
    Rational scaled = p * pow2(static_cast<long>(delta));
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return {q.get_ui(), delta};
}

} // namespace

Dyadic truncate(const Rational& p, unsigned delta) {
    check_unit(p, "truncate");
    if (delta > kMaxDyadicPrecision)
        throw Error("truncate", "precision exceeds 62 bits");
    return floor_at(p, delta);
}

Dyadic truncate(const Dyadic& p, unsigned delta) {
    if (delta >= p.precision)
        return p.at_precision(delta);
    return {p.numerator >> (p.precision - delta), delta};
}

Dyadic snap_prob(const Rational& p, const BitString& y) {
    check_unit(p, "snap");
    const unsigned delta = static_cast<unsigned>(y.size());
    check_delta(delta, "snap");
    Rational v = p - Rational(to_integer(y.to_uint())) * pow2(-2 * static_cast<long>(delta));
    if (sgn(v) < 0)
        v = 0;
    return floor_at(v, delta);
}

Dyadic snap_prob(const Dyadic& p, const BitString& y) {
    const unsigned delta = static_cast<unsigned>(y.size());
    check_delta(delta, "snap");
    if (std::max(p.precision, 2 * delta) > kMaxDyadicPrecision)
        return snap_prob(p.value(), y);
    return {snap_numerator(p.numerator, p.precision, y.to_uint(), delta), delta};
}

std::uint64_t snap_numerator(std::uint64_t num, unsigned precision, std::uint64_t y, unsigned delta) {
    const unsigned k = std::max(precision, 2 * delta);
    const std::uint64_t p = num << (k - precision);
    const std::uint64_t offset = y << (k - 2 * delta);
    if (p <= offset)
        return 0;
    return (p - offset) >> (k - delta);
}

SubstochasticMatrix snap_matrix(const SubstochasticMatrix& m, std::uint64_t y, unsigned delta) {
    check_delta(delta, "snap");
    if (m.precision() > kMaxDyadicPrecision || (delta < 64 && (y >> delta) != 0))
        throw Error("snap", "offset wider than delta bits");
    std::vector<std::uint64_t> out;
    out.reserve(m.numerators().size());
    for (std::uint64_t v : m.numerators())
        out.push_back(snap_numerator(v, m.precision(), y, delta));
    return SubstochasticMatrix(m.size(), delta, std::move(out));
}

SubstochasticMatrix snap_matrix(const SubstochasticMatrix& m, const BitString& y) {
    return snap_matrix(m, y.to_uint(), static_cast<unsigned>(y.size()));
}

FailAutomaton snap_automaton(const FailAutomaton& a, const BitString& y) {
    return canonical_automaton(snap_matrix(transition_matrix(a), y));
}

FailAutomaton snap_automaton(const FailAutomaton& a, std::uint64_t y, unsigned delta, unsigned bits) {
    FailAutomaton snapped = canonical_automaton(snap_matrix(transition_matrix(a), y, delta));
    return bits == delta ? snapped : embed(snapped, bits);
}

namespace {

// Entry-level instability at common precision k: with v = p - y 2^(k-2delta),
// e = 2^(k-2delta), g = 2^(k-delta), some multiple of g lies in (v-e, v+e].
bool entry_unstable(std::uint64_t num, unsigned precision, std::uint64_t y, unsigned delta) {
    const unsigned k = std::max(precision, 2 * delta);
    const std::int64_t p = static_cast<std::int64_t>(num) << (k - precision);
    const std::int64_t e = static_cast<std::int64_t>(1) << (k - 2 * delta);
    const std::int64_t g = static_cast<std::int64_t>(1) << (k - delta);
    const std::int64_t v = p - static_cast<std::int64_t>(y) * e;
    std::int64_t r = (v + e) % g;
    if (r < 0)
        r += g;
    return r < 2 * e;
}

} // namespace

bool snap_unstable(const SubstochasticMatrix& m, std::uint64_t y, unsigned delta) {
    check_delta(delta, "boundary_risk");
    return std::any_of(m.numerators().begin(), m.numerators().end(),
                       [&](std::uint64_t v) { return entry_unstable(v, m.precision(), y, delta); });
}

Rational boundary_risk(const SubstochasticMatrix& m, unsigned delta) {
    check_delta(delta, "boundary_risk");
    if (delta > 24)
        throw BudgetExceeded("boundary_risk", "2^delta offsets exceed the enumeration budget");
    std::uint64_t hits = 0;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << delta); ++y)
        hits += snap_unstable(m, y, delta) ? 1 : 0;
    return Rational(to_integer(hits)) * pow2(-static_cast<long>(delta));
}

bool snap_endpoint_stable(const SubstochasticMatrix& m, std::uint64_t y, unsigned delta) {
    check_delta(delta, "snap");
    const unsigned k = std::max(m.precision(), 2 * delta);
    const std::uint64_t e = std::uint64_t{1} << (k - 2 * delta);
    for (std::uint64_t v : m.numerators()) {
        const std::uint64_t p = v << (k - m.precision());
        const std::uint64_t base = snap_numerator(p, k, y, delta);
        if (snap_numerator(p + e, k, y, delta) != base)
            return false;
        // A negative lower endpoint snaps to zero through the clamp.
        const std::uint64_t lower = p >= e ? snap_numerator(p - e, k, y, delta) : 0;
        if (lower != base)
            return false;
    }
    return true;
}

} // namespace derand
