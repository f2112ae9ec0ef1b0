#pragma once

#include "derand/automaton.hpp"
#include "derand/bits.hpp"
#include "derand/matrix.hpp"

#include <cstdint>

namespace derand {

/// floor(2^delta p) 2^-delta.
Dyadic truncate(const Rational& p, unsigned delta);
Dyadic truncate(const Dyadic& p, unsigned delta);

/// Snap(p, y) = truncate(max(0, p - (0.y) 2^-|y|), |y|).
Dyadic snap_prob(const Rational& p, const BitString& y);
Dyadic snap_prob(const Dyadic& p, const BitString& y);

/// Integer kernel of Snap: p = num 2^-precision, offset y in [0, 2^delta).
/// Returns the numerator of the result at precision delta. No range check on p.
std::uint64_t snap_numerator(std::uint64_t num, unsigned precision, std::uint64_t y, unsigned delta);

SubstochasticMatrix snap_matrix(const SubstochasticMatrix& m, std::uint64_t y, unsigned delta);
SubstochasticMatrix snap_matrix(const SubstochasticMatrix& m, const BitString& y);

/// Canonical automaton of the snapped transition matrix; reads |y| bits per step.
FailAutomaton snap_automaton(const FailAutomaton& a, const BitString& y);
/// Same, embedded to read `bits` >= delta bits per step (extra bits ignored).
FailAutomaton snap_automaton(const FailAutomaton& a, std::uint64_t y, unsigned delta, unsigned bits);

/// True when some entry of m, shifted down by y 2^-2delta, lies within 2^-2delta of a
/// multiple of 2^-delta, i.e. a perturbation of that size could change its snap.
bool snap_unstable(const SubstochasticMatrix& m, std::uint64_t y, unsigned delta);

/// Probability over uniform y in {0,1}^delta of the instability event.
Rational boundary_risk(const SubstochasticMatrix& m, unsigned delta);

/// Moving any single entry to either endpoint p +- 2^-2delta leaves its snap unchanged.
bool snap_endpoint_stable(const SubstochasticMatrix& m, std::uint64_t y, unsigned delta);

} // namespace derand
