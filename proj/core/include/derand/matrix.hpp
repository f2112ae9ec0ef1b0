#pragma once

#include "derand/automaton.hpp"
#include "derand/rational.hpp"

#include <cstdint>
#include <vector>

namespace derand {

/// Largest binary precision carried by a Dyadic (numerators are 64-bit).
inline constexpr unsigned kMaxDyadicPrecision = 62;

/// numerator * 2^-precision with 0 <= value <= 1.
struct Dyadic {
    std::uint64_t numerator = 0;
    unsigned precision = 0;

    Dyadic() = default;
    Dyadic(std::uint64_t num, unsigned prec);

    Rational value() const;
    /// Same value at a higher precision.
    Dyadic at_precision(unsigned prec) const;

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.value() == b.value(); }
};

/// A w x w matrix of dyadics sharing one precision, every row summing to at most 1.
class SubstochasticMatrix {
public:
    SubstochasticMatrix(std::uint32_t w, unsigned precision);
    SubstochasticMatrix(std::uint32_t w, unsigned precision, std::vector<std::uint64_t> numerators);

    std::uint32_t size() const noexcept { return w_; }
    unsigned precision() const noexcept { return precision_; }

    /// 1-based indices.
    std::uint64_t numerator(State q, State r) const noexcept { return num_[(q - 1) * w_ + (r - 1)]; }
    Dyadic at(State q, State r) const { return {numerator(q, r), precision_}; }
    std::uint64_t row_sum(State q) const noexcept;

    const std::vector<std::uint64_t>& numerators() const noexcept { return num_; }

    friend bool operator==(const SubstochasticMatrix&, const SubstochasticMatrix&) = default;

private:
    void check() const;

    std::uint32_t w_;
    unsigned precision_;
    std::vector<std::uint64_t> num_;
};

/// Dense square matrix of exact rationals (entries may be negative).
class RationalMatrix {
public:
    explicit RationalMatrix(std::uint32_t n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
    static RationalMatrix identity(std::uint32_t n);
    static RationalMatrix from(const SubstochasticMatrix& m);

    std::uint32_t size() const noexcept { return n_; }
    Rational& operator()(State q, State r) { return a_[(q - 1) * n_ + (r - 1)]; }
    const Rational& operator()(State q, State r) const { return a_[(q - 1) * n_ + (r - 1)]; }

    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const RationalMatrix& o) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::uint32_t n_;
    std::vector<Rational> a_;
};

/// Maximum over rows of the sum of absolute entries.
Rational matrix_norm(const RationalMatrix& m);

/// w x w matrix over the non-fail states; entry (q,r) is Pr_z[Q(q;z) = r], precision d.
SubstochasticMatrix transition_matrix(const FailAutomaton& a);

/// Q(M): state q on symbol z in [2^d] moves to the smallest r with z*2^-d <= sum_{r'<=r} M(q,r'),
/// else to the fail state. Reads `precision` bits per step.
FailAutomaton canonical_automaton(const SubstochasticMatrix& m);

/// ||M(Q) - M(Q')|| over the non-fail states; alphabets may differ.
Rational rho(const FailAutomaton& a, const FailAutomaton& b);

/// Exact k-step transition matrix over the non-fail states, i.e. M(Q)^k.
RationalMatrix transition_power(const FailAutomaton& a, std::uint64_t k);

} // namespace derand
