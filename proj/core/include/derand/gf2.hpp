#pragma once

#include <cstdint>

namespace derand {

/// GF(2^n) for 1 <= n <= 32, elements as bit vectors of polynomial coefficients.
class GF2n {
public:
    /// Uses the numerically smallest irreducible polynomial of degree n.
    explicit GF2n(unsigned n);
    GF2n(unsigned n, std::uint64_t modulus);

    unsigned degree() const noexcept { return n_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t order() const noexcept { return std::uint64_t{1} << n_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return a ^ b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;

private:
    unsigned n_;
    std::uint64_t modulus_;
};

/// True if the polynomial (bit i = coefficient of x^i) is irreducible over GF(2).
bool is_irreducible(std::uint64_t poly);
/// Smallest irreducible polynomial of degree n, including the x^n term.
std::uint64_t smallest_irreducible(unsigned n);

} // namespace derand
