#include "derand/gf2.hpp"

#include "derand/error.hpp"

#include <bit>

namespace derand {

namespace {

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = poly_degree(m);
    for (int da = poly_degree(a); da >= dm; da = poly_degree(a))
        a ^= m << (da - dm);
    return a;
}

} // namespace

bool is_irreducible(std::uint64_t poly) {
    const int n = poly_degree(poly);
    if (n < 1)
        return false;
    // Trial division by every polynomial of degree 1..n/2.
    for (int k = 1; 2 * k <= n; ++k)
        for (std::uint64_t f = std::uint64_t{1} << k; f < (std::uint64_t{2} << k); ++f)
            if (poly_mod(poly, f) == 0)
                return false;
    return true;
}

std::uint64_t smallest_irreducible(unsigned n) {
    if (n < 1 || n > 32)
        throw Error("gf2", "field degree must lie in [1, 32]");
    for (std::uint64_t p = std::uint64_t{1} << n; p < (std::uint64_t{2} << n); ++p)
        if (is_irreducible(p))
            return p;
    throw Error("gf2", "no irreducible polynomial found");
}

GF2n::GF2n(unsigned n) : GF2n(n, smallest_irreducible(n)) {}

GF2n::GF2n(unsigned n, std::uint64_t modulus) : n_(n), modulus_(modulus) {
    if (n < 1 || n > 32 || poly_degree(modulus) != static_cast<int>(n))
        throw Error("gf2", "modulus must have degree n in [1, 32]");
}

std::uint64_t GF2n::mul(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t acc = 0;
    while (b != 0) {
        if (b & 1)
            acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> n_ & 1)
            a ^= modulus_;
    }
    return acc;
}

} // namespace derand
