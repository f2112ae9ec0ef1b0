#pragma once

#include "derand/automaton.hpp"
#include "derand/bits.hpp"
#include "derand/rational.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace derand {

/// Parameters of an averaging (delta, gamma)-sampler for [w]-valued functions on s bits.
struct SamplerSpec {
    std::string kind;
    unsigned ell = 0; ///< outer seed bits
    unsigned d = 0;   ///< inner seed bits
    unsigned s = 0;   ///< output bits
    Rational delta;
    Rational gamma;
    std::uint32_t w = 0;
};

/// Samp: {0,1}^ell x {0,1}^d -> {0,1}^s.
class Sampler {
public:
    explicit Sampler(SamplerSpec spec);
    virtual ~Sampler() = default;

    const SamplerSpec& spec() const noexcept { return spec_; }

    /// Output as an s-bit integer. x must have ell bits and z < 2^d.
    virtual std::uint64_t sample(const BitString& x, std::uint64_t z) const = 0;
    BitString sample(const BitString& x, const BitString& z) const;

private:
    SamplerSpec spec_;
};

using SamplerHandle = std::shared_ptr<const Sampler>;

/// x is k independent s-bit blocks; z picks block z (values past k clamp to the last block).
/// k is the least integer with 2w exp(-2k(delta/w)^2) <= gamma.
SamplerHandle blocks_sampler(unsigned s, const Rational& delta, const Rational& gamma, std::uint32_t w,
                             std::uint64_t max_blocks = std::uint64_t{1} << 20);

/// ell = d = s and Samp(x, z) = x XOR z: for every x the output is uniform, so this is
/// an exact (0, 0)-sampler, at the price of an inner seed as long as the output.
SamplerHandle shift_sampler(unsigned s, std::uint32_t w);

/// Block count the blocks sampler needs for (delta, gamma, w).
std::uint64_t blocks_needed(const Rational& delta, const Rational& gamma, std::uint32_t w);

/// f(Samp(x, U_d)) is within delta of f(U_s). `f` has 2^s entries in [1, w].
bool is_delta_good(const Sampler& samp, const BitString& x, const std::vector<State>& f, const Rational& delta);
/// Exact TV distance between f(Samp(x, U_d)) and f(U_s).
Rational sample_deviation(const Sampler& samp, const BitString& x, const std::vector<State>& f);

struct BadFraction {
    Rational fraction;
    std::uint64_t bad = 0;
    std::uint64_t total = 0;
    bool exhaustive = true;
};

/// Fraction of x that are not delta-good: all 2^ell of them when ell <= budget_bits,
/// otherwise `samples` uniform draws from `rng`.
BadFraction bad_fraction(const Sampler& samp, const std::vector<State>& f, const Rational& delta,
                         unsigned budget_bits, std::uint64_t samples, std::mt19937_64& rng);

} // namespace derand
