#include "derand/sampler.hpp"

#include "derand/error.hpp"

#include <cmath>
#include <string>

namespace derand {

Sampler::Sampler(SamplerSpec spec) : spec_(std::move(spec)) {
    if (spec_.s == 0 || spec_.s > 62 || spec_.d > 62)
        throw Error("sampler", "output and inner seed must fit in 62 bits");
}

BitString Sampler::sample(const BitString& x, const BitString& z) const {
    if (z.size() != spec_.d)
        throw Error("sampler", "inner seed must have " + std::to_string(spec_.d) + " bits");
    return BitString::from_uint(sample(x, z.to_uint()), spec_.s);
}

namespace {

void check_outer(const SamplerSpec& spec, const BitString& x) {
    if (x.size() != spec.ell)
        throw Error("sampler", "outer seed must have " + std::to_string(spec.ell) + " bits");
}

class BlocksSampler final : public Sampler {
public:
    BlocksSampler(SamplerSpec spec, std::uint64_t blocks) : Sampler(std::move(spec)), blocks_(blocks) {}

    std::uint64_t sample(const BitString& x, std::uint64_t z) const override {
        check_outer(spec(), x);
        const std::uint64_t block = z < blocks_ ? z : blocks_ - 1;
        return x.to_uint(block * spec().s, spec().s);
    }

private:
    std::uint64_t blocks_;
};

class ShiftSampler final : public Sampler {
public:
    using Sampler::Sampler;

    std::uint64_t sample(const BitString& x, std::uint64_t z) const override {
        check_outer(spec(), x);
        return x.to_uint() ^ z;
    }
};

bool hoeffding_ok(std::uint64_t k, double ratio, double gamma, std::uint32_t w) {
    return 2.0 * w * std::exp(-2.0 * static_cast<double>(k) * ratio * ratio) <= gamma;
}

} // namespace

std::uint64_t blocks_needed(const Rational& delta, const Rational& gamma, std::uint32_t w) {
    if (sgn(delta) <= 0 || delta >= 1 || sgn(gamma) <= 0 || gamma >= 1 || w == 0)
        throw Error("blocks_sampler", "delta and gamma must lie in (0,1)");
    const double ratio = to_double(delta) / w;
    const double g = to_double(gamma);
    const double estimate = std::log(2.0 * w / g) / (2.0 * ratio * ratio);
    if (!(estimate < 9.0e18))
        return UINT64_MAX;
    std::uint64_t k = estimate <= 1.0 ? 1 : static_cast<std::uint64_t>(std::ceil(estimate));
    // Correct the closed form for floating-point rounding at the boundary.
    while (k > 1 && hoeffding_ok(k - 1, ratio, g, w))
        --k;
    while (!hoeffding_ok(k, ratio, g, w))
        ++k;
    return k;
}

SamplerHandle blocks_sampler(unsigned s, const Rational& delta, const Rational& gamma, std::uint32_t w,
                             std::uint64_t max_blocks) {
    const std::uint64_t k = blocks_needed(delta, gamma, w);
    if (k > max_blocks)
        throw BudgetExceeded("blocks_sampler", "needs " + std::to_string(k) + " blocks, budget is " +
                                                   std::to_string(max_blocks));
    SamplerSpec spec{"blocks", static_cast<unsigned>(s * k), ceil_log2(k), s, delta, gamma, w};
    return std::make_shared<BlocksSampler>(std::move(spec), k);
}

SamplerHandle shift_sampler(unsigned s, std::uint32_t w) {
    return std::make_shared<ShiftSampler>(SamplerSpec{"shift", s, s, s, Rational(0), Rational(0), w});
}

Rational sample_deviation(const Sampler& samp, const BitString& x, const std::vector<State>& f) {
    const SamplerSpec& spec = samp.spec();
    if (spec.s > 24 || spec.d > 24)
        throw BudgetExceeded("is_delta_good", "seed spaces too large to enumerate");
    if (f.size() != (std::size_t{1} << spec.s))
        throw Error("is_delta_good", "f must have 2^s entries");
    std::uint32_t w = spec.w;
    for (State v : f) {
        if (v < 1)
            throw Error("is_delta_good", "f values must lie in [1, w]");
        w = std::max(w, v);
    }
    std::vector<std::uint64_t> sampled(w, 0), truth(w, 0);
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << spec.d); ++z)
        ++sampled[f[samp.sample(x, z)] - 1];
    for (State v : f)
        ++truth[v - 1];
    // Compare at the common denominator 2^(d+s).
    Integer diff = 0;
    for (std::uint32_t r = 0; r < w; ++r) {
        Integer a = to_integer(sampled[r]) << spec.s;
        Integer b = to_integer(truth[r]) << spec.d;
        diff += abs(a - b);
    }
    return Rational(diff) * pow2(-static_cast<long>(spec.d + spec.s + 1));
}

bool is_delta_good(const Sampler& samp, const BitString& x, const std::vector<State>& f, const Rational& delta) {
    return sample_deviation(samp, x, f) <= delta;
}

BadFraction bad_fraction(const Sampler& samp, const std::vector<State>& f, const Rational& delta,
                         unsigned budget_bits, std::uint64_t samples, std::mt19937_64& rng) {
    const unsigned ell = samp.spec().ell;
    BadFraction out;
    if (ell <= budget_bits) {
        out.total = std::uint64_t{1} << ell;
        for (std::uint64_t x = 0; x < out.total; ++x)
            out.bad += is_delta_good(samp, BitString::from_uint(x, ell), f, delta) ? 0 : 1;
    } else {
        if (samples == 0)
            throw BudgetExceeded("bad_fraction", "outer seed exceeds the enumeration budget");
        out.exhaustive = false;
        out.total = samples;
        std::bernoulli_distribution coin(0.5);
        for (std::uint64_t i = 0; i < samples; ++i) {
            BitString x;
            for (unsigned b = 0; b < ell; ++b)
                x.push_back(coin(rng));
            out.bad += is_delta_good(samp, x, f, delta) ? 0 : 1;
        }
    }
    out.fraction = Rational(to_integer(out.bad), to_integer(out.total));
    out.fraction.canonicalize();
    return out;
}

} // namespace derand
