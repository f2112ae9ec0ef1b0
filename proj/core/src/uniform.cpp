#include "derand/uniform.hpp"

#include "derand/error.hpp"

#include <bit>

namespace derand {

namespace {

unsigned entry_bits(std::uint32_t w) { return std::max(1u, static_cast<unsigned>(std::bit_width(w - 1))); }

std::uint64_t triple_bits(std::uint32_t w, unsigned d, std::uint64_t zlen) {
    return 128 + (static_cast<std::uint64_t>(w) << d) * entry_bits(w) + zlen;
}

std::uint64_t take(const BitString& s, std::size_t& pos, std::size_t len) {
    if (pos + len > s.size())
        throw Error("decode", "truncated triple");
    const std::uint64_t v = s.to_uint(pos, len);
    pos += len;
    return v;
}

} // namespace

BitString encode_triple(const Automaton& a, State q, const BitString& z) {
    if (z.size() > UINT32_MAX)
        throw Error("encode", "input string too long");
    BitString out;
    out.append_uint(a.states(), 32);
    out.append_uint(a.bits(), 32);
    const unsigned eb = entry_bits(a.states());
    for (State r : a.table())
        out.append_uint(r - 1, eb);
    out.append_uint(q, 32);
    out.append_uint(z.size(), 32);
    out.append(z);
    return out;
}

DecodedTriple decode_triple(const BitString& advice, std::size_t& pos) {
    const std::uint64_t w = take(advice, pos, 32);
    const std::uint64_t d = take(advice, pos, 32);
    if (w == 0 || d > 24)
        throw Error("decode", "bad triple header");
    const unsigned eb = entry_bits(static_cast<std::uint32_t>(w));
    const std::uint64_t entries = w << d;
    if (pos + entries * eb > advice.size())
        throw Error("decode", "truncated triple");
    std::vector<State> table(entries);
    for (State& r : table)
        r = static_cast<State>(take(advice, pos, eb) + 1);
    DecodedTriple t{Automaton(static_cast<std::uint32_t>(w), static_cast<unsigned>(d), std::move(table)), 0, {}};
    t.start = static_cast<State>(take(advice, pos, 32));
    const std::uint64_t zlen = take(advice, pos, 32);
    if (pos + zlen > advice.size())
        throw Error("decode", "truncated triple");
    t.z = advice.slice(pos, zlen);
    pos += zlen;
    return t;
}

namespace {

class UniformAdvice final : public AdviceGenerator {
public:
    UniformAdvice(SimulatorParams p, std::uint64_t bits, std::vector<std::pair<Automaton, State>> programs,
                  TargetedHandle tgen)
        : AdviceGenerator(std::move(p), bits), programs_(std::move(programs)), tgen_(std::move(tgen)) {}

    std::string kind() const override { return "uniform(" + tgen_->kind() + ")"; }

    BitString generate(std::uint64_t seed) const override {
        BitString out;
        for (const auto& [a, q] : programs_)
            out.append(encode_triple(a, q, tgen_->generate(a, q, seed)));
        return out;
    }

    State interpret(const Automaton& a, State q, const BitString& advice) const override {
        std::size_t pos = 0;
        while (pos < advice.size()) {
            DecodedTriple t = decode_triple(advice, pos);
            if (t.start == q && t.automaton == a)
                return run(a, q, t.z);
        }
        return 1;
    }

private:
    std::vector<std::pair<Automaton, State>> programs_;
    TargetedHandle tgen_;
};

} // namespace

AdviceHandle uniform_advice(ProgramRegistry registry, TargetedHandle tgen, std::uint32_t w,
                            std::uint64_t max_advice_bits) {
    const SimulatorParams& tp = tgen->params();
    if (tp.fail_family || tp.w != w)
        throw Error("uniform", "targeted generator (" + tp.describe() + ") must target plain " + std::to_string(w) +
                                   "-state automata");
    std::vector<std::pair<Automaton, State>> programs;
    std::uint64_t bits = 0;
    for (const ProgramDescriptor& desc : registry) {
        auto [a, q] = desc.produce(w);
        if (a.states() != w || a.bits() != tp.d || !a.valid_state(q))
            throw Error("uniform", "descriptor '" + desc.name + "' produced an automaton outside the family");
        bits += triple_bits(w, tp.d, tp.m * tp.d);
        programs.emplace_back(std::move(a), q);
    }
    if (max_advice_bits != 0 && bits > max_advice_bits)
        throw Error("uniform", "advice of " + std::to_string(bits) + " bits exceeds the configured " +
                                   std::to_string(max_advice_bits));
    return std::make_shared<UniformAdvice>(tp, bits, std::move(programs), std::move(tgen));
}

} // namespace derand
