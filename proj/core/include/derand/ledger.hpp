#pragma once

#include <cstdint>
#include <string>

namespace derand {

/// Counts unresolved oracle invocations and unresolved seed reads during one
/// evaluation of an oracle algorithm. Not thread-safe; one ledger per evaluation.
class ResourceLedger {
public:
    class Scope {
    public:
        Scope(std::uint64_t& current, std::uint64_t& peak) : current_(&current) {
            if (++current > peak)
                peak = current;
        }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;
        ~Scope() { --*current_; }

    private:
        std::uint64_t* current_;
    };

    /// Opens an oracle invocation; it is resolved when the scope ends.
    [[nodiscard]] Scope invoke() {
        ++invocations_;
        return Scope(open_invocations_, max_invocations_);
    }
    /// Opens a read of a seed position; it is resolved when the scope ends.
    [[nodiscard]] Scope read_seed() {
        ++seed_reads_;
        return Scope(open_seed_reads_, max_seed_reads_);
    }
    void count_sampler_evaluation() noexcept { ++sampler_evaluations_; }
    void count_automaton_read() noexcept { ++automaton_reads_; }

    std::uint64_t open_invocations() const noexcept { return open_invocations_; }
    std::uint64_t max_invocations() const noexcept { return max_invocations_; }
    std::uint64_t open_seed_reads() const noexcept { return open_seed_reads_; }
    std::uint64_t max_seed_reads() const noexcept { return max_seed_reads_; }
    std::uint64_t invocations() const noexcept { return invocations_; }
    std::uint64_t seed_reads() const noexcept { return seed_reads_; }
    std::uint64_t sampler_evaluations() const noexcept { return sampler_evaluations_; }
    std::uint64_t automaton_reads() const noexcept { return automaton_reads_; }

private:
    std::uint64_t open_invocations_ = 0;
    std::uint64_t max_invocations_ = 0;
    std::uint64_t open_seed_reads_ = 0;
    std::uint64_t max_seed_reads_ = 0;
    std::uint64_t invocations_ = 0;
    std::uint64_t seed_reads_ = 0;
    std::uint64_t sampler_evaluations_ = 0;
    std::uint64_t automaton_reads_ = 0;
};

/// Space of running an oracle algorithm with the oracle replaced by S(Q, q, Gen(x)):
/// s' + s (v + 1) + u (d + log w + log a), in bits, with logs rounded up.
struct SpaceEstimate {
    std::uint64_t algorithm_bits = 0; ///< s'
    std::uint64_t seed_bits = 0;      ///< s
    std::uint64_t seed_reads = 0;     ///< v
    std::uint64_t invocations = 0;    ///< u
    std::uint64_t symbol_bits = 0;    ///< d
    std::uint64_t width = 0;          ///< w
    std::uint64_t advice_bits = 0;    ///< a

    std::uint64_t total() const;
    std::string describe() const;
};

} // namespace derand
