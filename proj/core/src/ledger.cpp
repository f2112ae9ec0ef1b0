#include "derand/ledger.hpp"

#include "derand/bits.hpp"

namespace derand {

std::uint64_t SpaceEstimate::total() const {
    return algorithm_bits + seed_bits * (seed_reads + 1) +
           invocations * (symbol_bits + ceil_log2(width) + ceil_log2(advice_bits));
}

std::string SpaceEstimate::describe() const {
    return "s'=" + std::to_string(algorithm_bits) + " s=" + std::to_string(seed_bits) + " v=" +
           std::to_string(seed_reads) + " u=" + std::to_string(invocations) + " d=" + std::to_string(symbol_bits) +
           " w=" + std::to_string(width) + " a=" + std::to_string(advice_bits) + " total=" + std::to_string(total());
}

} // namespace derand
