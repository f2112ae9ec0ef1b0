#pragma once

#include "derand/harness/config.hpp"
#include "derand/harness/measure.hpp"
#include "derand/harness/report.hpp"

#include <string>
#include <vector>

namespace derand::harness {

struct LemmaInfo {
    std::string id;
    std::string anchor;  ///< the statement being checked, quoted or paraphrased
    std::string summary; ///< what the suite runs and its parameters ("lemma.<key>")
};

/// One entry per checked lemma, sorted by id.
const std::vector<LemmaInfo>& lemma_registry();
/// Throws Error("verify", ...) for an unregistered id.
const LemmaInfo& lemma_info(const std::string& id);

struct LemmaContext {
    Config params;            ///< reads keys "lemma.<name>"
    std::uint64_t seed = 1;
    MeasureOptions measure;
};

/// Runs the lemma's property suite; all randomness derives from ctx.seed.
Report verify_lemma(const std::string& id, const LemmaContext& ctx);

} // namespace derand::harness
