#pragma once

#include "derand/automaton.hpp"
#include "derand/distribution.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace derand {

/// Text format: header "w d" or "w d fail", then one "q z r" line per transition
/// with z written as a d-bit string. Fail files list all (w+1)*2^d transitions.
struct AutomatonFile {
    Automaton table;
    bool fail = false;

    /// The fail automaton stored in the file, or the fail lift of a plain one.
    FailAutomaton as_fail() const;
};

void write_automaton(std::ostream& out, const Automaton& a);
void write_automaton(std::ostream& out, const FailAutomaton& a);
AutomatonFile read_automaton(std::istream& in);
AutomatonFile load_automaton(const std::filesystem::path& path);

/// Space-separated "num/den" entries.
void write_distribution(std::ostream& out, const StateDistribution& d);
StateDistribution read_distribution(std::istream& in);

} // namespace derand
