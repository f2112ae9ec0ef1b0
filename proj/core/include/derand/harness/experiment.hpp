#pragma once

#include "derand/harness/config.hpp"
#include "derand/harness/report.hpp"
#include "derand/simulator.hpp"

#include <random>
#include <vector>

namespace derand::harness {

/// Simulator from the [simulator] section:
/// kind = perfect | nisan | identity-advice | prg-advice | decider | constant.
SimulatorHandle build_simulator(const Config& c);

/// Automata from the [automaton] section (source = toggle | absorb | constant | random | file),
/// shaped for `sim` (fail-lifted when it simulates a fail family).
std::vector<Automaton> build_family(const Config& c, const Simulator& sim, std::mt19937_64& rng);

/// Runs the configured experiment, sorts the records and, when `out` is set, writes
/// report.jsonl and report.csv there. Same config, same bytes.
Report run_experiment(const ExperimentConfig& config);

} // namespace derand::harness
