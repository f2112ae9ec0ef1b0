#include "derand/harness/experiment.hpp"

#include "derand/automaton_io.hpp"
#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/harness/lemmas.hpp"
#include "derand/harness/measure.hpp"

#include <random>

namespace derand::harness {

namespace {

std::uint32_t u32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }

} // namespace

SimulatorHandle build_simulator(const Config& c) {
    const std::string kind = c.get("simulator.kind", "perfect");
    const auto w = u32(c.get_uint("simulator.w", 2));
    const auto d = static_cast<unsigned>(c.get_uint("simulator.d", 1));
    const std::uint64_t m = c.get_uint("simulator.m", 1);
    const auto s = static_cast<unsigned>(c.get_uint("simulator.s", 4));
    const bool fail = c.get_bool("simulator.fail", false);
    const Rational eps = c.get_rational("simulator.epsilon", 1);
    try {
        if (kind == "perfect")
            return perfect_simulator(w, d, m, s, fail);
        if (kind == "identity-advice")
            return advice_simulator(identity_advice(perfect_simulator(w, d, m, s, fail)));
        if (kind == "nisan" || kind == "prg-advice") {
            const auto n = static_cast<unsigned>(c.get_uint("simulator.field_bits", nisan_default_field_bits(w, d)));
            auto gen = std::make_shared<NisanGenerator>(d, m, n);
            if (kind == "nisan")
                return prg_simulator(std::move(gen), w, d, eps, fail);
            return advice_simulator(prg_to_advice(std::move(gen), w, d, eps, fail));
        }
        if (kind == "decider")
            return advice_simulator(decider_advice(w, c.get_uint("simulator.K", 256)));
        if (kind == "constant") {
            const BitString out = BitString::from_string(c.require("simulator.output"));
            return prg_simulator(constant_generator(out, s), w, d, eps, fail);
        }
    } catch (const Error& e) {
        throw Error("simulator", e.what());
    }
    throw Error("config", "unknown simulator.kind '" + kind + "'");
}

std::vector<Automaton> build_family(const Config& c, const Simulator& sim, std::mt19937_64& rng) {
    const SimulatorParams& p = sim.params();
    const std::string source = c.get("automaton.source", "random");
    const auto w = u32(c.get_uint("automaton.w", p.w));
    const auto d = static_cast<unsigned>(c.get_uint("automaton.d", p.d));
    std::vector<Automaton> out;
    const auto shaped = [&](const Automaton& a) { out.push_back(p.fail_family ? fail_lift(a).automaton() : a); };
    if (source == "toggle") {
        shaped(fixtures::toggle());
    } else if (source == "absorb") {
        shaped(fixtures::absorb());
    } else if (source == "constant") {
        shaped(fixtures::constant(w, d));
    } else if (source == "random") {
        const std::uint64_t count = c.get_uint("automaton.count", 10);
        for (std::uint64_t i = 0; i < count; ++i) {
            if (p.fail_family)
                out.push_back(random_fail_automaton(w, d, rng).automaton());
            else
                out.push_back(random_automaton(w, d, rng));
        }
    } else if (source == "file") {
        const AutomatonFile f = load_automaton(c.require("automaton.file"));
        if (p.fail_family)
            out.push_back(f.as_fail().automaton());
        else if (f.fail)
            throw Error("config", "automaton file has a fail state but the simulator does not");
        else
            out.push_back(f.table);
    } else {
        throw Error("config", "unknown automaton.source '" + source + "'");
    }
    return out;
}

namespace {

// Copies [from] keys listed in `keys` into lemma.<key>.
Config with_lemma_keys(Config c, const std::string& from, const std::vector<std::string>& keys) {
    for (const std::string& k : keys)
        if (c.has(from + "." + k))
            c.set("lemma." + k, c.require(from + "." + k));
    return c;
}

LemmaContext lemma_context(const ExperimentConfig& cfg, Config params) {
    LemmaContext ctx;
    ctx.params = std::move(params);
    ctx.seed = cfg.seed;
    ctx.measure = {cfg.budget_bits, cfg.samples, cfg.confidence};
    return ctx;
}

Report run_measure(const ExperimentConfig& cfg, bool single) {
    std::mt19937_64 rng(cfg.seed);
    const SimulatorHandle sim = build_simulator(cfg.raw);
    const std::vector<Automaton> family = build_family(cfg.raw, *sim, rng);
    Report rep;
    rep.param("simulator", sim->kind());
    rep.param("simulator.params", sim->params().describe());
    if (single) {
        if (family.empty())
            throw Error("simulate", "no automaton");
        const auto q = static_cast<State>(cfg.raw.get_uint("simulate.q", 1));
        const std::uint64_t x = cfg.raw.get_uint("simulate.x", 0);
        sim->check_state(q);
        sim->check_seed(x);
        Record r{"simulate", "Sim(Q, q, x)", std::to_string(sim->evaluate(family.front(), q, x)), "-",
                 Provenance::exhaustive, true, {}};
        r.detail("q", std::to_string(q)).detail("x", std::to_string(x));
        rep.add(std::move(r));
        return rep;
    }
    const ErrorMeasurement m = measure_error(*sim, family, {cfg.budget_bits, cfg.samples, cfg.confidence}, rng);
    Record r = m.to_record("measure", "Sim(f, U_s) ~_eps f(U_m)", sim->params().epsilon);
    r.detail("family", std::to_string(family.size()));
    rep.add(std::move(r));
    return rep;
}

} // namespace

Report run_experiment(const ExperimentConfig& cfg) {
    Report rep;
    for (const auto& [k, v] : cfg.raw.values())
        rep.param(k, v);
    rep.param("run.effective_seed", std::to_string(cfg.seed));
    rep.param("run.effective_budget_bits", std::to_string(cfg.budget_bits));
    if (cfg.kind == "lemmas") {
        for (const std::string& id : cfg.checks)
            rep.merge(verify_lemma(id, lemma_context(cfg, cfg.raw)));
    } else if (cfg.kind == "measure" || cfg.kind == "simulate") {
        rep.merge(run_measure(cfg, cfg.kind == "simulate"));
    } else if (cfg.kind == "sza") {
        Config params = with_lemma_keys(cfg.raw, "sza", {"w", "epsilon", "s", "m0", "m", "samples"});
        if (cfg.raw.has("sampler.kind"))
            params.set("lemma.sampler", cfg.raw.require("sampler.kind"));
        for (const char* id : {"sza-simulator", "sza-snap-chain", "sza-closeness"})
            rep.merge(verify_lemma(id, lemma_context(cfg, params)));
        if (cfg.raw.get("sza.mode", "memo") == "on_demand") {
            Config ledger = params;
            ledger.set("lemma.samples", cfg.raw.get("sza.ledger_runs", "1"));
            ledger.set("lemma.row_cache", cfg.raw.get_bool("sza.row_cache", true) ? "1" : "0");
            rep.merge(verify_lemma("sza-ledger", lemma_context(cfg, ledger)));
        }
    } else if (cfg.kind == "pipeline") {
        if (cfg.raw.get("pipeline.advice", "perfect") != "perfect")
            throw Error("config", "pipeline.advice supports only 'perfect'");
        rep.merge(verify_lemma("cycle", lemma_context(cfg, with_lemma_keys(cfg.raw, "pipeline",
                                                                          {"w", "m", "m0", "s", "epsilon", "sampler"}))));
    }
    rep.sort();
    if (!cfg.out.empty())
        rep.write(cfg.out);
    return rep;
}

} // namespace derand::harness
