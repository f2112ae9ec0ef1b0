// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/harness/lemmas.hpp"
#include "derand/matrix.hpp"
#include "derand/snap.hpp"
#include "derand/targeted_prg.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace derand;
using derand::harness::LemmaContext;
using derand::harness::Report;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
};

Report lemma(const std::string& id, std::initializer_list<std::pair<const char*, std::string>> params, std::uint64_t seed = 1) {
    LemmaContext ctx;
    ctx.seed = seed;
    for (const auto& [k, v] : params)
        ctx.params.set(std::string("lemma.") + k, v);
    return harness::verify_lemma(id, ctx);
}

std::string detail(const harness::Record& r, const std::string& key) {
    for (const auto& [k, v] : r.details)
        if (k == key)
            return v;
    return "";
}

const harness::Record& find(const Report& rep, const std::string& check) {
    for (const harness::Record& r : rep.records)
        if (r.check == check)
            return r;
    throw Error("acceptance", "missing record " + check);
}

std::string brief(const Report& rep) {
    std::ostringstream out;
    for (const harness::Record& r : rep.records)
        out << " " << r.check << "=" << r.measured << "/" << r.bound << (r.pass ? "" : "(fail)");
    return out.str();
}

// Near pairs differ in one transition, far pairs are independent.
Outcome tv_rho_sandwich() {
    std::mt19937_64 rng(101);
    std::uint64_t bad = 0, mismatch = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        std::uniform_int_distribution<std::uint32_t> pick_w(1, 4);
        std::uniform_int_distribution<unsigned> pick_d(1, 3);
        const std::uint32_t w = pick_w(rng);
        const FailAutomaton a = random_fail_automaton(w, pick_d(rng), rng);
        FailAutomaton b = random_fail_automaton(w, t % 2 ? a.bits() : pick_d(rng), rng);
        if (t % 2) {
            std::vector<State> table(a.automaton().table().begin(), a.automaton().table().end());
            // rows of the non-fail states only
            table[rng() % (std::size_t{w} << a.bits())] = static_cast<State>(1 + rng() % (w + 1));
            b = FailAutomaton(Automaton(w + 1, a.bits(), std::move(table)));
        }
        const Rational r = oracle::norm_diff(oracle::matrix(a.automaton()), oracle::matrix(b.automaton()));
        mismatch += r != rho(a, b);
        Rational delta = 0;
        for (State q = 1; q <= w; ++q)
            delta = std::max(delta, oracle::tv(oracle::distribution(a.automaton(), q, 1), oracle::distribution(b.automaton(), q, 1)));
        bad += !(r / 2 <= delta && delta <= r);
    }
    const Report rep = lemma("tv-rho", {{"trials", "1000"}, {"max_w", "4"}, {"max_d", "3"}});
    return {bad == 0 && mismatch == 0 && rep.pass(),
            "oracle pairs=" + std::to_string(trials) + " violations=" + std::to_string(bad) +
                " rho_mismatch=" + std::to_string(mismatch) + brief(rep)};
}

Outcome snap_closeness() {
    const Report rep = lemma("snap-closeness", {{"trials", "100"}, {"max_w", "4"}, {"max_d", "3"}, {"max_delta", "8"}});
    // independent recomputation for small Delta, straight from the snap formula
    std::mt19937_64 rng(202);
    std::uint64_t bad = 0, cases = 0;
    for (int t = 0; t < 20; ++t) {
        const std::uint32_t w = 1 + static_cast<std::uint32_t>(rng() % 4);
        const FailAutomaton a = random_fail_automaton(w, 1 + static_cast<unsigned>(rng() % 3), rng);
        const oracle::Matrix m = oracle::matrix(a.automaton());
        for (unsigned D = 1; D <= 4; ++D)
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y, ++cases) {
                oracle::Matrix s = m;
                for (auto& row : s)
                    for (Rational& p : row)
                        p = oracle::snap(p, y, D);
                const Rational r = oracle::norm_diff(m, s);
                const oracle::Matrix lib = oracle::matrix(snap_automaton(a, BitString::from_uint(y, D)).automaton());
                bad += r > w * oracle::pow2(1 - static_cast<long>(D)) || oracle::norm_diff(lib, s) != 0;
            }
    }
    return {rep.pass() && bad == 0, brief(rep) + " " + detail(rep.records.front(), "worst_rho_over_bound") +
                                        " worst/bound; oracle cases=" + std::to_string(cases) + " bad=" + std::to_string(bad)};
}

Outcome snap_coincide() {
    const Report rep = lemma("snap-coincide", {{"trials", "40"}, {"max_w", "4"}, {"max_delta", "8"}});
    return {rep.pass(), brief(rep) + " worst risk/bound=" + detail(find(rep, "snap-coincide/risk"), "worst_risk_over_bound")};
}

Outcome sza_end_to_end() {
    const std::initializer_list<std::pair<const char*, std::string>> p = {
        {"w", "3"}, {"epsilon", "1/1024"}, {"s", "4"}, {"m0", "4"}, {"m", "16"}, {"samples", "1000"}, {"slack", "1/100"}};
    const Report sim = lemma("sza-simulator", p, 404);
    const Report chain = lemma("sza-snap-chain", p, 405);
    const harness::Record& bad = find(sim, "sza-simulator/bad-fraction");
    const harness::Record& tv = find(sim, "sza-simulator/tv");
    return {sim.pass() && chain.pass(), "(a) bad=" + bad.measured + " upper=" + detail(bad, "upper") + " bound=" + bad.bound +
                                            " (b) tv=" + tv.measured + " bound=" + tv.bound + brief(chain) + " [" +
                                            detail(tv, "sza") + "]"};
}

Outcome ledger() {
    const Report small = lemma("sza-ledger", {{"samples", "50"}});
    const Report mid = lemma("sza-ledger", {{"m", "8"}, {"samples", "50"}}, 2);
    const Report full = lemma("sza-ledger", {{"w", "3"},
                                             {"epsilon", "1/1024"},
                                             {"s", "4"},
                                             {"m0", "4"},
                                             {"m", "16"},
                                             {"samples", "2"},
                                             {"row_cache", "1"}},
                              3);
    const harness::Record& inv = find(full, "sza-ledger/invocations");
    return {small.pass() && mid.pass() && full.pass(),
            "u=1:" + brief(small) + " | u=3:" + brief(mid) + " | u=2 (w=3, eps=2^-10):" + brief(full) +
                " space: " + detail(inv, "space")};
}

Outcome cond_prob() {
    // every (2,1)-automaton, every seed, outputs run through the automaton by brute force
    const SimulatorHandle sim = perfect_simulator(6, 1, 3, 8);
    const auto prg = cond_prob_prg(sim, 2, 1, 3);
    const Rational bound = 2 * 3 * 4 * sim->params().epsilon;
    Rational worst = 0;
    for (unsigned code = 0; code < 16; ++code) {
        const Automaton a = Automaton::from_function(2, 1, [&](State q, Symbol z) { return ((code >> ((q - 1) * 2 + z)) & 1u) + 1; });
        for (State q = 1; q <= 2; ++q) {
            std::vector<std::uint64_t> counts(2, 0);
            for (std::uint64_t x = 0; x < 256; ++x)
                ++counts[run(a, q, prg->generate(a, q, x)) - 1];
            worst = std::max(worst, oracle::tv(oracle::from_counts(counts), oracle::distribution(a, q, 3)));
        }
    }
    const Report rep = lemma("cond-prob", {{"w", "2"}, {"d", "1"}, {"m", "3"}, {"s", "8"}, {"trials", "16"}});
    return {worst <= bound && rep.pass(),
            "all 16 automata: worst tv=" + to_string(worst) + " bound=" + to_string(bound) + brief(rep)};
}

Outcome decider() {
    bool pass = true;
    std::ostringstream out;
    std::uint64_t runs = 0;
    for (std::uint32_t w = 1; w <= 4; ++w)
        for (std::uint64_t K = 2; K <= 256; K *= 2) {
            const Report rep = lemma("decider", {{"w", std::to_string(w)}, {"K", std::to_string(K)}, {"trials", "100"}}, 700 + w * K);
            pass = pass && rep.pass();
            ++runs;
            if (!rep.pass() || (w == 4 && (K == 2 || K == 256)))
                out << " w=" << w << ",K=" << K << ":" << brief(rep);
        }
    // oracle spot check: every seed evaluated one at a time
    std::mt19937_64 rng(707);
    const SimulatorHandle sim = advice_simulator(decider_advice(3, 8));
    Rational worst = 0;
    for (int t = 0; t < 20; ++t) {
        const Automaton a = random_automaton(3, 1, rng);
        for (State q = 1; q <= 3; ++q)
            worst = std::max(worst, oracle::tv(oracle::simulated(*sim, a, q), oracle::distribution(a, q, 3)));
    }
    pass = pass && worst <= Rational(3, 16);
    out << " oracle w=3,K=8 worst=" << to_string(worst);
    return {pass, std::to_string(runs) + " (w,K) runs x 100 automata;" + out.str()};
}

Outcome cycle() {
    const Report rep = lemma("cycle", {});
    const harness::Record& r = rep.records.front();
    std::ostringstream out;
    out << "tv=" << r.measured << " bound=" << r.bound << " hypotheses_met=" << detail(r, "hypotheses_met");
    for (const auto& [k, v] : r.details)
        if (k.rfind("stage.", 0) == 0)
            out << " [" << k.substr(6) << " " << v << "]";
    return {rep.pass(), out.str()};
}

Outcome uniform() {
    const Report rep = lemma("uniform", {{"trials", "64"}});
    return {rep.pass(), brief(rep) + " fallback cases=" + detail(find(rep, "uniform/fallback"), "cases")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"tv-rho-sandwich", tv_rho_sandwich},
        {"snap-closeness", snap_closeness},
        {"snap-coincide", snap_coincide},
        {"sza-end-to-end", sza_end_to_end},
        {"sza-ledger", ledger},
        {"cond-prob-prg", cond_prob},
        {"decider-advice", decider},
        {"cycle-composition", cycle},
        {"uniform-transformation", uniform},
    };
    int failed = 0, index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("%s %d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), secs, o.summary.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
