#include "derand/harness/lemmas.hpp"

#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/matrix.hpp"
#include "derand/sampler.hpp"
#include "derand/snap.hpp"
#include "derand/sza.hpp"
#include "derand/targeted_prg.hpp"
#include "derand/uniform.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace derand::harness {

namespace {

// Parameter access that also logs every value used into the report.
class Ctx {
public:
    Ctx(const LemmaContext& c, const std::string& id, Report& rep) : rng(c.seed), c_(c), id_(id), rep_(rep) {}

    std::uint64_t num(const std::string& key, std::uint64_t fallback) {
        const std::uint64_t v = c_.params.get_uint("lemma." + key, fallback);
        log(key, std::to_string(v));
        return v;
    }
    Rational frac(const std::string& key, const Rational& fallback) {
        Rational v = c_.params.get_rational("lemma." + key, fallback);
        log(key, to_string(v));
        return v;
    }
    std::string text(const std::string& key, const std::string& fallback) {
        std::string v = c_.params.get("lemma." + key, fallback);
        log(key, v);
        return v;
    }
    std::uint64_t pick(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); }
    std::uint64_t bits(unsigned n) { return n == 0 ? 0 : pick(0, (std::uint64_t{1} << n) - 1); }

    const MeasureOptions& measure() const { return c_.measure; }
    Record record(const std::string& suffix) const {
        Record r;
        r.check = suffix.empty() ? id_ : id_ + "/" + suffix;
        r.anchor = lemma_info(id_).anchor;
        return r;
    }

    std::mt19937_64 rng;

private:
    void log(const std::string& key, const std::string& value) { rep_.param(id_ + "." + key, value); }

    const LemmaContext& c_;
    std::string id_;
    Report& rep_;
};

std::uint32_t u32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }

Record count_record(Record r, std::uint64_t bad, std::uint64_t total) {
    r.measured = std::to_string(bad);
    r.bound = "0";
    r.pass = bad == 0;
    r.provenance = total == 0 ? Provenance::vacuous : Provenance::exhaustive;
    if (total == 0)
        r.pass = false;
    r.detail("cases", std::to_string(total));
    return r;
}

// Plain automata of shape (w, d): fixtures whose shape matches, then random ones.
std::vector<Automaton> plain_family(std::uint32_t w, unsigned d, std::uint64_t trials, std::mt19937_64& rng) {
    std::vector<Automaton> out;
    if (w == 2 && d == 1) {
        out.push_back(fixtures::toggle());
        out.push_back(fixtures::absorb());
    }
    out.push_back(fixtures::constant(w, d));
    for (std::uint64_t t = 0; t < trials; ++t)
        out.push_back(random_automaton(w, d, rng));
    return out;
}

std::vector<Automaton> fail_family(std::uint32_t w, unsigned d, std::uint64_t trials, std::mt19937_64& rng) {
    std::vector<Automaton> out{fixtures::all_to_fail(w, d).automaton()};
    for (std::uint64_t t = 0; t < trials; ++t)
        out.push_back(random_fail_automaton(w, d, rng).automaton());
    return out;
}

RationalMatrix matrix_of(const FailAutomaton& a) { return RationalMatrix::from(transition_matrix(a)); }

Report round_trip(Ctx& c, Report rep) {
    const auto trials = c.num("trials", 200), max_w = c.num("max_w", 3), max_d = c.num("max_d", 4);
    std::uint64_t bad = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const FailAutomaton a = random_fail_automaton(u32(c.pick(1, max_w)), static_cast<unsigned>(c.pick(1, max_d)), c.rng);
        const SubstochasticMatrix m = transition_matrix(a);
        bad += transition_matrix(canonical_automaton(m)) != m;
    }
    rep.add(count_record(c.record(""), bad, trials));
    return rep;
}

Report tv_rho(Ctx& c, Report rep) {
    const auto trials = c.num("trials", 1000), max_w = c.num("max_w", 4), max_d = c.num("max_d", 3);
    std::uint64_t bad = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto w = u32(c.pick(1, max_w));
        const auto d1 = static_cast<unsigned>(c.pick(1, max_d));
        const FailAutomaton a = random_fail_automaton(w, d1, c.rng);
        FailAutomaton b = a;
        if (t % 2 == 0) {
            b = random_fail_automaton(w, static_cast<unsigned>(c.pick(1, max_d)), c.rng);
        } else {
            // one redirected transition: a near pair
            std::vector<State> table(a.automaton().table().begin(), a.automaton().table().end());
            const std::size_t i = c.pick(0, (std::size_t{w} << d1) - 1);
            table[i] = static_cast<State>(c.pick(1, w + 1));
            b = FailAutomaton(Automaton(w + 1, d1, std::move(table)));
        }
        const Rational r = rho(a, b);
        Rational delta = 0;
        for (State q = 1; q <= w; ++q)
            delta = std::max(delta, tv_distance(exact_distribution(a, q, 1), exact_distribution(b, q, 1)));
        bad += !(r / 2 <= delta && delta <= r);
    }
    rep.add(count_record(c.record(""), bad, trials));
    return rep;
}

Report snap_bounds(Ctx& c, Report rep) {
    const auto max_delta = c.num("max_delta", 6);
    std::uint64_t bad = 0, total = 0;
    for (unsigned D = 1; D <= max_delta; ++D) {
        const unsigned P = 2 * D;
        for (std::uint64_t num = 0; num <= (std::uint64_t{1} << P); ++num)
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y, ++total) {
                const std::uint64_t s = snap_numerator(num, P, y, D);
                bad += !((s << D) <= num && num <= ((s + 2) << D));
            }
    }
    rep.add(count_record(c.record(""), bad, total));
    return rep;
}

Report snap_closeness(Ctx& c, Report rep) {
    const auto trials = c.num("trials", 100), max_w = c.num("max_w", 4), max_d = c.num("max_d", 3),
               max_delta = c.num("max_delta", 8);
    std::uint64_t bad = 0, total = 0;
    Rational worst_ratio = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto w = u32(c.pick(1, max_w));
        const FailAutomaton a = random_fail_automaton(w, static_cast<unsigned>(c.pick(1, max_d)), c.rng);
        for (unsigned D = 1; D <= max_delta; ++D) {
            const Rational bound = w * pow2(1 - static_cast<long>(D));
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y, ++total) {
                const Rational r = rho(a, snap_automaton(a, BitString::from_uint(y, D)));
                bad += r > bound;
                worst_ratio = std::max(worst_ratio, Rational(r / bound));
            }
        }
    }
    rep.add(count_record(c.record(""), bad, total).detail("worst_rho_over_bound", to_string(worst_ratio)));
    return rep;
}

Report snap_coincide(Ctx& c, Report rep) {
    const auto trials = c.num("trials", 20), max_w = c.num("max_w", 4), max_delta = c.num("max_delta", 6);
    std::uint64_t risk_bad = 0, stable_bad = 0, total = 0, outside = 0;
    Rational worst_ratio = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto w = u32(c.pick(1, max_w));
        for (unsigned D = 1; D <= max_delta; ++D, ++total) {
            const unsigned d = std::min(2 * D + 2, 16u);
            const SubstochasticMatrix m = transition_matrix(random_fail_automaton(w, d, c.rng));
            const Rational bound = Rational(w) * w * pow2(1 - static_cast<long>(D));
            const Rational risk = boundary_risk(m, D);
            risk_bad += risk > bound;
            worst_ratio = std::max(worst_ratio, Rational(risk / bound));
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << D); ++y) {
                if (snap_unstable(m, y, D))
                    continue;
                ++outside;
                stable_bad += !snap_endpoint_stable(m, y, D);
            }
        }
    }
    rep.add(count_record(c.record("risk"), risk_bad, total).detail("worst_risk_over_bound", to_string(worst_ratio)));
    rep.add(count_record(c.record("stability"), stable_bad, outside));
    return rep;
}

Report sampler_good(Ctx& c, Report rep) {
    const auto s = static_cast<unsigned>(c.num("s", 1));
    const auto w = u32(c.num("w", 2));
    const Rational delta = c.frac("delta", Rational(1, 2)), gamma = c.frac("gamma", Rational(1, 2));
    if (w < 2)
        throw Error("verify", "sampler-good needs w >= 2");
    const SamplerHandle samp = blocks_sampler(s, delta, gamma, w);
    const std::vector<std::pair<Automaton, State>> programs = {
        {fixtures::toggle(), 1}, {fixtures::toggle(), 2}, {fixtures::absorb(), 1},
        {fixtures::absorb(), 2}, {fixtures::constant(), 1}, {fixtures::constant(), 2}};
    Rational worst = 0;
    double worst_upper = 0;
    bool exhaustive = true;
    for (const auto& [a, q] : programs) {
        std::vector<State> f(std::size_t{1} << s);
        for (std::uint64_t x = 0; x < f.size(); ++x)
            f[x] = run(a, q, BitString::from_uint(x, s));
        const BadFraction bf = bad_fraction(*samp, f, delta, c.measure().budget_bits, c.measure().samples, c.rng);
        exhaustive = exhaustive && bf.exhaustive;
        worst = std::max(worst, bf.fraction);
        if (!bf.exhaustive)
            worst_upper = std::max(worst_upper, clopper_pearson(bf.bad, bf.total, c.measure().confidence).second);
    }
    Record r = c.record("");
    r.measured = to_string(worst);
    r.bound = to_string(gamma);
    r.pass = worst <= gamma;
    r.provenance = exhaustive ? Provenance::exhaustive : Provenance::sampled;
    r.detail("blocks", std::to_string(samp->spec().ell / s)).detail("ell", std::to_string(samp->spec().ell));
    if (!exhaustive)
        r.detail("upper", std::to_string(worst_upper));
    rep.add(std::move(r));
    return rep;
}

Report perfect_sim(Ctx& c, Report rep) {
    const auto w = u32(c.num("w", 3));
    const auto d = static_cast<unsigned>(c.num("d", 2));
    const auto m0 = c.num("m0", 2), s = c.num("s", 3), trials = c.num("trials", 20);
    const SimulatorHandle sim = perfect_simulator(w, d, m0, static_cast<unsigned>(s));
    const auto meas = measure_error(*sim, plain_family(w, d, trials, c.rng), c.measure(), c.rng);
    rep.add(meas.to_record(c.record("").check, c.record("").anchor, std::min(Rational(1), Rational(w * pow2(-static_cast<long>(s))))));
    return rep;
}

Report decider(Ctx& c, Report rep) {
    const auto w = u32(c.num("w", 4));
    const auto K = c.num("K", 8), trials = c.num("trials", 100);
    const SimulatorHandle sim = advice_simulator(decider_advice(w, K));
    std::vector<Automaton> family;
    for (std::uint64_t t = 0; t < trials; ++t)
        family.push_back(random_automaton(w, 1, c.rng));
    const auto meas = measure_error(*sim, family, c.measure(), c.rng);
    rep.add(meas.to_record(c.record("").check, c.record("").anchor, Rational(w) / (2 * Rational(to_integer(K)))));
    return rep;
}

Report nisan_lengths(Ctx& c, Report rep) {
    const auto d = static_cast<unsigned>(c.num("d", 2));
    const auto n = static_cast<unsigned>(c.num("n", 4));
    std::uint64_t bad = 0, total = 0;
    for (unsigned k = 0; k <= 4; ++k, ++total) {
        const NisanGenerator gen(d, std::uint64_t{1} << k, n);
        bad += gen.seed_bits() != n * (1 + 2 * k) || gen.output_bits() != (std::uint64_t{d} << k);
        for (int t = 0; t < 4; ++t)
            bad += gen.generate(c.bits(gen.seed_bits())).size() != (std::uint64_t{d} << k);
    }
    rep.add(count_record(c.record(""), bad, total));
    return rep;
}

// Shared SZA setup: parameters, perfect base simulator, random fixture, exact reference.
struct SZASetup {
    SZAParams p;
    SimulatorHandle base;
    FailAutomaton q0;
    RationalMatrix reference;
};

SZASetup sza_setup(Ctx& c, std::uint32_t w, const Rational& eps, unsigned s, std::uint64_t m0, std::uint64_t m) {
    w = u32(c.num("w", w));
    const Rational e = c.frac("epsilon", eps);
    s = static_cast<unsigned>(c.num("s", s));
    m0 = c.num("m0", m0);
    m = c.num("m", m);
    const std::string sampler = c.text("sampler", "shift");
    const auto fixture_bits = static_cast<unsigned>(c.num("fixture_bits", 1));
    SZAParams p = sza_params(w, e, s, m0, m, sampler);
    SimulatorHandle base = perfect_simulator(p.w, p.d, p.m0, p.s, true);
    FailAutomaton q0 = embed(fail_lift(random_automaton(p.w, fixture_bits, c.rng)), p.d);
    RationalMatrix reference = transition_power(q0, p.m_prime);
    return {std::move(p), std::move(base), std::move(q0), std::move(reference)};
}

Record fraction_record(Record r, std::uint64_t bad, std::uint64_t total, const Rational& bound, double confidence) {
    const double upper = clopper_pearson(bad, total, confidence).second;
    r.measured = std::to_string(bad) + "/" + std::to_string(total);
    r.bound = std::to_string(to_double(bound));
    r.provenance = Provenance::sampled;
    r.pass = total > 0 && upper <= to_double(bound);
    r.detail("upper", std::to_string(upper)).detail("confidence", std::to_string(confidence));
    return r;
}

Report sza_snap_chain(Ctx& c, Report rep) {
    SZASetup st = sza_setup(c, 3, pow2(-10), 4, 4, 16);
    const auto samples = c.num("samples", 100);
    const Rational slack = c.frac("slack", Rational(1, 100));
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < samples; ++k) {
        const SZASeed seed = SZASeed::split(st.p, c.bits(st.p.seed_bits()));
        const auto hat = q_hat_chain(st.p, *st.base, st.q0, seed.x, seed.y);
        const auto exact = q_exact_chain(st.p, *st.base, st.q0, seed.y);
        bool differ = false;
        for (std::size_t i = 0; i < hat.size() && !differ; ++i)
            differ = transition_matrix(hat[i]) != transition_matrix(exact[i]);
        bad += differ;
    }
    const Rational bound = 4 * Rational(to_integer(st.p.m)) * st.p.epsilon + slack;
    rep.add(fraction_record(c.record(""), bad, samples, bound, c.measure().confidence).detail("sza", st.p.describe()));
    return rep;
}

Report sza_closeness(Ctx& c, Report rep) {
    SZASetup st = sza_setup(c, 3, pow2(-10), 4, 4, 16);
    const auto samples = c.num("samples", 100);
    const Rational bound = 8 * Rational(to_integer(st.p.m)) * st.p.epsilon;
    std::uint64_t bad = 0;
    Rational worst = 0;
    for (std::uint64_t k = 0; k < samples; ++k) {
        const SZASeed seed = SZASeed::split(st.p, c.bits(st.p.seed_bits()));
        const auto exact = q_exact_chain(st.p, *st.base, st.q0, seed.y);
        const Rational r = matrix_norm(matrix_of(exact.back()) - st.reference);
        bad += r > bound;
        worst = std::max(worst, r);
    }
    Record r = count_record(c.record(""), bad, samples);
    r.detail("worst_rho", to_string(worst)).detail("rho_bound", to_string(bound)).detail("sza", st.p.describe());
    // y is sampled, each rho is exact
    r.provenance = Provenance::sampled;
    rep.add(std::move(r));
    return rep;
}

Report sza_simulator_check(Ctx& c, Report rep) {
    SZASetup st = sza_setup(c, 3, pow2(-10), 4, 4, 16);
    const auto samples = c.num("samples", 100);
    const Rational slack = c.frac("slack", Rational(1, 100));
    const Rational mm = to_integer(st.p.m);
    const Rational rho_bound = 8 * mm * st.p.epsilon;
    const std::uint32_t w = st.p.w;
    std::vector<Integer> sums(static_cast<std::size_t>(w) * w, 0);
    std::uint64_t bad = 0;
    unsigned precision = 0;
    for (std::uint64_t k = 0; k < samples; ++k) {
        const SZASeed seed = SZASeed::split(st.p, c.bits(st.p.seed_bits()));
        const auto hat = q_hat_chain(st.p, *st.base, st.q0, seed.x, seed.y);
        const SubstochasticMatrix m = transition_matrix(hat.back());
        precision = m.precision();
        bad += matrix_norm(RationalMatrix::from(m) - st.reference) > rho_bound;
        for (std::size_t i = 0; i < sums.size(); ++i)
            sums[i] += to_integer(m.numerators()[i]);
    }
    rep.add(fraction_record(c.record("bad-fraction"), bad, samples, 4 * mm * st.p.epsilon + slack, c.measure().confidence));

    // averaged output distribution from each start versus the exact m'-step one (fail last)
    Rational worst = 0;
    const Rational scale = Rational(to_integer(samples)) * pow2(precision);
    for (State q = 1; q <= w; ++q) {
        std::vector<Rational> avg(w + 1), exact(w + 1);
        Rational avg_fail = 1, exact_fail = 1;
        for (State r = 1; r <= w; ++r) {
            avg[r - 1] = Rational(sums[(q - 1) * w + r - 1]) / scale;
            exact[r - 1] = st.reference(q, r);
            avg_fail -= avg[r - 1];
            exact_fail -= exact[r - 1];
        }
        avg[w] = avg_fail;
        exact[w] = exact_fail;
        worst = std::max(worst, tv_distance(StateDistribution(avg), StateDistribution(exact)));
    }
    const Rational tv_bound = 12 * mm * st.p.epsilon + slack;
    Record r = c.record("tv");
    r.measured = to_string(worst);
    r.bound = to_string(tv_bound);
    r.pass = samples > 0 && worst <= tv_bound;
    r.provenance = Provenance::sampled;
    r.detail("samples", std::to_string(samples)).detail("sza", st.p.describe());
    rep.add(std::move(r));
    return rep;
}

Report sza_ledger(Ctx& c, Report rep) {
    SZASetup st = sza_setup(c, 2, Rational(1, 2), 1, 2, 4);
    const auto samples = c.num("samples", 4);
    const bool row_cache = c.num("row_cache", 0) != 0;
    std::uint64_t not_u = 0, reads_bad = 0, mismatch = 0, max_inv = 0, max_reads = 0;
    SpaceEstimate space;
    for (std::uint64_t k = 0; k < samples; ++k) {
        const std::uint64_t seed = c.bits(st.p.seed_bits());
        const auto q = static_cast<State>(c.pick(1, st.p.w));
        const SZAResult memo = sza_simulate(st.p, *st.base, st.q0, q, seed, SZAMode::memo);
        const SZAResult od = sza_simulate(st.p, *st.base, st.q0, q, seed, SZAMode::on_demand, row_cache);
        const LedgerReport lr = ledger_check(od.ledger, st.p, st.p.s);
        not_u += !lr.invocations_equal_u;
        reads_bad += !lr.seed_reads_at_most_one;
        mismatch += memo.state != od.state;
        max_inv = std::max(max_inv, od.ledger.max_invocations());
        max_reads = std::max(max_reads, od.ledger.max_seed_reads());
        space = lr.space;
    }
    Record inv = c.record("invocations");
    inv.measured = std::to_string(max_inv);
    inv.bound = std::to_string(st.p.u);
    inv.pass = samples > 0 && not_u == 0;
    inv.detail("runs_not_equal_u", std::to_string(not_u)).detail("space", space.describe());
    inv.detail("space_bits", std::to_string(space.total()));
    rep.add(std::move(inv));
    Record reads = c.record("seed-reads");
    reads.measured = std::to_string(max_reads);
    reads.bound = "1";
    reads.pass = samples > 0 && reads_bad == 0;
    rep.add(std::move(reads));
    rep.add(count_record(c.record("agreement"), mismatch, samples));
    return rep;
}

Report cond_prob(Ctx& c, Report rep) {
    const auto w = u32(c.num("w", 2));
    const auto d = static_cast<unsigned>(c.num("d", 1));
    const auto m = c.num("m", 3), s = c.num("s", 8), trials = c.num("trials", 10);
    const SimulatorHandle sim = perfect_simulator(u32(w * m), d, m, static_cast<unsigned>(s));
    const auto prg = cond_prob_prg(sim, w, d, m);
    const Rational eps = sim->params().epsilon;
    const Rational bound = std::min(Rational(1), Rational(2 * Rational(to_integer(m)) * w * w * eps));
    const Rational drop_bound = 2 * eps * pow2(static_cast<long>(s));
    Rational worst = 0;
    std::uint64_t drops_bad = 0, traces = 0, max_drop = 0;
    const auto family = plain_family(w, d, trials, c.rng);
    for (const Automaton& a : family)
        for (State q = 1; q <= w; ++q) {
            worst = std::max(worst, tv_distance(pushforward(*prg, a, q), exact_distribution(a, q, m)));
            const auto targets = sim->bind(pad_with_dummies(a, u32(w * m)))->seed_counts(q);
            for (State R = 1; R <= w; ++R) {
                if (targets[R - 1] == 0)
                    continue;
                GreedyTrace trace;
                prg->greedy(a, q, R, &trace);
                ++traces;
                max_drop = std::max(max_drop, trace.max_drop());
                drops_bad += Rational(to_integer(trace.max_drop())) > drop_bound;
            }
        }
    Record err = c.record("error");
    err.measured = to_string(worst);
    err.bound = to_string(bound);
    err.pass = worst <= bound;
    err.detail("family", std::to_string(family.size())).detail("sim_epsilon", to_string(eps));
    rep.add(std::move(err));
    rep.add(count_record(c.record("progress"), drops_bad, traces)
                .detail("max_drop", std::to_string(max_drop))
                .detail("drop_bound", to_string(drop_bound)));
    return rep;
}

Report adapters(Ctx& c, Report rep) {
    const auto trials = c.num("trials", 10);
    {
        const auto w = u32(c.num("binarize_w", 2));
        const auto d = static_cast<unsigned>(c.num("binarize_d", 2));
        const auto m = c.num("binarize_m", 2);
        const auto inner = perfect_simulator(u32((w + 1) << d), 1, m * d, static_cast<unsigned>(m * d));
        const SimulatorHandle sim = binarize(identity_advice(inner), w, d);
        const auto meas = measure_error(*sim, fail_family(w, d, trials, c.rng), c.measure(), c.rng);
        rep.add(meas.to_record(c.record("binarize").check, c.record("").anchor, 0));
    }
    {
        const auto W = u32(c.num("pad_w", 2));
        const auto m = c.num("pad_m", 2), outer_d = c.num("pad_outer_d", 2), outer_m = c.num("pad_outer_m", 3);
        const auto inner =
            perfect_simulator(u32(W * (m + 1)), static_cast<unsigned>(outer_d), outer_m, static_cast<unsigned>(outer_m * outer_d), true);
        const SimulatorHandle sim = pad_states(inner, W, 1, m);
        const auto meas = measure_error(*sim, plain_family(W, 1, trials, c.rng), c.measure(), c.rng);
        rep.add(meas.to_record(c.record("pad-states").check, c.record("").anchor, 0));
    }
    return rep;
}

Report cycle(Ctx& c, Report rep) {
    CycleConfig cfg;
    cfg.w = u32(c.num("w", 2));
    cfg.m = c.num("m", 1);
    cfg.m0 = c.num("m0", 1);
    cfg.s = static_cast<unsigned>(c.num("s", 1));
    cfg.sza_epsilon = c.frac("epsilon", pow2(-7));
    cfg.sampler = c.text("sampler", "shift");
    const auto trials = c.num("trials", 16);
    const AdviceFactory factory = [](std::uint32_t states, std::uint64_t steps, unsigned s) {
        return identity_advice(perfect_simulator(states, 1, steps, s));
    };
    const CycleResult res = cycle_compose(factory, cfg);
    std::vector<Automaton> family;
    if (cfg.w == 2) {
        for (unsigned code = 0; code < 16; ++code)
            family.push_back(Automaton::from_function(2, 1, [&](State q, Symbol z) { return ((code >> ((q - 1) * 2 + z)) & 1u) + 1; }));
    } else {
        family = plain_family(cfg.w, 1, trials, c.rng);
    }
    Rational worst = 0;
    for (const Automaton& a : family)
        for (State q = 1; q <= cfg.w; ++q)
            worst = std::max(worst, tv_distance(pushforward(*res.prg, a, q), exact_distribution(a, q, cfg.m)));
    Record r = c.record("");
    r.measured = to_string(worst);
    r.bound = to_string(res.claimed_bound);
    r.pass = worst <= res.claimed_bound;
    r.detail("hypotheses_met", res.hypotheses_met ? "true" : "false");
    r.detail("non_vacuous", res.claimed_bound < 1 ? "true" : "false");
    for (const StageReport& st : res.stages)
        r.detail("stage." + st.stage, "w=" + std::to_string(st.w) + " d=" + std::to_string(st.d) + " m=" + std::to_string(st.m) +
                                          " s=" + std::to_string(st.s) + " eps=" + to_string(st.epsilon));
    rep.add(std::move(r));
    return rep;
}

ProgramRegistry default_registry() {
    return {
        {"cycle", [](std::uint32_t w) {
             return std::pair{Automaton::from_function(w, 1, [w](State q, Symbol z) { return z ? q % w + 1 : q; }), State{1}};
         }},
        {"absorb", [](std::uint32_t w) {
             return std::pair{Automaton::from_function(w, 1, [w](State q, Symbol z) { return q == w || z ? w : q; }), State{1}};
         }},
        {"constant", [](std::uint32_t w) { return std::pair{fixtures::constant(w, 1), w}; }},
    };
}

Report uniform(Ctx& c, Report rep) {
    const auto w = u32(c.num("w", 2));
    const auto m = c.num("m", 2), s = c.num("s", 6), trials = c.num("trials", 10);
    const auto tgen = cond_prob_prg(perfect_simulator(u32(w * m), 1, m, static_cast<unsigned>(s)), w, 1, m);
    const ProgramRegistry registry = default_registry();
    const SimulatorHandle sim = advice_simulator(uniform_advice(registry, tgen, w));
    std::uint64_t mismatch = 0, fallback_bad = 0, fallback_cases = 0;
    std::vector<std::pair<Automaton, State>> registered;
    for (const ProgramDescriptor& desc : registry) {
        const auto [a, q] = desc.produce(w);
        registered.emplace_back(a, q);
        const StateDistribution exact = exact_distribution(a, q, m);
        const StateDistribution via_advice = simulated_distribution(*sim->bind(a), q);
        mismatch += tv_distance(via_advice, exact) != tv_distance(pushforward(*tgen, a, q), exact);
    }
    const StateDistribution one = StateDistribution::point(w, 1);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Automaton a = random_automaton(w, 1, c.rng);
        const auto q = static_cast<State>(c.pick(1, w));
        if (std::find(registered.begin(), registered.end(), std::pair{a, q}) != registered.end())
            continue;
        ++fallback_cases;
        fallback_bad += simulated_distribution(*sim->bind(a), q) != one;
    }
    rep.add(count_record(c.record("registered"), mismatch, registry.size()));
    rep.add(count_record(c.record("fallback"), fallback_bad, fallback_cases));
    return rep;
}

using Suite = std::function<Report(Ctx&, Report)>;

struct Entry {
    LemmaInfo info;
    Suite run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {{"adapters", "\"One step of Q is simulated by d steps\"; \"the first coordinate of Sim(Q', (q, 1), x)\"",
          "binarize and pad_states around exact inner simulators have TV 0; keys binarize_{w,d,m}, pad_{w,m,outer_d,outer_m}, trials"},
         adapters},
        {{"cond-prob", "targeted (2mw^2 eps)-pseudorandom generator; p_{v,R}[i] >= p_{q,R}[0] - 2i eps",
          "pushforward TV <= 2mw^2 eps and per-step count drop <= 2 eps 2^s; keys w, d, m, s, trials"},
         cond_prob},
        {{"cycle", "Gen'_w = G^{Sim''_w}",
          "advgen -> binarize -> SZA -> pad_states -> G with a perfect base; exact TV <= 2mw^2 (12 m eps); keys w, m, m0, s, epsilon, sampler, trials"},
         cycle},
        {{"decider", "Find the largest dt such that Pr[Q^w(q; U) = r] >= t/K",
          "decider advice simulator TV <= w/(2K) on random (w,1)-automata; keys w, K, trials"},
         decider},
        {{"nisan-lengths", "recursive hash generator: seed n(1 + 2 log m0), output m0 d",
          "seed and output lengths for log m0 = 0..4; keys d, n"},
         nisan_lengths},
        {{"perfect-sim", "inverse-CDF simulator with seed s: TV <= w 2^-s",
          "exhaustive TV of the perfect simulator; keys w, d, m0, s, trials"},
         perfect_sim},
        {{"round-trip", "M(Q(M)) = M for the canonical automaton", "random substochastic matrices; keys trials, max_w, max_d"},
         round_trip},
        {{"sampler-good", "averaging (delta, gamma)-sampler: all but a gamma fraction of x are delta-good",
          "blocks sampler bad fraction on TOGGLE/ABSORB/CONST functions; keys s, w, delta, gamma"},
         sampler_good},
        {{"snap-bounds", "Snap(p, y) <= p <= Snap(p, y) + 2^{-Delta+1}",
          "every dyadic p at precision 2 Delta and every y; key max_delta"},
         snap_bounds},
        {{"snap-closeness", "Snap perturbs each entry of the w x w matrix by at most 2^{-Delta+1}",
          "rho(Q, Snap(Q, y)) <= w 2^{-Delta+1} for every y; keys trials, max_w, max_d, max_delta"},
         snap_closeness},
        {{"snap-coincide", "Pr_Y[Snap(Q, Y) != Snap(Q', Y)] <= w^2 2^{-Delta+1} when ||M(Q) - M(Q')|| <= 2^{-2 Delta}",
          "exact boundary risk and endpoint stability outside the risk event; keys trials, max_w, max_delta"},
         snap_coincide},
        {{"sza-closeness", "rho(Q_u[y], Q0^{m0^u}) <= 8 m eps",
          "analysis chain versus exact power for sampled y; keys w, epsilon, s, m0, m, sampler, fixture_bits, samples"},
         sza_closeness},
        {{"sza-ledger", "at most u unresolved invocations and at most one unresolved read; s'+s(v+1)+u(d+log w+log a)",
          "on-demand SZA ledgers and memo agreement; keys w, epsilon, s, m0, m, samples, row_cache"},
         sza_ledger},
        {{"sza-simulator", "a (12 m eps)-simulator for the fail-automaton family",
          "Q-hat_u over sampled (x, y): bad fraction and averaged output TV; keys w, epsilon, s, m0, m, samples, slack"},
         sza_simulator_check},
        {{"sza-snap-chain", "Pr[Q-hat_i[x, y] != Q_i[y] for some i] <= 4 m eps",
          "sampled (x, y), exact chains; keys w, epsilon, s, m0, m, samples, slack"},
         sza_snap_chain},
        {{"tv-rho", "1/2 rho(Q, Q') <= delta <= rho(Q, Q')",
          "random fail-automaton pairs, delta = max one-step TV; keys trials, max_w, max_d"},
         tv_rho},
        {{"uniform", "print (Q, q, Gen(Q, q, x)); otherwise output 1",
          "3-entry registry: advice simulator TV equals targeted PRG TV, others fall back to 1; keys w, m, s, trials"},
         uniform},
    };
    return e;
}

} // namespace

const std::vector<LemmaInfo>& lemma_registry() {
    static const std::vector<LemmaInfo> infos = [] {
        std::vector<LemmaInfo> out;
        for (const Entry& e : entries())
            out.push_back(e.info);
        return out;
    }();
    return infos;
}

const LemmaInfo& lemma_info(const std::string& id) {
    for (const Entry& e : entries())
        if (e.info.id == id)
            return e.info;
    throw Error("verify", "unknown lemma id '" + id + "'");
}

Report verify_lemma(const std::string& id, const LemmaContext& ctx) {
    for (const Entry& e : entries()) {
        if (e.info.id != id)
            continue;
        Report rep;
        Ctx c(ctx, id, rep);
        Report out = e.run(c, Report{});
        rep.merge(std::move(out));
        rep.sort();
        return rep;
    }
    throw Error("verify", "unknown lemma id '" + id + "'");
}

} // namespace derand::harness
