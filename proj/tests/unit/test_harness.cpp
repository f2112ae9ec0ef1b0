#include "helpers.hpp"

#include "derand/base_simulators.hpp"
#include "derand/error.hpp"
#include "derand/harness/config.hpp"
#include "derand/harness/experiment.hpp"
#include "derand/harness/lemmas.hpp"
#include "derand/harness/measure.hpp"
#include "derand/harness/report.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace derand;
using namespace derand::harness;

namespace {

Config parse(const std::string& text) {
    std::istringstream in(text);
    return Config::parse(in);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config parsing") {
    const Config c = parse("[run]\nkind = measure\nseed = 7\nchecks = a, b,,c\n[simulator]\nepsilon = 3/8\n");
    CHECK(c.get("run.kind", "") == "measure");
    CHECK(c.get_uint("run.seed", 0) == 7);
    CHECK(c.get_uint("run.samples", 11) == 11);
    CHECK(c.get_rational("simulator.epsilon", 0) == Q("3/8"));
    CHECK(c.get_list("run.checks") == std::vector<std::string>{"a", "b", "c"});
    CHECK(c.section("simulator").size() == 1);
    CHECK_THROWS_AS(c.require("run.out"), Error);
    CHECK_THROWS_AS(parse("[run]\nseed = x\n").get_uint("run.seed", 0), Error);

    const ExperimentConfig e = ExperimentConfig::from(c);
    CHECK(e.kind == "measure");
    CHECK(e.seed == 7);
    CHECK_THROWS_AS(ExperimentConfig::from(parse("[bogus]\nx = 1\n")), Error);
    CHECK_THROWS_AS(ExperimentConfig::from(parse("[run]\ncolour = red\n")), Error);
    CHECK_THROWS_AS(ExperimentConfig::from(parse("[run]\nkind = dance\n")), Error);
    CHECK_THROWS_AS(ExperimentConfig::from(parse("[run]\nbudget_bits = 41\n")), Error);
}

TEST_CASE("report serialization") {
    Report r;
    r.param("seed", "3");
    Record a;
    a.check = "b-check";
    a.anchor = "x <= y";
    a.measured = "1/4";
    a.bound = "1/2";
    a.pass = true;
    a.detail("k", "v");
    Record b = a;
    b.check = "a-check";
    b.provenance = Provenance::sampled;
    b.pass = false;
    r.add(a);
    r.add(b);
    r.sort();
    CHECK(r.records.front().check == "a-check");
    CHECK_FALSE(r.pass());
    CHECK_FALSE(Report{}.pass());

    std::istringstream in(r.to_jsonl());
    const Report back = Report::from_jsonl(in);
    CHECK(back.to_jsonl() == r.to_jsonl());
    REQUIRE(back.records.size() == 2);
    CHECK(back.records[0].provenance == Provenance::sampled);
    CHECK(back.records[1].details.size() == 1);
    CHECK(r.to_csv().find("a-check") != std::string::npos);
    CHECK(parse_provenance(to_string(Provenance::vacuous)) == Provenance::vacuous);
}

TEST_CASE("reports are reproducible") {
    const auto dir = std::filesystem::temp_directory_path() / "derand-harness-test";
    std::filesystem::remove_all(dir);
    const std::string ini = "[run]\nkind = measure\nseed = 5\n[simulator]\nkind = perfect\nw = 2\nd = 1\nm = 3\ns = 2\n"
                            "[automaton]\nsource = random\ncount = 4\n";
    for (const char* sub : {"a", "b"}) {
        ExperimentConfig e = ExperimentConfig::from(parse(ini));
        e.out = dir / sub;
        run_experiment(e);
    }
    const std::string first = slurp(dir / "a" / "report.jsonl");
    CHECK_FALSE(first.empty());
    CHECK(first == slurp(dir / "b" / "report.jsonl"));
    CHECK(slurp(dir / "a" / "report.csv") == slurp(dir / "b" / "report.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("error measurement") {
    std::mt19937_64 rng(1);
    const SimulatorHandle zeros = prg_simulator(constant_generator(BitString(2), 1), 2, 1, Rational(0));
    const ErrorMeasurement m = measure_error(*zeros, {fixtures::toggle()}, MeasureOptions{}, rng);
    CHECK_FALSE(m.vacuous);
    CHECK(m.exhaustive);
    CHECK(m.worst == Q("1/2"));
    CHECK_FALSE(m.to_record("c", "a", Q("1/4")).pass);
    CHECK(m.to_record("c", "a", Q("1/2")).pass);

    const ErrorMeasurement none = measure_error(*zeros, {}, MeasureOptions{}, rng);
    CHECK(none.vacuous);
    const Record vr = none.to_record("c", "a", Rational(1));
    CHECK_FALSE(vr.pass);
    CHECK(vr.provenance == Provenance::vacuous);

    MeasureOptions sampled;
    sampled.budget_bits = 0;
    sampled.samples = 2000;
    const ErrorMeasurement s = measure_error(*perfect_simulator(2, 1, 2, 2), {fixtures::absorb()}, sampled, rng);
    CHECK_FALSE(s.exhaustive);
    CHECK(s.estimate <= s.upper);
    CHECK(s.upper < 0.1);

    const auto [lo, hi] = clopper_pearson(0, 100, 0.95);
    CHECK(lo == 0);
    CHECK(hi == doctest::Approx(0.0295).epsilon(0.01)); // 1 - 0.05^(1/100)
    const auto [lo2, hi2] = clopper_pearson(100, 100, 0.95);
    CHECK(hi2 == 1);
    CHECK(lo2 == doctest::Approx(0.9705).epsilon(0.01));
}

TEST_CASE("lemma registry") {
    CHECK(lemma_registry().size() == 17);
    CHECK_THROWS_AS(lemma_info("nope"), Error);
    CHECK_THROWS_AS(verify_lemma("nope", LemmaContext{}), Error);

    LemmaContext ctx;
    ctx.params.set("lemma.max_delta", "6");
    ctx.params.set("lemma.max_w", "2");
    const Report r = verify_lemma("snap-coincide", ctx);
    CHECK(r.pass());
    for (const char* id : {"round-trip", "snap-bounds", "adapters", "decider"}) {
        CAPTURE(id);
        CHECK(verify_lemma(id, LemmaContext{}).pass());
    }
}
