#include "derand/error.hpp"
#include "derand/harness/experiment.hpp"
#include "derand/harness/lemmas.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace derand;
using namespace derand::harness;

namespace {

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned budget_bits = 24;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "INI experiment config");
    app->add_option("--out", c.out, "directory for report.jsonl and report.csv");
    app->add_option("--seed", c.seed, "random-source seed (overrides run.seed)");
    app->add_option("--budget-bits", c.budget_bits, "enumerate seeds exhaustively up to this many bits")
        ->capture_default_str();
}

void print(const Report& rep) {
    for (const Record& r : rep.records)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << "  measured=" << r.measured << "  bound=" << r.bound
                  << "  [" << to_string(r.provenance) << "]\n";
    std::cout << (rep.pass() ? "all checks passed" : "some checks failed") << " (" << rep.records.size()
              << " records)\n";
}

int run(const Common& c, const std::string& kind, const std::string& check = {}) {
    Config raw = c.config.empty() ? Config{} : Config::load(c.config);
    raw.set("run.kind", kind);
    if (!check.empty())
        raw.set("run.checks", check);
    if (c.seed)
        raw.set("run.seed", std::to_string(*c.seed));
    raw.set("run.budget_bits", std::to_string(c.budget_bits));
    if (!c.out.empty())
        raw.set("run.out", c.out);
    const Report rep = run_experiment(ExperimentConfig::from(std::move(raw)));
    print(rep);
    return rep.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"derand: space-bounded derandomization testbench"};
    app.require_subcommand(1);

    Common common;
    auto* simulate = app.add_subcommand("simulate", "one simulator evaluation ([simulator], [automaton], [simulate])");
    add_common(simulate, common);
    auto* measure = app.add_subcommand("measure", "worst-case error of a simulator over an automaton family");
    add_common(measure, common);
    auto* verify = app.add_subcommand("verify", "run one lemma suite; parameters from [lemma]");
    add_common(verify, common);
    std::string lemma_id;
    bool list = false;
    verify->add_option("lemma-id", lemma_id, "lemma id");
    verify->add_flag("--list", list, "list lemma ids");
    auto* pipeline = app.add_subcommand("pipeline", "compose advgen -> binarize -> SZA -> pad -> G ([pipeline])");
    add_common(pipeline, common);
    auto* sza = app.add_subcommand("sza", "SZA end-to-end checks ([sza], [sampler])");
    add_common(sza, common);
    auto* report = app.add_subcommand("report", "re-render a report.jsonl");
    std::string report_path;
    report->add_option("path", report_path, "report.jsonl")->required();
    report->add_option("--out", common.out, "write re-rendered report.jsonl/csv here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate)
            return run(common, "simulate");
        if (*measure)
            return run(common, "measure");
        if (*pipeline)
            return run(common, "pipeline");
        if (*sza)
            return run(common, "sza");
        if (*verify) {
            if (list) {
                for (const LemmaInfo& l : lemma_registry())
                    std::cout << l.id << "\t" << l.anchor << "\n";
                return 0;
            }
            if (lemma_id.empty())
                throw Error("verify", "missing lemma id (see --list)");
            lemma_info(lemma_id);
            return run(common, "lemmas", lemma_id);
        }
        if (*report) {
            std::ifstream in(report_path);
            if (!in)
                throw Error("report", "cannot open " + report_path);
            Report rep = Report::from_jsonl(in);
            rep.sort();
            if (!common.out.empty())
                rep.write(common.out);
            print(rep);
            return rep.pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
