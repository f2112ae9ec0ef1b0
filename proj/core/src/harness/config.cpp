#include "derand/harness/config.hpp"

#include "derand/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>

namespace derand::harness {

namespace {

std::string trim(std::string s) {
    const auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
    return s;
}

} // namespace

Config Config::parse(std::istream& in) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw Error("config", e.what());
    }
    Config c;
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            c.set(name, trim(node.data()));
            continue;
        }
        for (const auto& [key, leaf] : node)
            c.set(name + "." + key, trim(leaf.data()));
    }
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("config", "cannot open " + path.string());
    return parse(in);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw Error("config", "missing key " + key);
    return it->second;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
    if (!has(key))
        return fallback;
    const std::string v = require(key);
    std::uint64_t out = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size())
        throw Error("config", key + ": expected a nonnegative integer, got '" + v + "'");
    return out;
}

Rational Config::get_rational(const std::string& key, const Rational& fallback) const {
    if (!has(key))
        return fallback;
    try {
        return parse_rational(require(key));
    } catch (const std::exception& e) {
        throw Error("config", key + ": " + e.what());
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    if (!has(key))
        return fallback;
    const std::string v = require(key);
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size())
            return d;
    } catch (const std::exception&) {
    }
    throw Error("config", key + ": expected a number, got '" + v + "'");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key))
        return fallback;
    const std::string v = require(key);
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw Error("config", key + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    std::vector<std::string> out;
    const std::string v = get(key, "");
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const std::size_t comma = std::min(v.find(',', pos), v.size());
        std::string item = trim(v.substr(pos, comma - pos));
        if (!item.empty())
            out.push_back(std::move(item));
        pos = comma + 1;
    }
    return out;
}

std::map<std::string, std::string> Config::section(const std::string& name) const {
    std::map<std::string, std::string> out;
    const std::string prefix = name + ".";
    for (auto it = values_.lower_bound(prefix); it != values_.end() && it->first.starts_with(prefix); ++it)
        out.emplace(it->first.substr(prefix.size()), it->second);
    return out;
}

namespace {

// Per-section key whitelist; the lemma section is free-form.
const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"run", {"kind", "seed", "budget_bits", "samples", "confidence", "out", "checks"}},
        {"automaton", {"source", "file", "w", "d", "count", "start"}},
        {"simulator", {"kind", "w", "d", "m", "s", "fail", "field_bits", "K", "output", "epsilon"}},
        {"sampler", {"kind", "max_blocks"}},
        {"sza", {"w", "epsilon", "s", "m0", "m", "mode", "row_cache", "samples", "ledger_runs"}},
        {"pipeline", {"w", "m", "m0", "s", "epsilon", "sampler", "advice"}},
        {"simulate", {"q", "x"}},
    };
    return s;
}

} // namespace

ExperimentConfig ExperimentConfig::from(Config raw) {
    for (const auto& [key, value] : raw.values()) {
        const std::size_t dot = key.find('.');
        if (dot == std::string::npos)
            throw Error("config", "key '" + key + "' outside any section");
        const std::string sec = key.substr(0, dot);
        if (sec == "lemma")
            continue;
        const auto it = schema().find(sec);
        if (it == schema().end())
            throw Error("config", "unknown section [" + sec + "]");
        if (!it->second.count(key.substr(dot + 1)))
            throw Error("config", "unknown key '" + key.substr(dot + 1) + "' in [" + sec + "]");
    }
    ExperimentConfig c;
    c.kind = raw.get("run.kind", c.kind);
    static const std::set<std::string> kinds = {"lemmas", "measure", "simulate", "sza", "pipeline"};
    if (!kinds.count(c.kind))
        throw Error("config", "unknown run.kind '" + c.kind + "'");
    c.seed = raw.get_uint("run.seed", c.seed);
    const std::uint64_t budget = raw.get_uint("run.budget_bits", c.budget_bits);
    if (budget > 40)
        throw Error("config", "run.budget_bits must be at most 40");
    c.budget_bits = static_cast<unsigned>(budget);
    c.samples = raw.get_uint("run.samples", c.samples);
    if (c.samples == 0)
        throw Error("config", "run.samples must be positive");
    c.confidence = raw.get_double("run.confidence", c.confidence);
    if (!(c.confidence > 0 && c.confidence < 1))
        throw Error("config", "run.confidence must lie in (0, 1)");
    c.out = raw.get("run.out", "");
    c.checks = raw.get_list("run.checks");
    if (c.kind == "lemmas" && c.checks.empty())
        throw Error("config", "run.kind = lemmas needs run.checks");
    c.raw = std::move(raw);
    return c;
}

} // namespace derand::harness
