#include "derand/harness/report.hpp"

#include "derand/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace derand::harness {

using nlohmann::ordered_json;

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::exhaustive:
        return "exhaustive";
    case Provenance::sampled:
        return "sampled";
    case Provenance::vacuous:
        return "vacuous";
    }
    return "?";
}

Provenance parse_provenance(const std::string& s) {
    if (s == "exhaustive")
        return Provenance::exhaustive;
    if (s == "sampled")
        return Provenance::sampled;
    if (s == "vacuous")
        return Provenance::vacuous;
    throw Error("report", "unknown provenance '" + s + "'");
}

void Report::merge(Report other) {
    for (Record& r : other.records)
        records.push_back(std::move(r));
    for (auto& p : other.parameters)
        parameters.push_back(std::move(p));
}

bool Report::pass() const {
    return !records.empty() && std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

void Report::sort() {
    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) { return a.check < b.check; });
}

std::string Report::to_jsonl() const {
    std::ostringstream out;
    ordered_json head = {{"type", "parameters"}};
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : parameters)
        params[k] = v;
    head["values"] = params;
    out << head.dump() << '\n';
    for (const Record& r : records) {
        ordered_json j = {{"type", "record"},          {"check", r.check}, {"anchor", r.anchor},
                          {"measured", r.measured},    {"bound", r.bound}, {"provenance", to_string(r.provenance)},
                          {"pass", r.pass}};
        ordered_json details = ordered_json::object();
        for (const auto& [k, v] : r.details)
            details[k] = v;
        j["details"] = details;
        out << j.dump() << '\n';
    }
    return out.str();
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "check,anchor,measured,bound,provenance,pass\n";
    for (const Record& r : records)
        out << csv_field(r.check) << ',' << csv_field(r.anchor) << ',' << csv_field(r.measured) << ','
            << csv_field(r.bound) << ',' << to_string(r.provenance) << ',' << (r.pass ? "true" : "false") << '\n';
    return out.str();
}

Report Report::from_jsonl(std::istream& in) {
    Report rep;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            const ordered_json j = ordered_json::parse(line);
            const std::string type = j.at("type");
            if (type == "parameters") {
                for (const auto& [k, v] : j.at("values").items())
                    rep.param(k, v.get<std::string>());
                continue;
            }
            if (type != "record")
                throw Error("report", "unknown line type '" + type + "'");
            Record r{j.at("check"), j.at("anchor"), j.at("measured"), j.at("bound"),
                     parse_provenance(j.at("provenance")), j.at("pass"), {}};
            for (const auto& [k, v] : j.at("details").items())
                r.detail(k, v.get<std::string>());
            rep.add(std::move(r));
        } catch (const ordered_json::exception& e) {
            throw Error("report", "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rep;
}

void Report::write(const std::filesystem::path& dir, const std::string& stem) const {
    std::filesystem::create_directories(dir);
    std::ofstream jsonl(dir / (stem + ".jsonl"));
    std::ofstream csv(dir / (stem + ".csv"));
    if (!jsonl || !csv)
        throw Error("report", "cannot write to " + dir.string());
    jsonl << to_jsonl();
    csv << to_csv();
}

} // namespace derand::harness
