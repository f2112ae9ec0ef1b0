#pragma once

#include "derand/rational.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace derand::harness {

enum class Provenance {
    exhaustive, ///< exact value from full enumeration
    sampled,    ///< estimate with a stated confidence bound
    vacuous,    ///< nothing was measured (e.g. empty family)
};

using derand::to_string;
std::string to_string(Provenance p);
Provenance parse_provenance(const std::string& s);

/// One check. Values are strings so exact fractions survive serialization.
struct Record {
    std::string check;
    std::string anchor;
    std::string measured;
    std::string bound;
    Provenance provenance = Provenance::exhaustive;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> details;

    Record& detail(std::string key, std::string value) {
        details.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

struct Report {
    std::vector<Record> records;
    std::vector<std::pair<std::string, std::string>> parameters;

    void add(Record r) { records.push_back(std::move(r)); }
    void merge(Report other);
    void param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
    /// All records pass; an empty report does not.
    bool pass() const;

    /// Stable order by check id (then insertion order).
    void sort();
    /// One JSON object per line: parameters first ("type":"parameters"), then records.
    std::string to_jsonl() const;
    std::string to_csv() const;
    static Report from_jsonl(std::istream& in);

    /// Writes <dir>/<stem>.jsonl and <dir>/<stem>.csv.
    void write(const std::filesystem::path& dir, const std::string& stem = "report") const;
};

} // namespace derand::harness
