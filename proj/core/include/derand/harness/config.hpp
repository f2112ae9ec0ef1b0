#pragma once

#include "derand/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace derand::harness {

/// Flat "section.key" -> value store read from an INI file.
class Config {
public:
    static Config parse(std::istream& in);
    static Config load(const std::filesystem::path& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    Rational get_rational(const std::string& key, const Rational& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma separated, blanks trimmed, empty items dropped.
    std::vector<std::string> get_list(const std::string& key) const;

    /// Keys of one section, without the "section." prefix.
    std::map<std::string, std::string> section(const std::string& name) const;
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Validated run settings; everything random derives from `seed`.
struct ExperimentConfig {
    Config raw;
    std::string kind = "lemmas"; ///< lemmas | measure | simulate | sza | pipeline
    std::uint64_t seed = 1;
    unsigned budget_bits = 24;
    std::uint64_t samples = 4096;
    double confidence = 0.99;
    std::filesystem::path out;
    std::vector<std::string> checks;

    /// Rejects unknown sections and keys, bad kinds and malformed numbers.
    static ExperimentConfig from(Config raw);
};

} // namespace derand::harness
