#include "derand/automaton_io.hpp"

#include "derand/error.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace derand {

FailAutomaton AutomatonFile::as_fail() const { return fail ? FailAutomaton(table) : fail_lift(table); }

namespace {

void write_table(std::ostream& out, const Automaton& a, std::uint32_t header_w, bool fail) {
    out << header_w << ' ' << a.bits();
    if (fail)
        out << " fail";
    out << '\n';
    for (State q = 1; q <= a.states(); ++q)
        for (Symbol z = 0; z < a.alphabet_size(); ++z)
            out << q << ' ' << BitString::from_uint(z, a.bits()).to_string() << ' ' << a.next(q, z) << '\n';
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

} // namespace

void write_automaton(std::ostream& out, const Automaton& a) { write_table(out, a, a.states(), false); }

void write_automaton(std::ostream& out, const FailAutomaton& a) { write_table(out, a.automaton(), a.width(), true); }

AutomatonFile read_automaton(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line))
        throw Error("automaton-io", "missing header");
    std::istringstream header(line);
    std::uint32_t w = 0;
    unsigned d = 0;
    std::string flag;
    if (!(header >> w >> d) || w == 0)
        throw Error("automaton-io", "header must be 'w d [fail]'");
    header >> flag;
    if (!flag.empty() && flag != "fail")
        throw Error("automaton-io", "unknown header flag '" + flag + "'");
    const bool fail = flag == "fail";
    if (d > kMaxTableBits)
        throw BudgetExceeded("automaton-io", "alphabet too wide");
    const std::uint32_t states = fail ? w + 1 : w;
    const std::size_t expected = static_cast<std::size_t>(states) << d;
    std::vector<State> table(expected, 0);
    std::size_t seen = 0;
    while (next_content_line(in, line)) {
        std::istringstream row(line);
        State q = 0, r = 0;
        std::string z;
        if (!(row >> q >> z >> r))
            throw Error("automaton-io", "malformed transition line '" + line + "'");
        if (q < 1 || q > states || z.size() != d)
            throw Error("automaton-io", "transition out of range: '" + line + "'");
        const std::size_t idx = (static_cast<std::size_t>(q - 1) << d) | BitString::from_string(z).to_uint();
        if (table[idx] != 0)
            throw Error("automaton-io", "duplicate transition: '" + line + "'");
        table[idx] = r;
        ++seen;
    }
    if (seen != expected)
        throw Error("automaton-io", "expected " + std::to_string(expected) + " transitions, found " + std::to_string(seen));
    AutomatonFile file{Automaton(states, d, std::move(table)), fail};
    if (fail)
        (void)file.as_fail();
    return file;
}

AutomatonFile load_automaton(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("automaton-io", "cannot open " + path.string());
    return read_automaton(in);
}

void write_distribution(std::ostream& out, const StateDistribution& d) {
    for (State q = 1; q <= d.size(); ++q)
        out << (q > 1 ? " " : "") << to_string(d[q]);
    out << '\n';
}

StateDistribution read_distribution(std::istream& in) {
    std::vector<Rational> p;
    std::string token;
    while (in >> token)
        p.push_back(parse_rational(token));
    return StateDistribution(std::move(p));
}

} // namespace derand
