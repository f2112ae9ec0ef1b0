#include "derand/rational.hpp"

#include "derand/error.hpp"

namespace derand {

Rational pow2(long k) {
    Integer p = 1;
    if (k >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    return Rational(Integer(1), p);
}

std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.erase(s.begin());
    if (s.rfind("2^", 0) == 0) {
        try {
            return pow2(std::stol(s.substr(2)));
        } catch (const std::exception&) {
            throw Error("rational", "malformed power of two '" + s + "'");
        }
    }
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw Error("rational", "malformed rational '" + s + "'");
    if (r.get_den() == 0)
        throw Error("rational", "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

Integer to_integer(std::uint64_t v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

double to_double(const Rational& r) { return r.get_d(); }

} // namespace derand
