#include "derand/matrix.hpp"

#include "derand/error.hpp"

#include <string>

namespace derand {

Dyadic::Dyadic(std::uint64_t num, unsigned prec) : numerator(num), precision(prec) {
    if (prec > kMaxDyadicPrecision)
        throw Error("dyadic", "precision " + std::to_string(prec) + " exceeds 62 bits");
    if (num > (std::uint64_t{1} << prec))
        throw Error("dyadic", "value exceeds 1");
}

Rational Dyadic::value() const { return Rational(to_integer(numerator)) * pow2(-static_cast<long>(precision)); }

Dyadic Dyadic::at_precision(unsigned prec) const {
    if (prec < precision)
        throw Error("dyadic", "cannot lower precision without rounding");
    return {numerator << (prec - precision), prec};
}

SubstochasticMatrix::SubstochasticMatrix(std::uint32_t w, unsigned precision)
    : SubstochasticMatrix(w, precision, std::vector<std::uint64_t>(static_cast<std::size_t>(w) * w, 0)) {}

SubstochasticMatrix::SubstochasticMatrix(std::uint32_t w, unsigned precision, std::vector<std::uint64_t> numerators)
    : w_(w), precision_(precision), num_(std::move(numerators)) {
    check();
}

void SubstochasticMatrix::check() const {
    if (precision_ > kMaxDyadicPrecision)
        throw Error("substochastic", "precision exceeds 62 bits");
    if (num_.size() != static_cast<std::size_t>(w_) * w_)
        throw Error("substochastic", "expected w*w entries");
    const std::uint64_t one = std::uint64_t{1} << precision_;
    for (State q = 1; q <= w_; ++q) {
        std::uint64_t sum = 0;
        for (State r = 1; r <= w_; ++r) {
            const std::uint64_t v = numerator(q, r);
            if (v > one || sum > one - v)
                throw Error("substochastic", "row " + std::to_string(q) + " sums to more than 1");
            sum += v;
        }
    }
}

std::uint64_t SubstochasticMatrix::row_sum(State q) const noexcept {
    std::uint64_t sum = 0;
    for (State r = 1; r <= w_; ++r)
        sum += numerator(q, r);
    return sum;
}

RationalMatrix RationalMatrix::identity(std::uint32_t n) {
    RationalMatrix m(n);
    for (State i = 1; i <= n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from(const SubstochasticMatrix& s) {
    RationalMatrix m(s.size());
    const Rational scale = pow2(-static_cast<long>(s.precision()));
    for (State q = 1; q <= s.size(); ++q)
        for (State r = 1; r <= s.size(); ++r)
            m(q, r) = Rational(to_integer(s.numerator(q, r))) * scale;
    return m;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (o.n_ != n_)
        throw Error("matrix", "dimension mismatch");
    RationalMatrix out(n_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = a_[i] - o.a_[i];
    return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (o.n_ != n_)
        throw Error("matrix", "dimension mismatch");
    RationalMatrix out(n_);
    for (State i = 1; i <= n_; ++i)
        for (State k = 1; k <= n_; ++k) {
            const Rational& aik = (*this)(i, k);
            if (sgn(aik) == 0)
                continue;
            for (State j = 1; j <= n_; ++j)
                out(i, j) += aik * o(k, j);
        }
    return out;
}

Rational matrix_norm(const RationalMatrix& m) {
    Rational best = 0;
    for (State q = 1; q <= m.size(); ++q) {
        Rational sum = 0;
        for (State r = 1; r <= m.size(); ++r)
            sum += abs(m(q, r));
        if (sum > best)
            best = sum;
    }
    return best;
}

SubstochasticMatrix transition_matrix(const FailAutomaton& a) {
    const std::uint32_t w = a.width();
    if (a.bits() > kMaxDyadicPrecision)
        throw Error("transition_matrix", "alphabet too wide");
    std::vector<std::uint64_t> num(static_cast<std::size_t>(w) * w, 0);
    for (State q = 1; q <= w; ++q)
        for (State r : a.automaton().row(q))
            if (r <= w)
                ++num[(q - 1) * w + (r - 1)];
    return SubstochasticMatrix(w, a.bits(), std::move(num));
}

FailAutomaton canonical_automaton(const SubstochasticMatrix& m) {
    const std::uint32_t w = m.size();
    const unsigned d = m.precision();
    if (d > kMaxTableBits)
        throw BudgetExceeded("canonical_automaton", "precision too large to tabulate");
    std::vector<State> table;
    table.reserve(static_cast<std::size_t>(w + 1) << d);
    std::vector<std::uint64_t> cumulative(w);
    for (State q = 1; q <= w; ++q) {
        std::uint64_t acc = 0;
        for (State r = 1; r <= w; ++r)
            cumulative[r - 1] = acc += m.numerator(q, r);
        // Symbols are 1-based in the threshold rule: symbol z0 is z = z0 + 1.
        State r = 1;
        for (Symbol z0 = 0; z0 < (Symbol{1} << d); ++z0) {
            while (r <= w && z0 + 1 > cumulative[r - 1])
                ++r;
            table.push_back(r);
        }
    }
    for (Symbol z0 = 0; z0 < (Symbol{1} << d); ++z0)
        table.push_back(w + 1);
    return FailAutomaton(Automaton(w + 1, d, std::move(table)));
}

Rational rho(const FailAutomaton& a, const FailAutomaton& b) {
    if (a.width() != b.width())
        throw Error("rho", "automata have different widths");
    return matrix_norm(RationalMatrix::from(transition_matrix(a)) - RationalMatrix::from(transition_matrix(b)));
}

RationalMatrix transition_power(const FailAutomaton& a, std::uint64_t k) {
    RationalMatrix base = RationalMatrix::from(transition_matrix(a));
    RationalMatrix result = RationalMatrix::identity(a.width());
    while (k > 0) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

} // namespace derand
