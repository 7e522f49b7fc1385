#include "qfano/rational.hpp"

#include "qfano/error.hpp"

#include <numeric>

namespace qfano {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::NotInvertible: return "not-invertible";
        case ErrorCode::NoSolution: return "no-solution";
        case ErrorCode::InconsistentTorsion: return "inconsistent-torsion";
        case ErrorCode::UnsupportedIndex: return "unsupported-index";
        case ErrorCode::VanishingNotApplicable: return "vanishing-not-applicable";
        case ErrorCode::NoOrder: return "no-order";
        case ErrorCode::MalformedEquation: return "malformed-equation";
        case ErrorCode::NoBound: return "no-bound";
        case ErrorCode::UnknownAxiom: return "unknown-axiom";
        case ErrorCode::UnknownTable: return "unknown-table";
        case ErrorCode::MissingData: return "missing-data";
    }
    return "unknown";
}

Rational Rational::normalize(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
    Rational r;
    r.v_ = mpq_class(num, den);
    r.v_.canonicalize();
    return r;
}

static bool parse_integer(std::string_view s, Integer& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return out.set_str(digits, 10) == 0;
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    Integer num, den = 1;
    auto slash = text.find('/');
    bool ok = slash == std::string_view::npos
                  ? parse_integer(text, num)
                  : parse_integer(trim(text.substr(0, slash)), num) &&
                        parse_integer(trim(text.substr(slash + 1)), den);
    if (!ok) throw Error(ErrorCode::InvalidInput, "not a rational: '" + std::string(text) + "'");
    return normalize(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0) throw Error(ErrorCode::InvalidInput, "division by zero");
    v_ /= o.v_;
    return *this;
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Integer Rational::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rational::hash() const { return std::hash<std::string>{}(str()); }

long residue(long x, long r) {
    if (r <= 0) throw Error(ErrorCode::InvalidInput, "modulus must be positive");
    long m = x % r;
    return m < 0 ? m + r : m;
}

Integer residue(const Integer& x, const Integer& r) {
    if (r <= 0) throw Error(ErrorCode::InvalidInput, "modulus must be positive");
    Integer m;
    mpz_fdiv_r(m.get_mpz_t(), x.get_mpz_t(), r.get_mpz_t());
    return m;
}

long inverse_mod(long a, long r) {
    if (r < 1) throw Error(ErrorCode::InvalidInput, "modulus must be positive");
    if (r == 1) return 0;
    long g = r, x = 0, x1 = 1, b = residue(a, r);
    long aa = b;
    while (aa != 0) {
        long q = g / aa;
        long t = g - q * aa; g = aa; aa = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1)
        throw Error(ErrorCode::NotInvertible,
                    std::to_string(a) + " is not invertible modulo " + std::to_string(r));
    return residue(x, r);
}

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return std::lcm(a, b); }

}  // namespace qfano
