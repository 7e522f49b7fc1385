#pragma once

// Small exact fraction on __int128, only for oracles.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oracle {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct Frac {
    i128 n = 0, d = 1;

    Frac() = default;
    Frac(long long v) : n(v) {}
    Frac(i128 a, i128 b) : n(a), d(b) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) n = -n, d = -d;
        i128 g = gcd128(n, d);
        if (g > 1) n /= g, d /= g;
    }

    friend Frac operator+(Frac a, Frac b) { return {a.n * b.d + b.n * a.d, a.d * b.d}; }
    friend Frac operator-(Frac a, Frac b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }
    friend Frac operator*(Frac a, Frac b) { return {a.n * b.n, a.d * b.d}; }
    friend Frac operator/(Frac a, Frac b) { return {a.n * b.d, a.d * b.n}; }
    friend bool operator==(Frac a, Frac b) { return a.n == b.n && a.d == b.d; }
    friend bool operator<(Frac a, Frac b) { return a.n * b.d < b.n * a.d; }
    friend bool operator<=(Frac a, Frac b) { return !(b < a); }
    bool integral() const { return d == 1; }

    std::string str() const {
        auto s = [](i128 v) {
            if (v == 0) return std::string("0");
            bool neg = v < 0;
            if (neg) v = -v;
            std::string o;
            while (v) o.insert(o.begin(), char('0' + int(v % 10))), v /= 10;
            return neg ? "-" + o : o;
        };
        return d == 1 ? s(n) : s(n) + "/" + s(d);
    }
};

inline long mod(long x, long r) { return ((x % r) + r) % r; }

}  // namespace oracle
