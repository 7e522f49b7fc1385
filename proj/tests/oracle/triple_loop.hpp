#pragma once

// Naive solver for k*q_hat = q*s + (q*beta - k*alpha)*e, beta = frac + m
// (or >= with beta = frac). Loops q_hat, e, s, m over boxes, no derived caps.

#include "frac.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

struct Eq {
    long k;
    Frac frac;
    bool ge = false;
    long s_lo, s_hi;
    long m_lo, m_hi;
};

struct Sol {
    long q_hat, e;
    std::vector<std::pair<long, long>> sm;
    bool operator<(const Sol& o) const { return std::tie(q_hat, e, sm) < std::tie(o.q_hat, o.e, o.sm); }
    bool operator==(const Sol& o) const { return q_hat == o.q_hat && e == o.e && sm == o.sm; }
};

inline std::vector<Sol> triple_loop(long q, Frac alpha, const std::set<long>& q_hats, long e_lo, long e_hi,
                                    const std::vector<Eq>& eqs) {
    std::vector<Sol> out;
    for (long qh : q_hats)
        for (long e = e_lo; e <= e_hi; ++e) {
            std::vector<std::vector<std::pair<long, long>>> per;
            for (auto& eq : eqs) {
                std::vector<std::pair<long, long>> f;
                for (long s = eq.s_lo; s <= eq.s_hi; ++s) {
                    if (eq.ge) {
                        Frac rhs = Frac(q * s) + (Frac(q) * eq.frac - Frac(eq.k) * alpha) * Frac(e);
                        if (rhs <= Frac(eq.k * qh)) f.emplace_back(s, 0);
                        continue;
                    }
                    for (long m = eq.m_lo; m <= eq.m_hi; ++m) {
                        Frac beta = eq.frac + Frac(m);
                        Frac rhs = Frac(q * s) + (Frac(q) * beta - Frac(eq.k) * alpha) * Frac(e);
                        if (rhs == Frac(eq.k * qh)) f.emplace_back(s, m);
                    }
                }
                std::sort(f.begin(), f.end());
                per.push_back(f);
            }
            std::vector<Sol> acc{{qh, e, {}}};
            for (auto& f : per) {
                std::vector<Sol> next;
                for (auto& a : acc)
                    for (auto& p : f) {
                        auto b = a;
                        b.sm.push_back(p);
                        next.push_back(b);
                    }
                acc = std::move(next);
            }
            out.insert(out.end(), acc.begin(), acc.end());
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
