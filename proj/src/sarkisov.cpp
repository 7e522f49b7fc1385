#include "qfano/sarkisov.hpp"

#include "qfano/error.hpp"

#include <algorithm>

namespace qfano {

const std::set<long>& fano_index_set() {
    static const std::set<long> s{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19};
    return s;
}

long LinkEquation::s_lower(long q_hat) const {
    auto it = s_min_by_qhat.find(q_hat);
    return it == s_min_by_qhat.end() ? s_min : std::max(s_min, it->second);
}

Rational m_fraction(long q, long r, long k) {
    if (r < 1) throw Error(ErrorCode::InvalidInput, "index must be positive");
    if (gcd_l(q, r) != 1)
        throw Error(ErrorCode::NotInvertible,
                    "q=" + std::to_string(q) + " and r=" + std::to_string(r) + " are not coprime");
    if (r == 1) return 0;
    return Rational::normalize(residue(k * inverse_mod(q, r), r), r);
}

long threshold_min_m(const Rational& frac, const Rational& t_m, const Rational& alpha) {
    if (frac < 0 || frac >= 1) throw Error(ErrorCode::InvalidInput, "fractional part must lie in [0, 1)");
    if (alpha <= 0) throw Error(ErrorCode::InvalidInput, "discrepancy must be positive");
    Integer m = (t_m * alpha - frac).ceil();
    if (m < 0) m = 0;
    return m.get_si();
}

bool satisfies(const LinkEquation& eq, long q, const Rational& alpha, long q_hat, long e, long s, long m) {
    Rational beta = eq.frac + Rational(m);
    Rational lhs(eq.k * q_hat);
    Rational rhs = Rational(q * s) + (Rational(q) * beta - Rational(eq.k) * alpha) * Rational(e);
    return eq.relation == Relation::Equal ? lhs == rhs : lhs >= rhs;
}

namespace {

long floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q.get_si();
}

}  // namespace

std::vector<LinkSolution> solve_main(const std::vector<LinkEquation>& equations, const LinkContext& ctx,
                                     const Rational& alpha, SolveCaps* caps) {
    if (equations.empty()) throw Error(ErrorCode::MalformedEquation, "no equations");
    if (alpha <= 0) throw Error(ErrorCode::MalformedEquation, "discrepancy must be positive");
    for (long qh : ctx.q_hat_allowed)
        if (!fano_index_set().count(qh))
            throw Error(ErrorCode::MalformedEquation, "q_hat " + std::to_string(qh) + " is not a Fano index");
    std::vector<LinkSolution> out;
    auto nothing = [&] {
        if (caps) {
            caps->q_hat_max = ctx.q_hat_allowed.empty() ? 0 : *ctx.q_hat_allowed.rbegin();
            caps->e_max = 0;
            caps->m_cap.assign(equations.size(), 0);
        }
        return out;
    };
    if (ctx.q_hat_allowed.empty()) return nothing();
    for (auto& eq : equations) {
        long lo = eq.s_min;
        for (auto& [qh, v] : eq.s_min_by_qhat) lo = std::min(lo, std::max(eq.s_min, v));
        bool empty = (eq.s_max && *eq.s_max < lo) || (eq.relation == Relation::Equal && eq.m_max && *eq.m_max < eq.m_min);
        if (empty) return nothing();
    }
    const long q = ctx.q;
    const long q_hat_max = *ctx.q_hat_allowed.rbegin();

    // coefficient of e at m = 0, must be integral
    std::vector<Integer> c0;
    for (auto& eq : equations) {
        if (eq.k < 1) throw Error(ErrorCode::MalformedEquation, "k must be positive");
        if (eq.relation == Relation::Equal && (eq.frac < 0 || eq.frac >= 1))
            throw Error(ErrorCode::MalformedEquation, "fractional part of beta must lie in [0, 1)");
        Rational c = Rational(q) * eq.frac - Rational(eq.k) * alpha;
        if (eq.relation == Relation::Equal && !c.is_integer())
            throw Error(ErrorCode::MalformedEquation, "coefficient q*beta - k*alpha = " + c.str() +
                                                          " is not an integer for k=" + std::to_string(eq.k));
        c0.push_back(c.is_integer() ? c.num() : c.floor());
    }

    // e range: explicit caps, otherwise derived from positivity of the e coefficient
    long e_min = 1;
    std::optional<long> e_max;
    for (std::size_t i = 0; i < equations.size(); ++i) {
        auto& eq = equations[i];
        e_min = std::max(e_min, eq.e_min);
        if (eq.e_max) e_max = e_max ? std::min(*e_max, *eq.e_max) : *eq.e_max;
        long s_lo = eq.s_min;
        for (auto& [qh, v] : eq.s_min_by_qhat) s_lo = std::min(s_lo, std::max(eq.s_min, v));
        Rational coef = eq.relation == Relation::Equal
                            ? Rational(c0[i]) + Rational(q * eq.m_min)
                            : Rational(q) * eq.frac - Rational(eq.k) * alpha;
        if (coef > 0) {
            Rational cap = (Rational(eq.k * q_hat_max) - Rational(q * s_lo)) / coef;
            long c = cap.floor().get_si();
            e_max = e_max ? std::min(*e_max, c) : c;
        }
    }
    if (!e_max)
        throw Error(ErrorCode::NoBound, "cannot bound e: every coefficient of e is non-positive");
    if (caps) {
        caps->q_hat_max = q_hat_max;
        caps->e_max = *e_max;
        caps->m_cap.assign(equations.size(), 0);
    }

    for (long q_hat : ctx.q_hat_allowed) {
        for (long e = e_min; e <= *e_max; ++e) {
            std::vector<std::vector<std::pair<long, long>>> per_eq;
            bool dead = false;
            for (std::size_t i = 0; i < equations.size() && !dead; ++i) {
                auto& eq = equations[i];
                long s_lo = eq.s_lower(q_hat);
                std::vector<std::pair<long, long>> found;
                if (eq.relation == Relation::Equal) {
                    // q*m*e <= k*q_hat - q*s_lo - c0*e
                    Integer room = Integer(eq.k * q_hat) - Integer(q * s_lo) - c0[i] * e;
                    long m_cap = room < 0 ? eq.m_min - 1 : floor_div(room, Integer(q * e));
                    if (eq.m_max) m_cap = std::min(m_cap, *eq.m_max);
                    if (caps) caps->m_cap[i] = std::max(caps->m_cap[i], m_cap);
                    for (long m = eq.m_min; m <= m_cap; ++m) {
                        Integer rest = Integer(eq.k * q_hat) - (c0[i] + q * m) * e;
                        if (rest % q != 0) continue;
                        Integer s = rest / q;
                        if (s < s_lo || (eq.s_max && s > *eq.s_max)) continue;
                        found.emplace_back(s.get_si(), m);
                    }
                } else {
                    Rational rhs_e = (Rational(q) * eq.frac - Rational(eq.k) * alpha) * Rational(e);
                    Rational room = Rational(eq.k * q_hat) - rhs_e;
                    long s_cap = (room / Rational(q)).floor().get_si();
                    if (eq.s_max) s_cap = std::min(s_cap, *eq.s_max);
                    for (long s = s_lo; s <= s_cap; ++s) found.emplace_back(s, 0);
                }
                std::sort(found.begin(), found.end());
                if (found.empty()) dead = true;
                per_eq.push_back(std::move(found));
            }
            if (dead) continue;
            // cartesian product in lexicographic order
            std::vector<std::size_t> idx(per_eq.size(), 0);
            bool done = false;
            while (!done) {
                LinkSolution sol{q_hat, e, alpha, {}};
                for (std::size_t i = 0; i < per_eq.size(); ++i) sol.sm.push_back(per_eq[i][idx[i]]);
                out.push_back(std::move(sol));
                std::size_t j = per_eq.size();
                while (true) {
                    if (j == 0) { done = true; break; }
                    --j;
                    if (++idx[j] < per_eq[j].size()) break;
                    idx[j] = 0;
                }
            }
        }
    }
    return out;
}

Rational discrepancy_lower_bound(long q, long q_hat, long n, long e, long k, long s_k) {
    if (s_k <= 0) throw Error(ErrorCode::NoBound, "s_k = 0: the divisor may be exceptional, no bound");
    if (e < 1 || n < 1) throw Error(ErrorCode::InvalidInput, "n and e must be positive");
    return Rational::normalize(q_hat * k - q * s_k, n * e * s_k);
}

bool gcd_obstruction(long q, long n) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
    return n > 1 && gcd_l(n, q) == 1;
}

}  // namespace qfano
