#pragma once

#include "qfano/basket.hpp"
#include "qfano/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qfano {

// The index set for Q-Fano threefolds.
const std::set<long>& fano_index_set();

struct LinkContext {
    long q = 0;
    std::optional<Basket> basket;
    long center_index = 1;  // 1 for a Gorenstein centre
    std::set<Rational> alpha_set;
    std::set<long> q_hat_allowed;
    std::optional<long> n;
    std::optional<long> d;
};

enum class Relation { Equal, AtLeast };

// k*q_hat = q*s + (q*beta - k*alpha)*e with beta = frac + m   (Equal)
// k*q_hat >= q*s + (q*beta - k*alpha)*e with beta = frac       (AtLeast, frac a lower bound)
struct LinkEquation {
    long k = 1;
    Rational frac;
    Relation relation = Relation::Equal;
    long s_min = 0;
    std::optional<long> s_max;
    std::map<long, long> s_min_by_qhat;
    long m_min = 0;
    std::optional<long> m_max;
    long e_min = 1;
    std::optional<long> e_max;

    long s_lower(long q_hat) const;
};

struct LinkSolution {
    long q_hat = 0;
    long e = 0;
    Rational alpha;
    std::vector<std::pair<long, long>> sm;  // per equation (s_k, m_k)

    friend auto operator<=>(const LinkSolution&, const LinkSolution&) = default;
};

struct SolveCaps {
    long q_hat_max = 0;
    long e_max = 0;
    std::vector<long> m_cap;  // largest m examined per equation (Equal relation)
};

Rational m_fraction(long q, long r, long k);
long threshold_min_m(const Rational& frac, const Rational& t_m, const Rational& alpha);

std::vector<LinkSolution> solve_main(const std::vector<LinkEquation>& equations, const LinkContext& context,
                                     const Rational& alpha, SolveCaps* caps = nullptr);

bool satisfies(const LinkEquation& eq, long q, const Rational& alpha, long q_hat, long e, long s, long m);

Rational discrepancy_lower_bound(long q, long q_hat, long n, long e, long k, long s_k);
bool gcd_obstruction(long q, long n);

}  // namespace qfano
