#pragma once

// Library against oracle comparisons, shared by the oracle tests and the
// acceptance runner. Each returns "" on agreement, otherwise a description.

#include "brute_search.hpp"
#include "triple_loop.hpp"

#include "qfano/sarkisov.hpp"
#include "qfano/search.hpp"

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using Key = std::tuple<std::vector<std::pair<long, long>>, std::vector<long>, std::string>;

inline std::string search_agrees(long q, long max_r, std::size_t* size = nullptr) {
    std::set<Key> lib, ora;
    qfano::SearchConfig c;
    c.q = q;
    c.max_index = max_r;
    auto add = [&](const qfano::CandidateRecord& rec) {
        std::vector<std::pair<long, long>> b;
        for (auto& p : rec.basket.points()) b.emplace_back(p.r, p.b);
        lib.insert({b, rec.l, rec.a3.str()});
    };
    for (auto& rec : qfano::search_q(c)) {
        add(rec);
        // the search keeps one twist tuple per basket and lists the others
        for (auto& alt : rec.alternatives) {
            std::vector<qfano::BasketPoint> pts;
            for (std::size_t i = 0; i < alt.size(); ++i) pts.emplace_back(rec.basket[i].r, alt[i]);
            auto f = qfano::filter_twisted(q, qfano::Basket(pts));
            if (!f.record) return "q=" + std::to_string(q) + ": alternative twist of " + rec.basket.str() + " rejected";
            add(*f.record);
        }
    }
    for (auto& cand : brute_search(q, max_r)) {
        std::vector<std::pair<long, long>> b;
        for (auto& p : cand.basket) b.emplace_back(p.r, p.b);
        ora.insert({b, cand.l, cand.a3.str()});
    }
    if (size) *size = ora.size();
    if (lib == ora) return "";
    std::ostringstream o;
    o << "q=" << q << ": library " << lib.size() << " candidates, oracle " << ora.size();
    return o.str();
}

inline qfano::Rational to_rational(const Frac& f) {
    return qfano::Rational::normalize(qfano::Integer(static_cast<long>(f.n)), qfano::Integer(static_cast<long>(f.d)));
}

// Random bounded instances with explicit caps on s, m and e.
inline std::string solver_agrees(unsigned seed, int count, std::size_t* nonempty = nullptr) {
    std::mt19937 rng(seed);
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    const std::vector<long> qs{3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19};
    std::size_t hits = 0;
    for (int it = 0; it < count; ++it) {
        long q = qs[pick(0, qs.size() - 1)];
        long r;
        do r = pick(2, 13);
        while (std::gcd(q, r) != 1);
        Frac alpha(1, r);
        std::set<long> q_hats;
        for (long v : qfano::fano_index_set())
            if (v <= q && pick(0, 3) > 0) q_hats.insert(v);
        long e_hi = pick(1, 6);
        int neq = pick(1, 2);
        std::vector<Eq> eqs;
        std::vector<qfano::LinkEquation> leqs;
        for (int i = 0; i < neq; ++i) {
            Eq e;
            e.k = pick(1, q + 2);
            e.ge = pick(0, 4) == 0;
            e.s_lo = pick(0, 2);
            e.s_hi = e.s_lo + pick(-1, 6);
            e.m_lo = e.ge ? 0 : pick(0, 2);
            e.m_hi = e.ge ? 0 : e.m_lo + pick(0, 5);
            qfano::Rational fr = e.ge ? qfano::Rational::normalize(pick(0, 3 * r), r)
                                      : qfano::m_fraction(q, r, e.k);
            e.frac = Frac((i128)fr.num().get_si(), (i128)fr.den().get_si());
            eqs.push_back(e);
            qfano::LinkEquation le;
            le.k = e.k;
            le.frac = fr;
            le.relation = e.ge ? qfano::Relation::AtLeast : qfano::Relation::Equal;
            le.s_min = e.s_lo;
            le.s_max = e.s_hi;
            le.m_min = e.m_lo;
            le.m_max = e.m_hi;
            le.e_max = e_hi;
            leqs.push_back(le);
        }
        qfano::LinkContext ctx;
        ctx.q = q;
        ctx.q_hat_allowed = q_hats;
        auto got = qfano::solve_main(leqs, ctx, to_rational(alpha));
        auto want = triple_loop(q, alpha, q_hats, 1, e_hi, eqs);
        std::vector<Sol> mine;
        for (auto& s : got) mine.push_back({s.q_hat, s.e, s.sm});
        std::sort(mine.begin(), mine.end());
        if (!want.empty()) ++hits;
        if (!(mine == want)) {
            std::ostringstream o;
            o << "instance " << it << " (q=" << q << " r=" << r << " equations=" << neq << "): solver "
              << mine.size() << " solutions, oracle " << want.size();
            return o.str();
        }
    }
    if (nonempty) *nonempty = hits;
    return "";
}

}  // namespace oracle
