#include "qfano/basket.hpp"

#include "qfano/error.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace qfano {

long canonical_twist(long r, long b) {
    long m = residue(b, r);
    return std::min(m, r - m);
}

BasketPoint::BasketPoint(long r_, long b_) : r(r_) {
    if (r_ < 2) throw Error(ErrorCode::InvalidInput, "basket index must be at least 2");
    if (gcd_l(b_, r_) != 1)
        throw Error(ErrorCode::InvalidInput,
                    "twist " + std::to_string(b_) + " not coprime to " + std::to_string(r_));
    b = canonical_twist(r_, b_);
}

Basket::Basket(std::vector<BasketPoint> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
}

static long parse_long(std::string_view s, std::string_view what) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::InvalidInput, "bad " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

BasketText parse_basket_text(std::string_view text) {
    BasketText out;
    std::vector<long> twists;
    std::size_t with_twist = 0;
    std::size_t pos = 0;
    while (!text.empty() && text.find_first_not_of(" ") != std::string_view::npos) {
        auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto colon = item.find(':');
        long r = parse_long(item.substr(0, colon), "index");
        if (r < 2) throw Error(ErrorCode::InvalidInput, "basket index must be at least 2");
        out.indices.push_back(r);
        if (colon != std::string_view::npos) {
            twists.push_back(parse_long(item.substr(colon + 1), "twist"));
            ++with_twist;
        } else {
            twists.push_back(1);
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (with_twist != 0 && with_twist != out.indices.size())
        throw Error(ErrorCode::InvalidInput, "either all or no basket points must carry a twist");
    if (with_twist != 0) out.twists = twists;
    return out;
}

Basket Basket::parse(std::string_view text) {
    auto bt = parse_basket_text(text);
    std::vector<BasketPoint> pts;
    for (std::size_t i = 0; i < bt.indices.size(); ++i)
        pts.emplace_back(bt.indices[i], bt.twists ? (*bt.twists)[i] : 1);
    return Basket(std::move(pts));
}

std::vector<long> Basket::indices() const {
    std::vector<long> out;
    for (auto& p : points_) out.push_back(p.r);
    return out;
}

std::string Basket::str() const {
    std::string s;
    for (auto& p : points_) {
        if (!s.empty()) s += ',';
        s += std::to_string(p.r) + ":" + std::to_string(p.b);
    }
    return s;
}

std::string Basket::indices_str() const {
    std::string s;
    for (auto& p : points_) {
        if (!s.empty()) s += ',';
        s += std::to_string(p.r);
    }
    return s;
}

Rational kawamata_degree(const std::vector<long>& indices) {
    Rational sum = 24;
    for (long r : indices) sum -= Rational(r) - Rational::normalize(1, r);
    return sum;
}

Rational kawamata_degree(const Basket& basket) { return kawamata_degree(basket.indices()); }

long global_index(const Basket& basket) {
    long g = 1;
    for (auto& p : basket.points()) g = lcm_l(g, p.r);
    return g;
}

bool qW_equals_qQ(long q, const Basket& basket) {
    return gcd_l(q, global_index(basket)) == 1;
}

LocalAssignment solve_l_classes(long q, const Basket& basket) {
    LocalAssignment l;
    for (std::size_t i = 0; i < basket.size(); ++i) {
        long r = basket[i].r;
        if (gcd_l(q, r) != 1)
            throw Error(ErrorCode::NoSolution, "no local class at point " + std::to_string(i) +
                                                   " (index " + std::to_string(r) + "): gcd with q=" +
                                                   std::to_string(q) + " is not 1");
        l.push_back(residue(-inverse_mod(q, r), r));
    }
    return l;
}

long point_order(long r, long k) { return r / gcd_l(r, residue(k, r)); }

void check_torsion(const Basket& basket, const TorsionAssignment& t) {
    if (t.k.size() != basket.size())
        throw Error(ErrorCode::InconsistentTorsion, "torsion vector length differs from basket size");
    if (t.n < 1) throw Error(ErrorCode::InconsistentTorsion, "torsion order must be positive");
    for (std::size_t i = 0; i < basket.size(); ++i) {
        long r = basket[i].r;
        if (t.k[i] < 0 || t.k[i] >= r)
            throw Error(ErrorCode::InconsistentTorsion, "k out of range at point " + std::to_string(i));
        if (t.n % point_order(r, t.k[i]) != 0)
            throw Error(ErrorCode::InconsistentTorsion,
                        "local order at point " + std::to_string(i) + " does not divide n=" +
                            std::to_string(t.n));
    }
}

Basket cover_basket(const Basket& basket, const TorsionAssignment& t) {
    check_torsion(basket, t);
    std::vector<BasketPoint> pts;
    for (std::size_t i = 0; i < basket.size(); ++i) {
        long r = basket[i].r;
        long ord = point_order(r, t.k[i]);
        long rr = r / ord;
        if (rr == 1) continue;
        for (long c = 0; c < t.n / ord; ++c) pts.emplace_back(rr, basket[i].b % rr);
    }
    return Basket(std::move(pts));
}

std::set<Rational> allowed_discrepancies(long r, long m) {
    if (r < 2 || m < 1) throw Error(ErrorCode::InvalidInput, "allowed_discrepancies needs r >= 2, m >= 1");
    std::set<Rational> out;
    for (long a = 1; a <= m; ++a)
        if (m % a == 0) out.insert(Rational::normalize(a, r));
    return out;
}

std::optional<Rational> max_discrepancy(const Basket& basket, long index_divisor) {
    std::map<long, long> count;
    for (auto& p : basket.points()) ++count[p.r];
    std::optional<Rational> best;
    for (auto [r, m] : count) {
        if (r % index_divisor != 0) continue;
        auto top = *allowed_discrepancies(r, m).rbegin();
        if (!best || top > *best) best = top;
    }
    return best;
}

std::vector<long> admissible_twists(long r) {
    std::vector<long> out;
    for (long b = 1; 2 * b <= r; ++b)
        if (gcd_l(b, r) == 1) out.push_back(b);
    return out;
}

}  // namespace qfano
