#pragma once

#include "qfano/rational.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qfano {

// Terminal cyclic quotient point 1/r(1, -1, b); b and r - b are the same type.
struct BasketPoint {
    long r = 2;
    long b = 1;

    BasketPoint() = default;
    BasketPoint(long r_, long b_);

    friend auto operator<=>(const BasketPoint&, const BasketPoint&) = default;
};

class Basket {
public:
    Basket() = default;
    explicit Basket(std::vector<BasketPoint> points);

    // "2,3,3,5,7" or "5:2,7:3"; missing twists default to 1.
    static Basket parse(std::string_view text);

    const std::vector<BasketPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const BasketPoint& operator[](std::size_t i) const { return points_[i]; }

    std::vector<long> indices() const;

    std::string str() const;          // always with twists
    std::string indices_str() const;  // indices only

    friend auto operator<=>(const Basket&, const Basket&) = default;
    friend bool operator==(const Basket&, const Basket&) = default;

private:
    std::vector<BasketPoint> points_;
};

// Parses the index-only part of a basket text ("2,3,5" or "2:1,3:1"); returns
// explicit twists when every point carries one.
struct BasketText {
    std::vector<long> indices;
    std::optional<std::vector<long>> twists;
};
BasketText parse_basket_text(std::string_view text);

using LocalAssignment = std::vector<long>;

struct TorsionAssignment {
    std::vector<long> k;
    long n = 1;
};

Rational kawamata_degree(const Basket& basket);
Rational kawamata_degree(const std::vector<long>& indices);
long global_index(const Basket& basket);
bool qW_equals_qQ(long q, const Basket& basket);
LocalAssignment solve_l_classes(long q, const Basket& basket);

long point_order(long r, long k);
void check_torsion(const Basket& basket, const TorsionAssignment& t);
Basket cover_basket(const Basket& basket, const TorsionAssignment& t);

std::set<Rational> allowed_discrepancies(long r, long m);
std::optional<Rational> max_discrepancy(const Basket& basket, long index_divisor);

std::vector<long> admissible_twists(long r);
long canonical_twist(long r, long b);

}  // namespace qfano
