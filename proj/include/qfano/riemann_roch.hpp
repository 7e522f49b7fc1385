#pragma once

#include "qfano/basket.hpp"
#include "qfano/rational.hpp"

#include <optional>
#include <vector>

namespace qfano {

// Orientation of the local class group identification, fixed by calibration
// against A^3 = 1/210 for q = 13, B = (2,3,3,5,7).
inline constexpr int kCalibrationSign = +1;

struct Geometry {
    long q = 0;
    Basket basket;
    LocalAssignment l;
    std::optional<TorsionAssignment> torsion;
    Rational a_cubed;
    Rational a_dot_c2;
};

struct DivisorClass {
    long t = 0;
    long s = 0;
};

Rational correction_term(const BasketPoint& point, long i);
// Cached table of correction_term(point, i) for i in [0, r).
const std::vector<Rational>& correction_table(const BasketPoint& point);

long local_class(const Geometry& g, std::size_t point, const DivisorClass& d);

Rational a_cubed(long q, const Basket& basket, const LocalAssignment& l);

// Builds a geometry from q, basket and l (torsion optional); A^3 from the formula.
Geometry make_geometry(long q, const Basket& basket, const LocalAssignment& l,
                       std::optional<TorsionAssignment> torsion = std::nullopt);
Geometry make_geometry(long q, const Basket& basket);

Rational euler_characteristic(const Geometry& g, const DivisorClass& d);
long dim_linear_system(const Geometry& g, const DivisorClass& d);
long genus(const Geometry& g);
long torsion_order(const Geometry& g, const std::vector<long>& k);

// dims[s][t-1] = dim |tA + sXi| for 1 <= t <= tmax.
std::vector<std::vector<long>> dims_table(const Geometry& g, long tmax);

// Closed form 1 + (-K)^3/2 - sum b(r-b)/2r for a basket with -K^3 given.
Rational genus_from_degree(const Rational& minus_k_cubed, const Basket& basket);

}  // namespace qfano
