#include "qfano/riemann_roch.hpp"

#include "qfano/error.hpp"

#include <map>
#include <mutex>

namespace qfano {

Rational correction_term(const BasketPoint& p, long i) {
    if (i < 0 || i >= p.r)
        throw Error(ErrorCode::InvalidInput, "local class " + std::to_string(i) + " out of range for index " +
                                                 std::to_string(p.r));
    Rational c = Rational::normalize(-i * (p.r * p.r - 1), 12 * p.r);
    long acc = 0;
    for (long j = 1; j < i; ++j) {
        long m = residue(p.b * j, p.r);
        acc += m * (p.r - m);
    }
    return c + Rational::normalize(acc, 2 * p.r);
}

namespace {

constexpr long kPrecomputedIndex = 64;

std::vector<Rational> build_row(const BasketPoint& p) {
    std::vector<Rational> row;
    for (long i = 0; i < p.r; ++i) row.push_back(correction_term(p, i));
    return row;
}

// rows[r][b] for r <= kPrecomputedIndex, built once and read without locking.
const std::vector<std::vector<std::vector<Rational>>>& small_tables() {
    static const auto rows = [] {
        std::vector<std::vector<std::vector<Rational>>> t(kPrecomputedIndex + 1);
        for (long r = 2; r <= kPrecomputedIndex; ++r) {
            t[r].resize(r);
            for (long b = 1; b < r; ++b)
                if (gcd_l(b, r) == 1) t[r][b] = build_row(BasketPoint(r, b));
        }
        return t;
    }();
    return rows;
}

}  // namespace

const std::vector<Rational>& correction_table(const BasketPoint& p) {
    if (p.r <= kPrecomputedIndex) return small_tables()[p.r][p.b];
    static std::mutex mu;
    static std::map<BasketPoint, std::vector<Rational>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    return cache.emplace(p, build_row(p)).first->second;
}

long local_class(const Geometry& g, std::size_t point, const DivisorClass& d) {
    long r = g.basket[point].r;
    long w = d.t * g.l[point];
    if (d.s != 0) {
        if (!g.torsion) throw Error(ErrorCode::InvalidInput, "torsion multiple without torsion data");
        w += d.s * g.torsion->k[point];
    }
    return residue(kCalibrationSign * w, r);
}

Rational a_cubed(long q, const Basket& basket, const LocalAssignment& l) {
    if (q < 3) throw Error(ErrorCode::UnsupportedIndex, "A^3 formula needs q >= 3");
    if (l.size() != basket.size()) throw Error(ErrorCode::InvalidInput, "local assignment length mismatch");
    Rational sum = 1 - kawamata_degree(basket) / Rational(12 * q);
    for (std::size_t i = 0; i < basket.size(); ++i) {
        long r = basket[i].r;
        sum += correction_table(basket[i])[residue(kCalibrationSign * -l[i], r)];
    }
    return Rational::normalize(12, (q - 1) * (q - 2)) * sum;
}

Geometry make_geometry(long q, const Basket& basket, const LocalAssignment& l,
                       std::optional<TorsionAssignment> torsion) {
    Geometry g;
    g.q = q;
    g.basket = basket;
    g.l = l;
    if (torsion) check_torsion(basket, *torsion);
    g.torsion = std::move(torsion);
    g.a_cubed = a_cubed(q, basket, l);
    g.a_dot_c2 = kawamata_degree(basket) / Rational(q);
    return g;
}

Geometry make_geometry(long q, const Basket& basket) {
    return make_geometry(q, basket, solve_l_classes(q, basket));
}

Rational euler_characteristic(const Geometry& g, const DivisorClass& d) {
    Rational chi = 1;
    chi += Rational(d.t * (d.t + g.q) * (2 * d.t + g.q)) * g.a_cubed / Rational(12);
    chi += Rational(d.t) * g.a_dot_c2 / Rational(12);
    for (std::size_t i = 0; i < g.basket.size(); ++i)
        chi += correction_table(g.basket[i])[local_class(g, i, d)];
    return chi;
}

long dim_linear_system(const Geometry& g, const DivisorClass& d) {
    if (d.t <= -g.q)
        throw Error(ErrorCode::VanishingNotApplicable,
                    "vanishing needs t > -q (t=" + std::to_string(d.t) + ", q=" + std::to_string(g.q) + ")");
    Rational chi = euler_characteristic(g, d);
    if (!chi.is_integer()) throw Error(ErrorCode::InvalidInput, "non-integral Euler characteristic " + chi.str());
    return chi.num().get_si() - 1;
}

// -K is numerically qA and has local class -1 (as a K-multiple) at every point.
long genus(const Geometry& g) {
    Rational chi = 1;
    chi += Rational(g.q * (2 * g.q) * (3 * g.q)) * g.a_cubed / Rational(12);
    chi += Rational(g.q) * g.a_dot_c2 / Rational(12);
    for (std::size_t i = 0; i < g.basket.size(); ++i)
        chi += correction_table(g.basket[i])[residue(-kCalibrationSign, g.basket[i].r)];
    if (!chi.is_integer()) throw Error(ErrorCode::InvalidInput, "non-integral chi(-K) " + chi.str());
    return chi.num().get_si() - 2;
}

long torsion_order(const Geometry& g, const std::vector<long>& k) {
    if (k.size() != g.basket.size()) throw Error(ErrorCode::InvalidInput, "torsion vector length mismatch");
    long cap = global_index(g.basket);
    for (long s = 1; s <= cap; ++s) {
        Rational chi = 1;
        for (std::size_t i = 0; i < g.basket.size(); ++i) {
            long r = g.basket[i].r;
            chi += correction_table(g.basket[i])[residue(kCalibrationSign * s * k[i], r)];
        }
        if (chi == 1) return s;
        if (chi != 0) break;
    }
    throw Error(ErrorCode::NoOrder, "no torsion order up to the global index");
}

std::vector<std::vector<long>> dims_table(const Geometry& g, long tmax) {
    long n = g.torsion ? g.torsion->n : 1;
    std::vector<std::vector<long>> out(n);
    for (long s = 0; s < n; ++s)
        for (long t = 1; t <= tmax; ++t) out[s].push_back(dim_linear_system(g, {t, s}));
    return out;
}

Rational genus_from_degree(const Rational& minus_k_cubed, const Basket& basket) {
    Rational g = 1 + minus_k_cubed / Rational(2);
    for (auto& p : basket.points()) g -= Rational::normalize(p.b * (p.r - p.b), 2 * p.r);
    return g;
}

}  // namespace qfano
