#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "printers.hpp"

#include "qfano/riemann_roch.hpp"
#include "qfano/search.hpp"
#include "qfano/serialize.hpp"

#include "properties.hpp"

using namespace qfano;

TEST_CASE("chi is integral on every emitted candidate") {
    for (auto& rec : props::all_emitted()) {
        CAPTURE(rec.basket.str());
        CHECK(props::chi_integral(rec) == "");
    }
}

TEST_CASE("Serre duality on every emitted candidate") {
    for (auto& rec : props::all_emitted()) {
        CAPTURE(rec.basket.str());
        CHECK(props::serre_symmetric(rec) == "");
    }
}

TEST_CASE("vanishing for -q < t < 0") {
    for (auto& rec : props::all_emitted()) {
        CAPTURE(rec.basket.str());
        CHECK(props::vanishing(rec) == "");
    }
}

TEST_CASE("cover degree is n times the degree") {
    for (auto& rec : props::all_emitted())
        if (rec.torsion) {
            CHECK(rec.torsion->cover_a3 == rec.a3 * Rational(rec.torsion->n));
            CHECK(rec.torsion->cover.has_value());
        }
}

TEST_CASE("determinism across reruns and worker counts") {
    CHECK(props::determinism() == "");
}

TEST_CASE("rational canonical form round trips") {
    CHECK(props::rational_round_trip(20000) == "");
}
