#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "printers.hpp"

#include "qfano/basket.hpp"
#include "qfano/error.hpp"

using namespace qfano;

static Rational R(long a, long b = 1) { return Rational::normalize(a, b); }

TEST_CASE("kawamata_degree") {
    CHECK(kawamata_degree(Basket{}) == R(24));
    CHECK(kawamata_degree(Basket::parse("2,3,3,5,7")) == R(1157, 210));
    CHECK(kawamata_degree(Basket::parse("2,2,2,5,7")) == R(549, 70));
    CHECK(kawamata_degree(std::vector<long>{2, 2, 2, 5, 7}) == R(549, 70));
}

TEST_CASE("global_index") {
    CHECK(global_index(Basket::parse("2,3,3,5,7")) == 210);
    CHECK(global_index(Basket::parse("2,2,2,5,7")) == 70);
    CHECK(global_index(Basket{}) == 1);
}

TEST_CASE("qW_equals_qQ") {
    CHECK(qW_equals_qQ(13, Basket::parse("2,3,3,5,7")));
    CHECK_FALSE(qW_equals_qQ(8, Basket::parse("2,7")));
    CHECK(qW_equals_qQ(5, Basket{}));
}

TEST_CASE("solve_l_classes") {
    CHECK(solve_l_classes(7, Basket::parse("5:2")) == LocalAssignment{2});
    CHECK(solve_l_classes(13, Basket::parse("7:1")) == LocalAssignment{1});
    CHECK(solve_l_classes(9, Basket::parse("2")) == LocalAssignment{1});
    for (long q = 3; q <= 19; ++q)
        for (long r = 2; r <= 24; ++r) {
            if (gcd_l(q, r) != 1) continue;
            long l = solve_l_classes(q, Basket({BasketPoint(r, 1)}))[0];
            CHECK(residue(1 + q * l, r) == 0);
        }
    try {
        solve_l_classes(8, Basket::parse("3,2"));
        FAIL("expected no-solution");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSolution);
        CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
}

TEST_CASE("basket parsing") {
    Basket b = Basket::parse("5:2,7:3");
    REQUIRE(b.size() == 2);
    CHECK(b[0].r == 5);
    CHECK(b[0].b == 2);
    CHECK(b[1].b == 3);
    CHECK(Basket::parse("2,3").str() == "2:1,3:1");
    CHECK(Basket::parse("2,3").indices_str() == "2,3");
    for (const char* bad : {"1", "x", "4:2", "2,,3", "5:0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Basket::parse(bad), Error);
    }
}

TEST_CASE("cover_basket") {
    Basket b = Basket::parse("2,6,10");
    CHECK(cover_basket(b, {{0, 3, 5}, 2}).indices_str() == "2,2,3,5");
    CHECK(cover_basket(Basket::parse("2,2,3,4,8"), {{1, 1, 0, 2, 4}, 2}).indices_str() == "2,3,3,4");
    Basket c = Basket::parse("2:1,3:1,3:1,5:2,7:1");
    CHECK(cover_basket(c, {{0, 0, 0, 0, 0}, 1}) == c);
    CHECK_THROWS_AS(cover_basket(b, {{1, 3, 5}, 3}), Error);
}

TEST_CASE("point_order") {
    CHECK(point_order(6, 3) == 2);
    CHECK(point_order(10, 5) == 2);
    CHECK(point_order(9, 3) == 3);
    CHECK(point_order(7, 0) == 1);
}

TEST_CASE("allowed_discrepancies") {
    CHECK(allowed_discrepancies(2, 1) == std::set<Rational>{R(1, 2)});
    CHECK(allowed_discrepancies(9, 2) == std::set<Rational>{R(1, 9), R(2, 9)});
    CHECK(allowed_discrepancies(5, 1) == std::set<Rational>{R(1, 5)});
}

TEST_CASE("max_discrepancy") {
    CHECK(max_discrepancy(Basket::parse("2,9,9"), 3) == R(2, 9));
    CHECK(max_discrepancy(Basket::parse("2,2,4,8"), 2) == R(1));
    CHECK_FALSE(max_discrepancy(Basket::parse("5,7"), 3).has_value());
}

TEST_CASE("admissible twists") {
    CHECK(admissible_twists(2) == std::vector<long>{1});
    CHECK(admissible_twists(7) == std::vector<long>{1, 2, 3});
    CHECK(admissible_twists(12) == std::vector<long>{1, 5});
    CHECK(canonical_twist(7, 5) == 2);
}
