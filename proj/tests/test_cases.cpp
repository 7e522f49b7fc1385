#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfano/cases.hpp"
#include "qfano/error.hpp"

#include <algorithm>

using namespace qfano;

static CaseResult run(const std::string& id) { return run_case(load_case(case_path(id))); }

TEST_CASE("index 7, index 2 centre has no solutions") {
    auto r = run("index7/r2");
    CHECK(r.pass);
    CHECK(r.tuples.empty());
    CHECK(r.actual.find("NO SOLUTIONS") != std::string::npos);
}

TEST_CASE("index 8, basket (3,5,11), index 3 centre has one solution") {
    auto r = run("index8/B3511-r3");
    CHECK(r.pass);
    CHECK(r.tuples == std::vector<std::string>{"q_hat=7 e=1 s4=1"});
}

TEST_CASE("index 9, q_hat = 6 branch is eliminated by a profile axiom") {
    auto r = run("index9/r7-qhat6");
    CHECK(r.pass);
    CHECK(r.tuples == std::vector<std::string>{"q_hat=6 e=3 s5=1"});
    CHECK(std::find(r.axioms.begin(), r.axioms.end(), "Prop-rat-dims") != r.axioms.end());
}

TEST_CASE("bound derivations") {
    CHECK(run("index9/r5-bound").pass);
    CHECK(run("index13/r5-bound").pass);
}

TEST_CASE("the whole corpus passes") {
    auto ids = list_cases("*");
    CHECK(ids.size() >= 25);
    for (auto& id : ids) {
        CAPTURE(id);
        auto r = run(id);
        CHECK_MESSAGE(r.pass, r.expected << " vs " << r.actual);
    }
}

TEST_CASE("list_cases filters with a glob") {
    auto ids = list_cases("index7/*");
    CHECK(ids.size() == 7);
    for (auto& id : ids) CHECK(id.rfind("index7/", 0) == 0);
    CHECK(list_cases("nope/*").empty());
}

TEST_CASE("every axiom is known") {
    for (auto& id : list_cases("*"))
        for (auto& a : load_case(case_path(id)).axioms) CHECK(axiom_table().count(a) == 1);
}

static const char* kGood = R"(id = t
kind = solve
q = 9
center = 5
alpha = kawamata
q_hat = 1..9
equation = k=5 s=1.. m=2..
expect = unique q_hat,e = 7,1
)";

TEST_CASE("parse_case accepts a minimal spec") {
    auto spec = parse_case(kGood, "good");
    CHECK(spec.q == 9);
    CHECK(spec.equations.size() == 1);
    CHECK(run_case(spec).pass);
}

static void expect_diag(std::string text, ErrorCode code, const std::string& needle) {
    try {
        parse_case(text, "spec.case");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == code);
        CAPTURE(e.what());
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

TEST_CASE("parser diagnostics name the line and field") {
    std::string s = kGood;
    expect_diag(s + "bogus = 1\n", ErrorCode::MalformedEquation, "bogus");
    std::string t = s;
    t.replace(t.find("k=5"), 3, "k=x");
    expect_diag(t, ErrorCode::MalformedEquation, "spec.case:7");
    std::string u = s;
    u.replace(u.find("1..9"), 4, "1..12");
    CHECK_NOTHROW(parse_case(u, "spec.case"));
    std::string v = s;
    v.replace(v.find("q_hat = 1..9"), 12, "q_hat = 12");
    expect_diag(v, ErrorCode::MalformedEquation, "not a Fano index");
    std::string w = s;
    w.erase(w.find("expect"));
    expect_diag(w, ErrorCode::MalformedEquation, "expect");
    CHECK_NOTHROW(parse_case(w, "spec.case", false));
    try {
        run_case(parse_case(s + "axioms = No-such\n", "spec.case"));
        FAIL("expected an unknown axiom");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownAxiom);
        CHECK(std::string(e.what()).find("No-such") != std::string::npos);
    }
}

TEST_CASE("missing corpus file") {
    try {
        load_case("/nonexistent/x.case");
        FAIL("expected missing data");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingData);
    }
}
