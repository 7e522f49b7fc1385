// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]...

#include "oracle/compare.hpp"
#include "properties.hpp"

#include "qfano/cases.hpp"
#include "qfano/profile.hpp"
#include "qfano/riemann_roch.hpp"
#include "qfano/search.hpp"
#include "qfano/tables.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qfano;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        pass = false;
        notes.push_back(why);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<long>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

struct Candidate {
    long q;
    std::vector<long> basket;
    std::string a3;
    long genus;
    std::vector<long> dims;  // |kA| from k = 1
};

const std::vector<Candidate>& candidates() {
    static const std::vector<Candidate> c{
        {13, {2, 3, 3, 5, 7}, "1/210", 4, {-1, -1, 0, 0, 0, 1, 1, 1}},
        {11, {2, 5, 7}, "1/70", 9, {0, 0, 0, 1, 2, 3}},
        {11, {2, 2, 3, 4, 7}, "1/84", 7, {-1, 0, 0, 1, 1, 2}},
        {9, {2, 2, 2, 5, 7}, "1/70", 4, {-1, 0, 0, 1, 1}},
        {8, {7, 13}, "4/91", 11, {0, 0, 1, 2, 3}},
        {8, {5, 7}, "1/35", 8, {0, 0, 1, 2, 3}},
        {8, {3, 5, 11}, "4/165", 6, {-1, 0, 0, 1, 2}},
        {7, {2, 2, 3, 5}, "1/15", 11, {0, 1, 2}},
        {7, {2, 2, 3, 12}, "1/12", 13, {0, 1, 2}},
    };
    return c;
}

std::string label(const Candidate& c) { return "q=" + std::to_string(c.q) + " (" + join(c.basket) + ")"; }

// every admissible twist tuple of the basket, torsion-free filter
std::vector<CandidateRecord> twisted_records(const Candidate& c) {
    std::vector<CandidateRecord> out;
    std::vector<std::vector<long>> choices;
    for (long r : c.basket) choices.push_back(admissible_twists(r));
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        std::vector<BasketPoint> pts;
        for (std::size_t i = 0; i < idx.size(); ++i) pts.emplace_back(c.basket[i], choices[i][idx[i]]);
        auto f = filter_twisted(c.q, Basket(pts));
        if (f.record) out.push_back(*f.record);
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
            if (++idx[j] < choices[j].size()) break;
            idx[j] = 0;
        }
        if (j == idx.size()) break;
    }
    return out;
}

Outcome criterion1() {
    Outcome o;
    for (auto& c : candidates()) {
        bool hit = false;
        for (auto& rec : twisted_records(c)) hit = hit || rec.a3.str() == c.a3;
        if (!hit) o.fail(label(c) + ": no admissible twist gives A^3 = " + c.a3);
    }
    if (o.pass) o.note("9/9 degrees match");
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t ok = 0;
    for (auto& c : candidates()) {
        bool hit = false;
        std::string seen;
        for (auto& rec : twisted_records(c)) {
            if (rec.a3.str() != c.a3) continue;
            Geometry g = make_geometry(rec.q, rec.basket, rec.l);
            auto dims = dims_table(g, static_cast<long>(c.dims.size()))[0];
            long gen = genus(g);
            if (gen == c.genus && dims == c.dims) hit = true;
            seen = "genus " + std::to_string(gen) + " dims " + join(dims);
        }
        if (hit) ++ok;
        else
            o.fail(label(c) + ": expected genus " + std::to_string(c.genus) + " dims " + join(c.dims) + ", got " +
                   seen);
    }
    o.note(std::to_string(ok) + "/9 candidates match");
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::size_t rows = 0;
    for (long q : {5, 6, 7, 8, 9, 10, 11, 13, 17, 19}) {
        auto t0 = std::chrono::steady_clock::now();
        SearchConfig c;
        c.q = q;
        c.mode = SearchMode::Torsion;
        c.external_bounds = default_profile().external_bounds;
        auto recs = run_search(c);
        double dt = seconds_since(t0);
        rows += recs.size();
        for (auto& r : recs)
            if (!r.torsion || r.torsion->cover_a3 != r.a3 * Rational(r.torsion->n))
                o.fail("q=" + std::to_string(q) + " " + r.basket.str() + ": cover degree is not n*A^3");
        if (q == 7 && dt >= 60) o.fail("q=7 took " + std::to_string(dt) + " s");
        if (q == 5 && dt >= 600) o.fail("q=5 took " + std::to_string(dt) + " s");
    }
    if (rows != 9) o.fail("torsion search returned " + std::to_string(rows) + " rows, expected 9");
    for (std::string id : {"torsion-table", "torsion-dims"}) {
        auto rep = verify_table(id);
        std::size_t entries = 0;
        if (id == "torsion-dims") entries = rep.rows.size() * 7;
        if (!rep.pass()) {
            for (auto& r : rep.rows)
                for (auto& d : r.diffs) o.fail(id + " " + r.label + ": " + d);
            for (auto& u : rep.unexpected) o.fail(id + ": unexpected " + u);
        }
        if (id == "torsion-table" && rep.rows.size() != 9) o.fail("torsion-table has " + std::to_string(rep.rows.size()) + " rows");
        if (id == "torsion-dims" && entries != 28) o.fail("torsion-dims has " + std::to_string(entries) + " entries");
    }
    o.note(std::to_string(rows) + " torsion rows");
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto none = search_q_drop({5, 6, 7, 8, 9, 10, 11, 13, 17, 19});
    for (auto& r : none) o.fail("q=" + std::to_string(r.q) + " admits n=" + std::to_string(r.n));
    auto four = search_q_drop({4});
    if (four.size() != 1 || four[0].n != 2) {
        std::string got;
        for (auto& r : four) got += " n=" + std::to_string(r.n);
        o.fail("q=4 gave" + (got.empty() ? std::string(" nothing") : got));
    } else {
        o.note("q=4: n=2 only (" + std::to_string(four[0].count) + " witnesses)");
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto ids = list_cases("*");
    std::size_t ok = 0;
    for (auto& id : ids) {
        try {
            auto r = run_case(load_case(case_path(id)));
            if (r.pass) ++ok;
            else o.fail(id + ": expected " + r.expected + ", got " + r.actual);
        } catch (const std::exception& e) {
            o.fail(id + ": " + e.what());
        }
    }
    double dt = seconds_since(t0);
    if (ids.size() < 25) o.fail("only " + std::to_string(ids.size()) + " cases");
    if (dt >= 5) o.fail("corpus took " + std::to_string(dt) + " s");
    o.note(std::to_string(ok) + "/" + std::to_string(ids.size()) + " cases");
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (long q = 5; q <= 8; ++q) {
        std::size_t n = 0;
        auto diff = oracle::search_agrees(q, 4, &n);
        if (!diff.empty()) o.fail(diff);
        else o.note("q=" + std::to_string(q) + ": " + std::to_string(n) + " candidates");
    }
    std::size_t hits = 0;
    auto diff = oracle::solver_agrees(20240611, 100, &hits);
    if (!diff.empty()) o.fail(diff);
    else o.note("100 solver instances (" + std::to_string(hits) + " with solutions)");
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto& recs = props::all_emitted();
    for (auto& r : recs) {
        for (auto check : {props::chi_integral, props::vanishing, props::serre_symmetric}) {
            auto d = check(r);
            if (!d.empty()) o.fail(d);
        }
    }
    auto d = props::determinism();
    if (!d.empty()) o.fail(d);
    d = props::rational_round_trip(20000);
    if (!d.empty()) o.fail(d);
    o.note(std::to_string(recs.size()) + " candidates");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> which;
    app.add_option("--criterion", which, "criterion number")->check(CLI::Range(1, 7));
    CLI11_PARSE(app, argc, argv);
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};

    const std::map<int, std::pair<std::function<Outcome()>, double>> table{
        {1, {criterion1, 1}}, {2, {criterion2, 1}},  {3, {criterion3, 0}},   {4, {criterion4, 0}},
        {5, {criterion5, 5}}, {6, {criterion6, 120}}, {7, {criterion7, 60}},
    };
    bool all = true;
    for (int n : which) {
        auto& [fn, budget] = table.at(n);
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("error: ") + e.what());
        }
        double dt = seconds_since(t0);
        if (budget > 0 && dt >= budget) o.fail("over the " + std::to_string(static_cast<int>(budget)) + " s budget");
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << dt << " s)";
        for (auto& s : o.notes) line << "\n  " << s;
        std::cout << line.str() << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
