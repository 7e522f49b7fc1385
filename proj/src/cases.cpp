#include "qfano/cases.hpp"

#include "qfano/error.hpp"
#include "qfano/profile.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

namespace fs = std::filesystem;

namespace qfano {

std::string corpus_dir() { return data_path("cases/v1"); }

namespace {

std::string trim(std::string s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && ws(s.front())) s.erase(0, 1);
    while (!s.empty() && ws(s.back())) s.pop_back();
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

struct Diag {
    std::string origin;
    int line = 0;
    std::string key;

    [[noreturn]] void fail(const std::string& msg) const {
        std::string where = origin + ":" + std::to_string(line);
        if (!key.empty()) where += ": field '" + key + "'";
        throw Error(ErrorCode::MalformedEquation, where + ": " + msg);
    }
};

long to_long(const std::string& s, const Diag& d) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) d.fail("not an integer: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        d.fail("not an integer: '" + s + "'");
    }
}

Rational to_rational(const std::string& s, const Diag& d) {
    try {
        return Rational::parse(s);
    } catch (const Error&) {
        d.fail("not a rational: '" + s + "'");
    }
}

struct Range {
    long lo = 0;
    std::optional<long> hi;
};

// "a", "a..b", "a.."
Range to_range(const std::string& s, const Diag& d) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long v = to_long(s, d);
        return {v, v};
    }
    Range r{to_long(trim(s.substr(0, dots)), d), std::nullopt};
    auto rest = trim(s.substr(dots + 2));
    if (!rest.empty()) r.hi = to_long(rest, d);
    return r;
}

// Ranges keep only Fano indices; a single value must be one.
std::set<long> to_index_set(const std::string& s, const Diag& d) {
    std::set<long> out;
    for (auto& item : split(s, ',')) {
        auto r = to_range(item, d);
        if (!r.hi) d.fail("open range in a finite set");
        if (r.lo == *r.hi && !fano_index_set().count(r.lo)) d.fail(std::to_string(r.lo) + " is not a Fano index");
        for (long v = r.lo; v <= *r.hi; ++v)
            if (fano_index_set().count(v)) out.insert(v);
    }
    return out;
}

std::vector<long> to_list(const std::string& s, const Diag& d) {
    std::vector<long> out;
    for (auto& item : split(s, ',')) out.push_back(to_long(item, d));
    return out;
}

EquationSpec parse_equation(const std::string& text, Diag d) {
    EquationSpec eq;
    eq.line_no = d.line;
    bool has_k = false;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        auto eqpos = tok.find('=');
        if (eqpos == std::string::npos) d.fail("expected name=value, got '" + tok + "'");
        std::string name = tok.substr(0, eqpos), val = tok.substr(eqpos + 1);
        Diag dd = d;
        dd.key = "equation." + name;
        if (name == "k") {
            eq.k = to_long(val, dd);
            has_k = true;
        } else if (name == "s") {
            auto r = to_range(val, dd);
            eq.s_min = r.lo;
            eq.s_max = r.hi;
        } else if (name == "m") {
            if (val != "auto") {
                auto r = to_range(val, dd);
                eq.m_min = r.lo;
                eq.m_max = r.hi;
            }
        } else if (name == "frac") {
            if (val != "auto") eq.frac = to_rational(val, dd);
        } else if (name == "relation") {
            if (val == "eq") eq.relation = Relation::Equal;
            else if (val == "ge") eq.relation = Relation::AtLeast;
            else dd.fail("relation must be 'eq' or 'ge'");
        } else if (name == "threshold") {
            eq.threshold = to_rational(val, dd);
        } else if (name == "s_profile") {
            eq.s_profile = to_long(val, dd);
        } else if (name == "dim") {
            eq.dim = to_long(val, dd);
        } else {
            dd.fail("unknown equation parameter");
        }
    }
    if (!has_k) d.fail("equation without k");
    if (eq.k < 1) d.fail("k must be positive");
    return eq;
}

Expectation parse_expect(const std::string& text, const Diag& d) {
    Expectation ex;
    std::istringstream ss(text);
    std::string word;
    ss >> word;
    std::string rest;
    std::getline(ss, rest);
    rest = trim(rest);
    auto strip_flag = [&](const std::string& flag) {
        if (rest.size() >= flag.size() && rest.compare(rest.size() - flag.size(), flag.size(), flag) == 0) {
            rest = trim(rest.substr(0, rest.size() - flag.size()));
            return true;
        }
        return false;
    };
    if (word == "none") {
        ex.kind = Expectation::Kind::None;
        if (!rest.empty()) d.fail("'none' takes no arguments");
    } else if (word == "bound") {
        ex.kind = Expectation::Kind::Bound;
        ex.contradiction = strip_flag("contradiction");
        if (!ex.contradiction && !strip_flag("consistent")) d.fail("bound needs 'contradiction' or 'consistent'");
        ex.bound = to_rational(rest, d);
    } else if (word == "unique" || word == "solutions") {
        ex.kind = word == "unique" ? Expectation::Kind::Unique : Expectation::Kind::Solutions;
        ex.eliminated = strip_flag("eliminated");
        auto eq = rest.find('=');
        if (eq == std::string::npos) d.fail("expected '<fields> = <values>'");
        ex.fields = split(rest.substr(0, eq), ',');
        for (auto& t : split(rest.substr(eq + 1), ';')) {
            auto vals = split(t, ',');
            if (vals.size() != ex.fields.size()) d.fail("tuple '" + t + "' does not match the field list");
            for (auto& v : vals) v = to_rational(v, d).str();
            ex.tuples.push_back(vals);
        }
        std::sort(ex.tuples.begin(), ex.tuples.end());
        if (ex.kind == Expectation::Kind::Unique && ex.tuples.size() != 1) d.fail("unique expects one tuple");
        if (ex.kind == Expectation::Kind::Solutions && ex.tuples.size() < 2) d.fail("solutions expects two or more tuples");
    } else {
        d.fail("expect must start with none, unique, solutions or bound");
    }
    return ex;
}

}  // namespace

const std::map<std::string, Axiom>& axiom_table() {
    static std::mutex m;
    static std::map<std::string, std::map<std::string, Axiom>> cache;
    std::string path = corpus_dir() + "/axioms.txt";
    std::lock_guard lk(m);
    auto it = cache.find(path);
    if (it != cache.end()) return it->second;
    std::map<std::string, Axiom> table;
    for (auto& line : read_data_file(path)) {
        if (line.tokens.size() < 3 || line.tokens[0] != "axiom")
            throw Error(ErrorCode::MissingData, path + ":" + std::to_string(line.line_no) + ": expected 'axiom TAG statement'");
        std::string statement;
        for (std::size_t i = 2; i < line.tokens.size(); ++i) statement += (i > 2 ? " " : "") + line.tokens[i];
        table[line.tokens[1]] = {line.tokens[1], statement};
    }
    return cache.emplace(path, std::move(table)).first->second;
}

CaseSpec parse_case(const std::string& text, const std::string& origin, bool require_expect) {
    CaseSpec spec;
    spec.origin = origin;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool have_q = false, have_kind = false, have_expect = false, have_alpha = false;
    std::optional<std::string> q_hat_text;
    int q_hat_line = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        raw = trim(raw);
        if (raw.empty()) continue;
        Diag d{origin, line_no, ""};
        auto eq = raw.find('=');
        if (eq == std::string::npos) d.fail("expected 'key = value'");
        std::string key = trim(raw.substr(0, eq)), val = trim(raw.substr(eq + 1));
        d.key = key;
        if (key != "equation" && seen.count(key)) d.fail("duplicate key (first on line " + std::to_string(seen[key]) + ")");
        seen[key] = line_no;
        if (val.empty() && key != "axioms") d.fail("empty value");
        if (key == "id") spec.id = val;
        else if (key == "claim") spec.claim = val;
        else if (key == "kind") {
            have_kind = true;
            if (val == "solve") spec.kind = CaseKind::Solve;
            else if (val == "alpha-cap") spec.kind = CaseKind::AlphaCap;
            else if (val == "discrepancy-bound") spec.kind = CaseKind::DiscrepancyBound;
            else d.fail("unknown kind '" + val + "'");
        } else if (key == "q") {
            spec.q = to_long(val, d);
            have_q = true;
        } else if (key == "basket") {
            spec.basket = to_list(val, d);
        } else if (key == "center") {
            spec.center = to_long(val, d);
            if (spec.center < 1) d.fail("centre index must be positive");
        } else if (key == "alpha") {
            have_alpha = true;
            if (val == "kawamata") spec.alpha_mode = AlphaMode::Kawamata;
            else if (val == "integers") spec.alpha_mode = AlphaMode::Integers;
            else {
                spec.alpha_mode = AlphaMode::Fixed;
                spec.alpha = to_rational(val, d);
                if (spec.alpha <= 0) d.fail("discrepancy must be positive");
            }
        } else if (key == "threshold") {
            spec.threshold = to_rational(val, d);
        } else if (key == "q_hat") {
            q_hat_text = val;
            q_hat_line = line_no;
        } else if (key == "q_hat_filter") {
            if (val != "nonrational") d.fail("only 'nonrational' is supported");
            spec.nonrational_only = true;
        } else if (key == "genus_at_least") {
            spec.genus_at_least = to_long(val, d);
        } else if (key == "e") {
            auto r = to_range(val, d);
            if (r.lo < 1) d.fail("e must be at least 1");
            spec.e_min = r.lo;
            spec.e_max = r.hi;
        } else if (key == "equation") {
            spec.equations.push_back(parse_equation(val, d));
        } else if (key == "k") {
            spec.k = to_long(val, d);
        } else if (key == "s") {
            auto r = to_range(val, d);
            if (!r.hi) d.fail("s needs an upper bound here");
            spec.s_min = r.lo;
            spec.s_max = *r.hi;
        } else if (key == "n") {
            spec.n_values = to_list(val, d);
        } else if (key == "cap") {
            spec.cap = to_rational(val, d);
        } else if (key == "axioms") {
            for (auto& t : split(val, ','))
                if (!t.empty()) spec.axioms.push_back(t);
        } else if (key == "eliminated_by") {
            spec.eliminated_by = val;
        } else if (key == "expect") {
            spec.expect = parse_expect(val, d);
            have_expect = true;
        } else {
            d.fail("unknown key");
        }
    }
    Diag d{origin, 0, ""};
    if (!have_q) d.fail("missing key 'q'");
    if (!have_kind) d.fail("missing key 'kind'");
    if (!have_expect && require_expect) d.fail("missing key 'expect'");
    spec.has_expect = have_expect;
    if (spec.id.empty()) d.fail("missing key 'id'");
    if (q_hat_text) spec.q_hat = to_index_set(*q_hat_text, Diag{origin, q_hat_line, "q_hat"});
    if (spec.kind == CaseKind::Solve) {
        if (spec.equations.empty()) d.fail("a solve case needs at least one equation");
        if (!q_hat_text) d.fail("missing key 'q_hat'");
        if (!have_alpha) d.fail("missing key 'alpha'");
        std::set<long> ks;
        for (auto& e : spec.equations)
            if (!ks.insert(e.k).second) Diag{origin, e.line_no, "equation.k"}.fail("duplicate k");
        if (spec.expect.kind == Expectation::Kind::Bound) d.fail("a solve case cannot expect a bound");
    } else {
        if (spec.k < 1) d.fail("missing or invalid key 'k'");
        if (spec.q_hat.size() != 1) d.fail("q_hat must be a single value here");
        if (have_expect && spec.expect.kind != Expectation::Kind::Bound) d.fail("this kind expects 'bound'");
        if (spec.kind == CaseKind::AlphaCap && (!spec.basket || !spec.threshold))
            d.fail("alpha-cap needs 'basket' and 'threshold'");
        if (spec.kind == CaseKind::DiscrepancyBound && spec.n_values.empty()) d.fail("missing key 'n'");
    }
    if (spec.expect.eliminated && spec.eliminated_by.empty()) d.fail("'eliminated' needs 'eliminated_by'");
    if (!spec.eliminated_by.empty() &&
        std::find(spec.axioms.begin(), spec.axioms.end(), spec.eliminated_by) == spec.axioms.end())
        d.fail("eliminated_by axiom must also be listed in 'axioms'");
    return spec;
}

CaseSpec load_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MissingData, "cannot open case file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_case(ss.str(), path);
}

std::string case_path(const std::string& id) { return corpus_dir() + "/" + id + ".case"; }

std::vector<std::string> list_cases(const std::string& pattern) {
    std::vector<std::string> out;
    fs::path root(corpus_dir());
    if (!fs::is_directory(root)) throw Error(ErrorCode::MissingData, "case corpus not found at " + root.string());
    for (auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".case") continue;
        std::string rel = fs::relative(entry.path(), root).replace_extension().generic_string();
        if (fnmatch(pattern.c_str(), rel.c_str(), 0) == 0 ||
            fnmatch(pattern.c_str(), (rel + ".case").c_str(), 0) == 0)
            out.push_back(rel);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational torsion_discrepancy_cap(long n) {
    std::optional<Rational> best;
    for (auto& line : read_data_file(data_path("tables/torsion-table.txt"))) {
        if (line.tokens[0] != "row") continue;
        auto kv = key_values(line, 1);
        if (std::stol(kv.at("n")) != n) continue;
        auto m = max_discrepancy(Basket::parse(kv.at("basket")), n);
        if (m && (!best || *m > *best)) best = m;
    }
    if (!best) throw Error(ErrorCode::NoBound, "no torsion row of order " + std::to_string(n));
    return *best;
}

std::string format_solution(const LinkSolution& sol, const std::vector<long>& ks) {
    std::string s = "q_hat=" + std::to_string(sol.q_hat) + " e=" + std::to_string(sol.e) + " alpha=" + sol.alpha.str();
    for (std::size_t i = 0; i < sol.sm.size() && i < ks.size(); ++i)
        s += " s" + std::to_string(ks[i]) + "=" + std::to_string(sol.sm[i].first) + " m" + std::to_string(ks[i]) +
             "=" + std::to_string(sol.sm[i].second);
    return s;
}

namespace {

std::string field_value(const std::string& f, const LinkSolution& sol, const std::vector<EquationSpec>& eqs,
                        const std::vector<LinkEquation>& built, const std::string& origin) {
    if (f == "q_hat") return std::to_string(sol.q_hat);
    if (f == "e") return std::to_string(sol.e);
    if (f == "alpha") return sol.alpha.str();
    for (const char* pre : {"s", "m", "beta"}) {
        std::string p(pre);
        if (f.rfind(p, 0) == 0 && f.size() > p.size() &&
            std::all_of(f.begin() + p.size(), f.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            long k = std::stol(f.substr(p.size()));
            for (std::size_t i = 0; i < eqs.size(); ++i) {
                if (eqs[i].k != k) continue;
                auto [s, m] = sol.sm[i];
                if (p == "s") return std::to_string(s);
                if (p == "m") return std::to_string(m);
                return (built[i].frac + Rational(m)).str();
            }
        }
    }
    throw Error(ErrorCode::MalformedEquation, origin + ": field 'expect': unknown projection field '" + f + "'");
}

std::string join_tuple(const std::vector<std::string>& fields, const std::vector<std::string>& vals) {
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? " " : "") + fields[i] + "=" + vals[i];
    return s;
}

std::string describe(const Expectation& ex, const std::string& elim) {
    switch (ex.kind) {
        case Expectation::Kind::None: return "NO SOLUTIONS";
        case Expectation::Kind::Bound:
            return "BOUND " + ex.bound->str() + (ex.contradiction ? " CONTRADICTION" : " CONSISTENT");
        default: break;
    }
    std::string s = ex.kind == Expectation::Kind::Unique ? "UNIQUE " : "SOLUTIONS ";
    for (std::size_t i = 0; i < ex.tuples.size(); ++i) s += (i ? "; " : "") + join_tuple(ex.fields, ex.tuples[i]);
    if (ex.eliminated) s += " ELIMINATED(" + elim + ")";
    return s;
}

void check_axioms(const CaseSpec& spec) {
    auto& table = axiom_table();
    for (auto& a : spec.axioms)
        if (!table.count(a)) throw Error(ErrorCode::UnknownAxiom, spec.origin + ": unknown axiom tag '" + a + "'");
}

CaseResult run_solve(const CaseSpec& spec) {
    CaseResult res;
    const Profile& prof = default_profile();
    LinkContext ctx;
    ctx.q = spec.q;
    ctx.center_index = spec.center;
    for (long qh : spec.q_hat) {
        if (spec.nonrational_only && !prof.is_nonrational(qh)) continue;
        if (spec.genus_at_least && !prof.genus_allows(qh, *spec.genus_at_least)) continue;
        ctx.q_hat_allowed.insert(qh);
    }
    {
        std::string s;
        for (long qh : ctx.q_hat_allowed) s += (s.empty() ? "" : ",") + std::to_string(qh);
        res.notes.push_back("q_hat in {" + s + "}");
    }

    auto threshold_of = [&](const EquationSpec& e) -> std::optional<Rational> {
        return e.threshold ? e.threshold : spec.threshold;
    };
    auto build = [&](const Rational& alpha) {
        std::vector<LinkEquation> eqs;
        for (auto& es : spec.equations) {
            LinkEquation le;
            le.k = es.k;
            le.relation = es.relation;
            auto t = threshold_of(es);
            if (es.frac) le.frac = *es.frac;
            else if (es.relation == Relation::AtLeast) {
                if (!t) throw Error(ErrorCode::MalformedEquation, spec.origin + ":" + std::to_string(es.line_no) +
                                                                      ": field 'equation.threshold': 'ge' needs a threshold");
                le.frac = *t * alpha;
            } else
                le.frac = m_fraction(spec.q, spec.center, es.k);
            le.s_min = es.s_min;
            le.s_max = es.s_max;
            if (es.m_min) le.m_min = *es.m_min;
            else if (t && es.relation == Relation::Equal) le.m_min = threshold_min_m(le.frac, *t, alpha);
            le.m_max = es.m_max;
            le.e_min = spec.e_min;
            le.e_max = spec.e_max;
            if (es.s_profile)
                for (long qh : ctx.q_hat_allowed) le.s_min_by_qhat[qh] = prof.s_min_for_dim(qh, *es.s_profile);
            eqs.push_back(std::move(le));
        }
        return eqs;
    };

    std::vector<Rational> alphas;
    switch (spec.alpha_mode) {
        case AlphaMode::Fixed: alphas.push_back(spec.alpha); break;
        case AlphaMode::Kawamata: alphas.push_back(Rational::normalize(1, spec.center)); break;
        case AlphaMode::Integers: {
            if (ctx.q_hat_allowed.empty()) break;
            long q_hat_max = *ctx.q_hat_allowed.rbegin();
            std::optional<long> cap;
            for (auto& es : spec.equations) {
                auto t = threshold_of(es);
                if (!t) continue;
                Rational per_alpha = Rational(spec.q) * *t - Rational(es.k);
                if (per_alpha <= 0) continue;
                Rational c = (Rational(es.k * q_hat_max) - Rational(spec.q * es.s_min)) / (per_alpha * Rational(spec.e_min));
                long v = c.floor().get_si();
                cap = cap ? std::min(*cap, v) : v;
            }
            if (!cap) throw Error(ErrorCode::NoBound, spec.origin + ": cannot bound an integral discrepancy");
            res.notes.push_back("alpha <= " + std::to_string(*cap));
            for (long a = 1; a <= *cap; ++a) alphas.push_back(a);
            break;
        }
    }

    std::vector<LinkEquation> last_built;
    for (auto& alpha : alphas) {
        auto eqs = build(alpha);
        SolveCaps caps;
        auto sols = solve_main(eqs, ctx, alpha, &caps);
        std::string cap_note = "alpha=" + alpha.str() + ": e<=" + std::to_string(caps.e_max);
        for (std::size_t i = 0; i < eqs.size(); ++i)
            if (eqs[i].relation == Relation::Equal)
                cap_note += " m" + std::to_string(eqs[i].k) + " in [" + std::to_string(eqs[i].m_min) + "," +
                            std::to_string(caps.m_cap[i]) + "]";
        res.notes.push_back(cap_note);
        res.solutions.insert(res.solutions.end(), sols.begin(), sols.end());
        last_built = std::move(eqs);
    }
    if (last_built.empty()) last_built = alphas.empty() ? std::vector<LinkEquation>{} : build(alphas.front());

    // solutions ruled out by the profile bound on dim |s A| of the target
    auto eliminated = [&](const LinkSolution& sol) {
        for (std::size_t i = 0; i < spec.equations.size(); ++i) {
            auto& es = spec.equations[i];
            if (!es.dim) continue;
            long s = sol.sm[i].first;
            if (s < 1) continue;
            auto u = prof.dim_upper_bound(sol.q_hat, s);
            if (u && *u < *es.dim) return true;
        }
        return false;
    };

    std::vector<std::string> fields = spec.expect.fields;
    if (fields.empty()) {
        fields = {"q_hat", "e"};
        for (auto& es : spec.equations) fields.push_back("s" + std::to_string(es.k));
    }
    std::vector<std::vector<std::string>> tuples;
    bool all_eliminated = !res.solutions.empty();
    for (auto& sol : res.solutions) {
        // rebuild per-alpha fractions for beta projections
        auto eqs = spec.alpha_mode == AlphaMode::Integers ? build(sol.alpha) : last_built;
        std::vector<std::string> t;
        for (auto& f : fields) t.push_back(field_value(f, sol, spec.equations, eqs, spec.origin));
        tuples.push_back(t);
        if (!eliminated(sol)) all_eliminated = false;
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    for (auto& t : tuples) res.tuples.push_back(join_tuple(fields, t));
    bool elim_checked = std::any_of(spec.equations.begin(), spec.equations.end(), [](auto& e) { return e.dim.has_value(); });

    Expectation actual;
    actual.fields = fields;
    actual.tuples = tuples;
    actual.kind = tuples.empty() ? Expectation::Kind::None
                  : tuples.size() == 1 ? Expectation::Kind::Unique
                                       : Expectation::Kind::Solutions;
    actual.eliminated = elim_checked && all_eliminated;
    res.actual = describe(actual, spec.eliminated_by);
    res.pass = actual.kind == spec.expect.kind && actual.tuples == spec.expect.tuples &&
               actual.eliminated == spec.expect.eliminated;
    return res;
}

CaseResult run_bound(const CaseSpec& spec) {
    CaseResult res;
    long q_hat = *spec.q_hat.begin();
    long e = spec.e_max ? *spec.e_max : spec.e_min;
    if (spec.e_max && *spec.e_max != spec.e_min)
        throw Error(ErrorCode::MalformedEquation, spec.origin + ": field 'e': a single value is required");
    Rational bound;
    bool contradiction = true;
    if (spec.kind == CaseKind::AlphaCap) {
        Rational denom = (Rational(spec.q) * *spec.threshold - Rational(spec.k)) * Rational(e);
        if (denom <= 0) throw Error(ErrorCode::NoBound, spec.origin + ": non-positive coefficient, no cap on alpha");
        bound = (Rational(spec.k * q_hat) - Rational(spec.q * spec.s_min)) / denom;
        long r_max = 1;
        for (long r : *spec.basket) r_max = std::max(r_max, r);
        Rational alpha_min = Rational::normalize(1, r_max);
        res.notes.push_back("alpha >= " + alpha_min.str() + " over the basket");
        contradiction = alpha_min > bound;
    } else {
        std::optional<Rational> overall;
        for (long n : spec.n_values) {
            std::optional<Rational> best;
            for (long s = spec.s_min; s <= spec.s_max; ++s) {
                auto b = discrepancy_lower_bound(spec.q, q_hat, n, e, spec.k, s);
                if (!best || b < *best) best = b;
            }
            if (!best) throw Error(ErrorCode::MalformedEquation, spec.origin + ": field 's': empty range");
            Rational cap = spec.cap ? *spec.cap : torsion_discrepancy_cap(n);
            res.notes.push_back("n=" + std::to_string(n) + ": b >= " + best->str() + ", cap " + cap.str() +
                                (gcd_obstruction(spec.q, n) ? ", image point index divisible by n"
                                                            : ", gcd(n, q) > 1"));
            if (!(*best > cap)) contradiction = false;
            if (!overall || *best < *overall) overall = best;
        }
        bound = *overall;
    }
    Expectation actual;
    actual.kind = Expectation::Kind::Bound;
    actual.bound = bound;
    actual.contradiction = contradiction;
    res.actual = describe(actual, "");
    res.pass = spec.expect.bound == bound && spec.expect.contradiction == contradiction;
    return res;
}

}  // namespace

CaseResult run_case(const CaseSpec& spec) {
    check_axioms(spec);
    CaseResult res = spec.kind == CaseKind::Solve ? run_solve(spec) : run_bound(spec);
    res.id = spec.id;
    if (spec.has_expect) res.expected = describe(spec.expect, spec.eliminated_by);
    else res.pass = true;
    res.axioms = spec.axioms;
    return res;
}

}  // namespace qfano
