#include "qfano.h"

#include "qfano/cases.hpp"
#include "qfano/error.hpp"
#include "qfano/profile.hpp"
#include "qfano/riemann_roch.hpp"
#include "qfano/search.hpp"
#include "qfano/serialize.hpp"
#include "qfano/tables.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <sstream>
#include <tuple>

using namespace qfano;

struct qf_config {
    SearchConfig cfg;
    bool have_q = false;
    bool long_running = false;
    bool profile = true;
};

struct qf_records {
    std::vector<CandidateRecord> recs;
};

struct qf_candidate {
    CandidateRecord rec;
    Geometry geom;
    long n = 1;
};

struct qf_report {
    struct Item {
        std::string label;
        bool pass = false;
        std::string detail;
    };
    std::string kind;
    std::string id;
    std::vector<Item> items;
};

struct qf_link {
    std::string outcome;
    std::vector<std::string> solutions;
    std::vector<std::string> details;
    std::vector<std::string> notes;
    bool has_expect = false;
    bool pass = true;
    std::string expected;
};

namespace {

thread_local std::string g_last_error;

int code_of(ErrorCode c) { return -1 - static_cast<int>(c); }

int fail(int status, const std::string& msg) {
    g_last_error = msg;
    return status;
}

template <class F>
int guard(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const Error& e) {
        return fail(code_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(QF_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(QF_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

long to_long(const char* key, const char* v) {
    try {
        std::size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos == std::strlen(v)) return x;
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::InvalidInput, std::string(key) + ": not an integer: '" + v + "'");
}

std::vector<long> to_longs(const char* key, const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_long(key, item.c_str()));
    return out;
}

bool to_bool(const char* key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw Error(ErrorCode::InvalidInput, std::string(key) + ": expected true or false");
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

}  // namespace

#define NEED(p)                                                             \
    do {                                                                    \
        if (!(p)) return fail(QF_ERR_NULL_ARGUMENT, "null argument: " #p); \
    } while (0)

extern "C" {

const char* qf_version(void) { return "1.0.0"; }

const char* qf_status_name(int status) {
    switch (status) {
        case QF_OK: return "ok";
        case QF_ERR_REJECTED: return "rejected";
        case QF_ERR_NULL_ARGUMENT: return "null-argument";
        case QF_ERR_UNKNOWN_KEY: return "unknown-key";
        case QF_ERR_OUT_OF_RANGE: return "out-of-range";
        case QF_ERR_INTERNAL: return "internal";
        default: break;
    }
    if (status <= QF_ERR_INVALID_INPUT && status >= QF_ERR_MISSING_DATA)
        return error_code_name(static_cast<ErrorCode>(-1 - status));
    return "unknown";
}

const char* qf_last_error(void) { return g_last_error.c_str(); }

void qf_free_string(char* s) { std::free(s); }

int qf_set_data_dir(const char* dir) {
    NEED(dir);
    return guard([&]() -> int {
        set_data_dir(dir);
        return QF_OK;
    });
}

int qf_sha256_hex(const char* data, size_t len, char out[65]) {
    NEED(out);
    if (!data && len) return fail(QF_ERR_NULL_ARGUMENT, "null argument: data");
    return guard([&]() -> int {
        auto h = sha256_hex(std::string_view(data ? data : "", len));
        std::memcpy(out, h.c_str(), 65);
        return QF_OK;
    });
}

int qf_config_new(qf_config** out) {
    NEED(out);
    return guard([&]() -> int {
        *out = new qf_config;
        return QF_OK;
    });
}

void qf_config_free(qf_config* cfg) { delete cfg; }

int qf_config_set(qf_config* c, const char* key, const char* value) {
    NEED(c);
    NEED(key);
    NEED(value);
    return guard([&]() -> int {
        std::string k(key);
        std::replace(k.begin(), k.end(), '-', '_');
        auto& cfg = c->cfg;
        if (k == "q") {
            cfg.q = to_long(key, value);
            if (cfg.q < 1) throw Error(ErrorCode::InvalidInput, "q must be positive");
            c->have_q = true;
        } else if (k == "mode") cfg.mode = parse_mode(value);
        else if (k == "max_index") {
            cfg.max_index = to_long(key, value);
            if (*cfg.max_index < 2) throw Error(ErrorCode::InvalidInput, "max_index must be at least 2");
        } else if (k == "genus_min") cfg.genus_min = to_long(key, value);
        else if (k == "genus_max") cfg.genus_max = to_long(key, value);
        else if (k == "genus_threshold") cfg.genus_threshold = to_long(key, value);
        else if (k == "dims_filter") {
            auto cs = parse_constraints(value);
            cfg.constraints.insert(cfg.constraints.end(), cs.begin(), cs.end());
        } else if (k == "workers") {
            long w = to_long(key, value);
            if (w < 1 || w > 1024) throw Error(ErrorCode::InvalidInput, "workers must be in 1..1024");
            cfg.workers = static_cast<unsigned>(w);
        } else if (k == "long_running") c->long_running = to_bool(key, value);
        else if (k == "profile") {
            std::string v(value);
            if (v == "nonrational") c->profile = true;
            else if (v == "none") c->profile = false;
            else throw Error(ErrorCode::InvalidInput, "profile must be 'nonrational' or 'none'");
        } else
            return fail(QF_ERR_UNKNOWN_KEY, "unknown configuration key '" + std::string(key) + "'");
        return QF_OK;
    });
}

int qf_enumerate(const qf_config* c, qf_records** out) {
    NEED(c);
    NEED(out);
    return guard([&]() -> int {
        if (!c->have_q) throw Error(ErrorCode::InvalidInput, "q is not set");
        SearchConfig cfg = c->cfg;
        if (cfg.mode == SearchMode::QDrop) {
            if (cfg.q < 3) throw Error(ErrorCode::UnsupportedIndex, "q-drop search needs q >= 3");
            if (cfg.q == 3 && !c->long_running)
                throw Error(ErrorCode::InvalidInput, "q-drop search at q = 3 needs the long-running flag");
        }
        if (c->profile) {
            const Profile& p = default_profile();
            if (cfg.mode == SearchMode::Torsion) cfg.external_bounds = p.external_bounds;
            else if (cfg.mode == SearchMode::TorsionFree)
                if (auto* row = p.row(cfg.q)) cfg.constraints.insert(cfg.constraints.end(), row->constraints.begin(), row->constraints.end());
        }
        auto r = std::make_unique<qf_records>();
        r->recs = run_search(cfg);
        *out = r.release();
        return QF_OK;
    });
}

size_t qf_records_count(const qf_records* r) { return r ? r->recs.size() : 0; }

int qf_records_json(const qf_records* r, char** out) {
    NEED(r);
    NEED(out);
    return guard([&]() -> int {
        *out = dup(records_to_json(r->recs));
        return QF_OK;
    });
}

int qf_records_csv(const qf_records* r, char** out) {
    NEED(r);
    NEED(out);
    return guard([&]() -> int {
        *out = dup(records_to_csv(r->recs));
        return QF_OK;
    });
}

int qf_records_from_json(const char* text, qf_records** out) {
    NEED(text);
    NEED(out);
    return guard([&]() -> int {
        auto r = std::make_unique<qf_records>();
        r->recs = records_from_json(text);
        *out = r.release();
        return QF_OK;
    });
}

int qf_records_from_csv(const char* text, qf_records** out) {
    NEED(text);
    NEED(out);
    return guard([&]() -> int {
        auto r = std::make_unique<qf_records>();
        r->recs = records_from_csv(text);
        *out = r.release();
        return QF_OK;
    });
}

int qf_records_equal(const qf_records* a, const qf_records* b) {
    if (!a || !b) return 0;
    auto x = a->recs, y = b->recs;
    std::stable_sort(x.begin(), x.end(), record_less);
    std::stable_sort(y.begin(), y.end(), record_less);
    return x == y ? 1 : 0;
}

void qf_records_free(qf_records* r) { delete r; }

int qf_candidate_new(long q, const char* basket, const char* torsion, qf_candidate** out) {
    NEED(basket);
    NEED(out);
    return guard([&]() -> int {
        if (q < 1) throw Error(ErrorCode::InvalidInput, "q must be positive");
        auto bt = parse_basket_text(basket);
        std::vector<long> k;
        if (torsion && *torsion) {
            k = to_longs("torsion", torsion);
            if (k.size() != bt.indices.size())
                throw Error(ErrorCode::InconsistentTorsion, "torsion vector length differs from basket size");
        }
        // sort points by index, carrying twists and torsion along
        std::vector<std::tuple<long, long, long>> pts;
        for (std::size_t i = 0; i < bt.indices.size(); ++i)
            pts.emplace_back(bt.indices[i], bt.twists ? (*bt.twists)[i] : 0, k.empty() ? 0 : k[i]);
        std::sort(pts.begin(), pts.end());
        std::vector<long> idx;
        std::vector<BasketPoint> twisted;
        for (auto& [r, b, kk] : pts) {
            idx.push_back(r);
            if (bt.twists) twisted.emplace_back(r, b);
        }
        FilterResult fr = bt.twists ? filter_twisted(q, Basket(twisted)) : filter_candidate(q, idx, SearchMode::TorsionFree);
        if (!fr.record)
            return fail(QF_ERR_REJECTED, std::string("basket rejected by the ") + stage_name(fr.failed) + " filter");
        auto c = std::make_unique<qf_candidate>();
        c->rec = *fr.record;
        c->geom = make_geometry(q, c->rec.basket, c->rec.l);
        if (!k.empty()) {
            std::vector<long> ks;
            for (std::size_t i = 0; i < pts.size(); ++i) ks.push_back(residue(std::get<2>(pts[i]), std::get<0>(pts[i])));
            long n = torsion_order(c->geom, ks);
            if (n > 1) {
                TorsionAssignment ta{ks, n};
                check_torsion(c->rec.basket, ta);
                c->geom = make_geometry(q, c->rec.basket, c->rec.l, ta);
                c->n = n;
            }
        }
        *out = c.release();
        return QF_OK;
    });
}

int qf_candidate_basket(const qf_candidate* c, char** out) {
    NEED(c);
    NEED(out);
    return guard([&]() -> int {
        *out = dup(c->rec.basket.str());
        return QF_OK;
    });
}

int qf_candidate_a3(const qf_candidate* c, char** out) {
    NEED(c);
    NEED(out);
    return guard([&]() -> int {
        *out = dup(c->rec.a3.str());
        return QF_OK;
    });
}

int qf_candidate_genus(const qf_candidate* c, long* out) {
    NEED(c);
    NEED(out);
    *out = c->rec.genus;
    return QF_OK;
}

int qf_candidate_order(const qf_candidate* c, long* out) {
    NEED(c);
    NEED(out);
    *out = c->n;
    return QF_OK;
}

int qf_candidate_dim(const qf_candidate* c, long t, long s, long* out) {
    NEED(c);
    NEED(out);
    if (s < 0 || s >= c->n) return fail(QF_ERR_OUT_OF_RANGE, "s must lie in [0, n)");
    return guard([&]() -> int {
        *out = dim_linear_system(c->geom, {t, s});
        return QF_OK;
    });
}

void qf_candidate_free(qf_candidate* c) { delete c; }

int qf_table_ids(char** out) {
    NEED(out);
    return guard([&]() -> int {
        *out = dup(join(table_ids(), "\n"));
        return QF_OK;
    });
}

int qf_verify_table(const char* id, unsigned workers, qf_report** out) {
    NEED(id);
    NEED(out);
    return guard([&]() -> int {
        auto tr = verify_table(id, workers ? workers : 1);
        auto r = std::make_unique<qf_report>();
        r->kind = "table";
        r->id = id;
        for (auto& row : tr.rows) r->items.push_back({row.label, row.pass, join(row.diffs, "; ")});
        for (auto& u : tr.unexpected) r->items.push_back({"unexpected " + u, false, "computed but not in the table"});
        *out = r.release();
        return QF_OK;
    });
}

int qf_verify_cases(const char* pattern, qf_report** out) {
    NEED(pattern);
    NEED(out);
    return guard([&]() -> int {
        auto ids = list_cases(pattern);
        if (ids.empty()) throw Error(ErrorCode::MissingData, std::string("no case files match '") + pattern + "'");
        auto r = std::make_unique<qf_report>();
        r->kind = "cases";
        r->id = pattern;
        for (auto& id : ids) {
            qf_report::Item it{id, false, ""};
            try {
                auto res = run_case(load_case(case_path(id)));
                it.pass = res.pass;
                it.detail = "expected " + res.expected + "; got " + res.actual;
                if (!res.axioms.empty()) it.detail += "; axioms " + join(res.axioms, ",");
            } catch (const Error& e) {
                if (e.code() == ErrorCode::MissingData) throw;
                it.detail = std::string(error_code_name(e.code())) + ": " + e.what();
            }
            r->items.push_back(std::move(it));
        }
        *out = r.release();
        return QF_OK;
    });
}

size_t qf_report_count(const qf_report* r) { return r ? r->items.size() : 0; }

size_t qf_report_passed(const qf_report* r) {
    if (!r) return 0;
    return std::count_if(r->items.begin(), r->items.end(), [](auto& i) { return i.pass; });
}

int qf_report_item(const qf_report* r, size_t i, const char** label, int* pass, const char** detail) {
    NEED(r);
    if (i >= r->items.size()) return fail(QF_ERR_OUT_OF_RANGE, "report item out of range");
    if (label) *label = r->items[i].label.c_str();
    if (pass) *pass = r->items[i].pass ? 1 : 0;
    if (detail) *detail = r->items[i].detail.c_str();
    return QF_OK;
}

int qf_report_json(const qf_report* r, char** out) {
    NEED(r);
    NEED(out);
    return guard([&]() -> int {
        nlohmann::json j;
        j["kind"] = r->kind;
        j["id"] = r->id;
        j["total"] = r->items.size();
        j["passed"] = qf_report_passed(r);
        j["pass"] = qf_report_passed(r) == r->items.size();
        j["items"] = nlohmann::json::array();
        for (auto& it : r->items) j["items"].push_back({{"label", it.label}, {"pass", it.pass}, {"detail", it.detail}});
        *out = dup(j.dump(2) + "\n");
        return QF_OK;
    });
}

void qf_report_free(qf_report* r) { delete r; }

namespace {

qf_link* solve_case(const CaseSpec& spec) {
    auto res = run_case(spec);
    auto l = std::make_unique<qf_link>();
    l->outcome = res.actual;
    std::vector<long> ks;
    for (auto& e : spec.equations) ks.push_back(e.k);
    l->solutions = res.tuples;
    for (auto& s : res.solutions) l->details.push_back(format_solution(s, ks));
    l->notes = res.notes;
    l->has_expect = spec.has_expect;
    l->pass = res.pass;
    l->expected = res.expected;
    return l.release();
}

}  // namespace

int qf_link_solve_spec(const char* text, const char* origin, qf_link** out) {
    NEED(text);
    NEED(out);
    return guard([&]() -> int {
        *out = solve_case(parse_case(text, origin ? origin : "<spec>", false));
        return QF_OK;
    });
}

int qf_link_solve_inline(long q, const char* ks, long r, const char* alpha, const char* bounds, qf_link** out) {
    NEED(ks);
    NEED(out);
    return guard([&]() -> int {
        std::map<std::string, std::string> b{{"q_hat", "1..19"}, {"s", "0.."}, {"m", "0.."}};
        std::string e;
        if (bounds) {
            std::string text(bounds);
            std::replace(text.begin(), text.end(), ';', ' ');
            std::istringstream in(text);
            std::string tok;
            while (in >> tok) {
                auto eq = tok.find('=');
                std::string name = tok.substr(0, eq);
                if (eq == std::string::npos || (name != "q_hat" && name != "e" && name != "s" && name != "m"))
                    throw Error(ErrorCode::MalformedEquation,
                                "--bounds: expected q_hat=, e=, s= or m=, got '" + tok + "'");
                if (name == "e") e = tok.substr(eq + 1);
                else b[name] = tok.substr(eq + 1);
            }
        }
        std::string spec = "id = inline\nkind = solve\nq = " + std::to_string(q) + "\ncenter = " + std::to_string(r) +
                           "\nalpha = " + (alpha && *alpha ? std::string(alpha) : "kawamata") +
                           "\nq_hat = " + b["q_hat"] + "\n";
        if (!e.empty()) spec += "e = " + e + "\n";
        for (long k : to_longs("k", ks)) spec += "equation = k=" + std::to_string(k) + " s=" + b["s"] + " m=" + b["m"] + "\n";
        *out = solve_case(parse_case(spec, "<inline>", false));
        return QF_OK;
    });
}

const char* qf_link_outcome(const qf_link* l) { return l ? l->outcome.c_str() : ""; }
size_t qf_link_count(const qf_link* l) { return l ? l->solutions.size() : 0; }
const char* qf_link_solution(const qf_link* l, size_t i) {
    return l && i < l->solutions.size() ? l->solutions[i].c_str() : nullptr;
}
size_t qf_link_detail_count(const qf_link* l) { return l ? l->details.size() : 0; }
const char* qf_link_detail(const qf_link* l, size_t i) {
    return l && i < l->details.size() ? l->details[i].c_str() : nullptr;
}
size_t qf_link_note_count(const qf_link* l) { return l ? l->notes.size() : 0; }
const char* qf_link_note(const qf_link* l, size_t i) { return l && i < l->notes.size() ? l->notes[i].c_str() : nullptr; }

int qf_link_check(const qf_link* l, int* has_expect, int* pass, const char** expected) {
    NEED(l);
    if (has_expect) *has_expect = l->has_expect ? 1 : 0;
    if (pass) *pass = l->pass ? 1 : 0;
    if (expected) *expected = l->expected.c_str();
    return QF_OK;
}

void qf_link_free(qf_link* l) { delete l; }

}  // extern "C"
