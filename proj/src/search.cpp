#include "qfano/search.hpp"

#include "qfano/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <thread>

namespace qfano {

const char* mode_name(SearchMode m) {
    switch (m) {
        case SearchMode::TorsionFree: return "torsion-free";
        case SearchMode::Torsion: return "torsion";
        case SearchMode::QDrop: return "q-drop";
    }
    return "?";
}

SearchMode parse_mode(const std::string& s) {
    if (s == "torsion-free") return SearchMode::TorsionFree;
    if (s == "torsion") return SearchMode::Torsion;
    if (s == "q-drop") return SearchMode::QDrop;
    throw Error(ErrorCode::InvalidInput, "unknown mode '" + s + "'");
}

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Coprimality: return "coprimality";
        case Stage::Positivity: return "a3-positivity";
        case Stage::Integrality: return "integrality";
        case Stage::BogomolovMiyaoka: return "bogomolov-miyaoka";
        case Stage::Vanishing: return "vanishing";
        case Stage::TorsionOrder: return "torsion-order";
        case Stage::CoverGenus: return "cover-genus";
        case Stage::Accepted: return "accepted";
    }
    return "?";
}

// ---- constraints ----

bool Constraint::holds(long v) const {
    switch (op) {
        case Op::Le: return v <= value;
        case Op::Lt: return v < value;
        case Op::Eq: return v == value;
        case Op::Ge: return v >= value;
        case Op::Gt: return v > value;
    }
    return false;
}

std::string Constraint::str() const {
    static const char* ops[] = {"<=", "<", "=", ">=", ">"};
    std::string lhs = on_genus ? "genus" : "dim" + std::to_string(t) + "A";
    if (!on_genus && s != 0) lhs += "+" + std::to_string(s) + "Xi";
    return lhs + ops[static_cast<int>(op)] + std::to_string(value);
}

static Constraint parse_one_constraint(std::string item) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    auto bad = [&] { return Error(ErrorCode::InvalidInput, "bad constraint '" + item + "'"); };
    auto op_pos = item.find_first_of("<>=");
    if (op_pos == std::string::npos) throw bad();
    std::string lhs = item.substr(0, op_pos), rest = item.substr(op_pos);
    Constraint c;
    std::size_t op_len = 1;
    if (rest.rfind("<=", 0) == 0) { c.op = Constraint::Op::Le; op_len = 2; }
    else if (rest.rfind(">=", 0) == 0) { c.op = Constraint::Op::Ge; op_len = 2; }
    else if (rest.rfind("==", 0) == 0) { c.op = Constraint::Op::Eq; op_len = 2; }
    else if (rest[0] == '<') c.op = Constraint::Op::Lt;
    else if (rest[0] == '>') c.op = Constraint::Op::Gt;
    else c.op = Constraint::Op::Eq;
    try {
        std::size_t used = 0;
        std::string num = rest.substr(op_len);
        c.value = std::stol(num, &used);
        if (used != num.size()) throw bad();
    } catch (const std::logic_error&) {
        throw bad();
    }
    if (lhs == "genus" || lhs == "g") {
        c.on_genus = true;
        return c;
    }
    // dim<t>A or dim<t>A+<s>Xi
    if (lhs.rfind("dim", 0) != 0) throw bad();
    std::string body = lhs.substr(3);
    auto a = body.find('A');
    if (a == std::string::npos || a == 0) throw bad();
    try {
        c.t = std::stol(body.substr(0, a));
        std::string tail = body.substr(a + 1);
        if (!tail.empty()) {
            if (tail[0] != '+' || tail.size() < 4 || tail.substr(tail.size() - 2) != "Xi") throw bad();
            std::string s = tail.substr(1, tail.size() - 3);
            c.s = s.empty() ? 1 : std::stol(s);
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    if (c.t < 1 || c.s < 0) throw bad();
    return c;
}

std::vector<Constraint> parse_constraints(const std::string& text) {
    std::vector<Constraint> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_one_constraint(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// ---- records ----

long CandidateRecord::dim(long t, long s) const {
    if (s < 0 || s >= static_cast<long>(dims.size()) || t < 1 || t > static_cast<long>(dims[s].size()))
        throw Error(ErrorCode::InvalidInput,
                    "dimension of |" + std::to_string(t) + "A+" + std::to_string(s) + "Xi| not recorded");
    return dims[s][t - 1];
}

bool operator==(const CandidateRecord& a, const CandidateRecord& b) {
    auto tor_eq = [](const std::optional<TorsionData>& x, const std::optional<TorsionData>& y) {
        if (x.has_value() != y.has_value()) return false;
        if (!x) return true;
        return x->n == y->n && x->k == y->k && x->cover == y->cover && x->cover_a3 == y->cover_a3 &&
               x->cover_genus == y->cover_genus;
    };
    return a.q == b.q && a.basket == b.basket && a.l == b.l && a.a3 == b.a3 && a.minus_kc2 == b.minus_kc2 &&
           a.genus == b.genus && a.dims == b.dims && tor_eq(a.torsion, b.torsion);
}

bool record_less(const CandidateRecord& a, const CandidateRecord& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.basket != b.basket) return a.basket < b.basket;
    if (a.l != b.l) return a.l < b.l;
    long an = a.torsion ? a.torsion->n : 1, bn = b.torsion ? b.torsion->n : 1;
    if (an != bn) return an < bn;
    static const std::vector<long> none;
    const auto& ak = a.torsion ? a.torsion->k : none;
    const auto& bk = b.torsion ? b.torsion->k : none;
    return ak < bk;
}

// ---- enumeration ----

static std::vector<BasketPoint> candidate_points(const SearchConfig& config, long q_coprime) {
    std::set<long> allowed;
    if (config.allowed_indices) allowed.insert(config.allowed_indices->begin(), config.allowed_indices->end());
    std::vector<BasketPoint> pts;
    long top = config.max_index ? std::min<long>(*config.max_index, 24) : 24;
    for (long r = 2; r <= top; ++r) {
        if (config.allowed_indices && !allowed.count(r)) continue;
        if (q_coprime > 0 && gcd_l(r, q_coprime) != 1) continue;
        for (long b : admissible_twists(r)) pts.emplace_back(r, b);
    }
    return pts;
}

static void enumerate_rec(const std::vector<BasketPoint>& pts, std::size_t start, std::vector<BasketPoint>& cur,
                          const Rational& used, std::vector<Basket>& out) {
    out.emplace_back(cur);
    for (std::size_t j = start; j < pts.size(); ++j) {
        Rational next = used + Rational(pts[j].r) - Rational::normalize(1, pts[j].r);
        if (next >= 24) break;  // points are sorted by r and the summand grows with r
        cur.push_back(pts[j]);
        enumerate_rec(pts, j, cur, next, out);
        cur.pop_back();
    }
}

static std::vector<Basket> enumerate_points(const std::vector<BasketPoint>& pts) {
    std::vector<Basket> out;
    std::vector<BasketPoint> cur;
    enumerate_rec(pts, 0, cur, Rational(0), out);
    return out;
}

std::vector<Basket> enumerate_baskets(const SearchConfig& config) {
    return enumerate_points(candidate_points(config, 0));
}

// Runs fn(i) for every i in [0, n) across workers; results land in slot i.
template <class T, class Fn>
static std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn fn) {
    std::vector<T> out(n);
    unsigned w = std::max(1u, workers);
    if (w == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(w);
    for (unsigned id = 0; id < w; ++id) {
        pool.emplace_back([&, id] {
            try {
                for (std::size_t i = id; i < n; i += w) out[i] = fn(i);
            } catch (...) {
                errors[id] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// ---- filters ----

namespace {

// Torsion-free part of the pipeline for fixed (q, basket, l).
Stage check_base(const Geometry& g) {
    if (g.a_cubed <= 0) return Stage::Positivity;
    if (!(Rational(global_index(g.basket)) * g.a_cubed).is_integer()) return Stage::Integrality;
    if (Rational(4 * g.q * g.q - 3 * g.q) * g.a_cubed > Rational(4) * kawamata_degree(g.basket))
        return Stage::BogomolovMiyaoka;
    for (long t = -g.q + 1; t < 0; ++t)
        if (euler_characteristic(g, {t, 0}) != 0) return Stage::Vanishing;
    return Stage::Accepted;
}

CandidateRecord make_record(const Geometry& g) {
    CandidateRecord rec;
    rec.q = g.q;
    rec.basket = g.basket;
    rec.l = g.l;
    rec.a3 = g.a_cubed;
    rec.minus_kc2 = kawamata_degree(g.basket);
    rec.genus = genus(g);
    rec.dims = dims_table(g, g.q);
    if (g.torsion) {
        TorsionData td;
        td.n = g.torsion->n;
        td.k = g.torsion->k;
        rec.torsion = td;
    }
    return rec;
}

bool all_coprime(long q, const Basket& b) {
    for (auto& p : b.points())
        if (gcd_l(q, p.r) != 1) return false;
    return true;
}

// Twist tuples for an index multiset, nondecreasing within equal indices, in lexicographic order.
std::vector<Basket> twistings(const std::vector<long>& indices) {
    std::vector<long> idx = indices;
    std::sort(idx.begin(), idx.end());
    std::vector<std::vector<BasketPoint>> acc{{}};
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::vector<std::vector<BasketPoint>> next;
        for (auto& partial : acc) {
            long lo = (i > 0 && idx[i - 1] == idx[i]) ? partial.back().b : 1;
            for (long b : admissible_twists(idx[i])) {
                if (b < lo) continue;
                auto p = partial;
                p.emplace_back(idx[i], b);
                next.push_back(std::move(p));
            }
        }
        acc = std::move(next);
    }
    std::vector<Basket> out;
    for (auto& pts : acc) out.emplace_back(pts);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> twist_vector(const Basket& b) {
    std::vector<long> out;
    for (auto& p : b.points()) out.push_back(p.b);
    return out;
}

// Groups of identical (r, b) points as [begin, end) ranges.
std::vector<std::pair<std::size_t, std::size_t>> identical_groups(const Basket& b) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < b.size()) {
        std::size_t j = i;
        while (j < b.size() && b[j] == b[i]) ++j;
        out.emplace_back(i, j);
        i = j;
    }
    return out;
}

// Step 5 order and Step 6 vanishing for a torsion class with local classes k.
// Returns the order n, or 0 when rejected.
long torsion_order_checked(const Geometry& g, const std::vector<long>& k) {
    long n = 0;
    try {
        n = torsion_order(g, k);
    } catch (const Error&) {
        return 0;
    }
    if (n < 2) return 0;
    for (std::size_t i = 0; i < k.size(); ++i)
        if ((n * k[i]) % g.basket[i].r != 0) return 0;
    Geometry gt = g;
    gt.torsion = TorsionAssignment{k, n};
    for (long s = 1; s < n; ++s)
        for (long t = -g.q + 1; t < 0; ++t)
            if (euler_characteristic(gt, {t, s}) != 0) return 0;
    return n;
}

}  // namespace

std::vector<long> canonical_torsion_vector(const Basket& basket, const std::vector<long>& k, long n) {
    auto groups = identical_groups(basket);
    std::optional<std::vector<long>> best;
    for (long u = 1; u < std::max(2L, n); ++u) {
        if (n > 1 && gcd_l(u, n) != 1) continue;
        std::vector<long> kk(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) kk[i] = residue(u * k[i], basket[i].r);
        for (auto [a, b] : groups) std::sort(kk.begin() + a, kk.begin() + b);
        if (!best || kk < *best) best = kk;
    }
    return *best;
}

std::vector<CandidateRecord> torsion_extensions(const CandidateRecord& base,
                                                const std::map<long, long>& external_bounds) {
    Geometry g;
    g.q = base.q;
    g.basket = base.basket;
    g.l = base.l;
    g.a_cubed = base.a3;
    g.a_dot_c2 = base.minus_kc2 / Rational(base.q);
    const Basket& B = base.basket;
    std::size_t np = B.size();
    auto groups = identical_groups(B);
    std::vector<std::size_t> group_start(np);
    for (auto [a, b] : groups)
        for (std::size_t i = a; i < b; ++i) group_start[i] = a;

    std::map<std::vector<long>, CandidateRecord> found;
    std::vector<long> k(np, 0);
    auto bound = external_bounds.find(base.q);

    auto visit = [&] {
        if (std::all_of(k.begin(), k.end(), [](long x) { return x == 0; })) return;
        long n = torsion_order_checked(g, k);
        if (n == 0) return;
        auto canon = canonical_torsion_vector(B, k, n);
        if (found.count(canon)) return;
        TorsionAssignment ta{canon, n};
        Geometry gt = g;
        gt.torsion = ta;
        CandidateRecord rec = base;
        rec.alternatives.clear();
        rec.dims = dims_table(gt, g.q);
        TorsionData td;
        td.n = n;
        td.k = canon;
        td.cover = cover_basket(B, ta);
        td.cover_a3 = Rational(n) * base.a3;
        Rational cg = genus_from_degree(Rational(g.q * g.q * g.q) * td.cover_a3, *td.cover);
        if (!cg.is_integer()) return;
        td.cover_genus = cg.num().get_si();
        if (bound != external_bounds.end() && td.cover_genus > bound->second) return;
        rec.torsion = td;
        found.emplace(canon, std::move(rec));
    };

    // odometer over k, nondecreasing within identical points
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == np) {
            visit();
            return;
        }
        long lo = group_start[i] == i ? 0 : k[i - 1];
        for (long v = lo; v < B[i].r; ++v) {
            k[i] = v;
            rec(i + 1);
        }
        k[i] = 0;
    };
    rec(0);

    std::vector<CandidateRecord> out;
    for (auto& [key, r] : found) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

FilterResult filter_twisted(long q, const Basket& basket) {
    FilterResult res;
    if (q < 3) throw Error(ErrorCode::UnsupportedIndex, "candidate filters need q >= 3");
    if (!all_coprime(q, basket)) {
        res.failed = Stage::Coprimality;
        return res;
    }
    Geometry g = make_geometry(q, basket);
    res.failed = check_base(g);
    if (res.failed == Stage::Accepted) res.record = make_record(g);
    return res;
}

static std::vector<CandidateRecord> q_drop_for_basket(long q, const Basket& B);

FilterResult filter_candidate(long q, const std::vector<long>& indices, SearchMode mode) {
    FilterResult best;
    best.failed = Stage::Coprimality;
    std::vector<std::vector<long>> admissible;
    for (auto& twisted : twistings(indices)) {
        FilterResult r;
        if (mode == SearchMode::QDrop) {
            auto recs = q_drop_for_basket(q, twisted);
            if (!recs.empty()) r.record = recs.front();
            r.failed = recs.empty() ? Stage::TorsionOrder : Stage::Accepted;
        } else {
            r = filter_twisted(q, twisted);
            if (r.record && mode == SearchMode::Torsion) {
                auto ext = torsion_extensions(*r.record, {});
                if (ext.empty()) {
                    r.record.reset();
                    r.failed = Stage::TorsionOrder;
                } else {
                    r.record = ext.front();
                }
            }
        }
        if (r.record) {
            admissible.push_back(twist_vector(twisted));
            if (!best.record) best = r;
        } else if (!best.record && static_cast<int>(r.failed) > static_cast<int>(best.failed)) {
            best.failed = r.failed;
        }
    }
    if (best.record) {
        best.failed = Stage::Accepted;
        for (std::size_t i = 1; i < admissible.size(); ++i) best.record->alternatives.push_back(admissible[i]);
    }
    return best;
}

std::vector<CandidateRecord> search_q(const SearchConfig& config) {
    if (config.q < 3) throw Error(ErrorCode::UnsupportedIndex, "search needs q >= 3");
    auto baskets = enumerate_points(candidate_points(config, config.q));
    auto slots = parallel_map<std::optional<CandidateRecord>>(baskets.size(), config.workers, [&](std::size_t i) {
        return filter_twisted(config.q, baskets[i]).record;
    });
    std::vector<CandidateRecord> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

std::vector<CandidateRecord> search_torsion(const SearchConfig& config) {
    if (config.q < 3) throw Error(ErrorCode::UnsupportedIndex, "search needs q >= 3");
    auto baskets = enumerate_points(candidate_points(config, config.q));
    auto slots = parallel_map<std::vector<CandidateRecord>>(baskets.size(), config.workers, [&](std::size_t i) {
        auto base = filter_twisted(config.q, baskets[i]).record;
        if (!base) return std::vector<CandidateRecord>{};
        return torsion_extensions(*base, config.external_bounds);
    });
    std::vector<CandidateRecord> out;
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

// ---- q-drop: Xi = K + qA, l free ----

static std::vector<CandidateRecord> q_drop_for_basket(long q, const Basket& B) {
    std::vector<CandidateRecord> out;
    if (q < 3) throw Error(ErrorCode::UnsupportedIndex, "q-drop search needs q >= 3");
    long R = global_index(B);
    if (gcd_l(q, R) == 1) return out;
    std::size_t np = B.size();
    const Rational kc2 = kawamata_degree(B);
    const Rational base = 1 - kc2 / Rational(12 * q);
    const Rational factor = Rational::normalize(12, (q - 1) * (q - 2));
    const Rational bm = Rational(4) * kc2;
    const Rational bm_coef(4 * q * q - 3 * q);
    std::vector<const std::vector<Rational>*> tables(np);
    for (std::size_t i = 0; i < np; ++i) tables[i] = &correction_table(B[i]);
    auto groups = identical_groups(B);
    std::vector<bool> first_in_group(np, false);
    for (auto [a, b] : groups) first_in_group[a] = true;

    std::vector<long> l(np, 0);
    std::vector<Rational> partial(np + 1);
    partial[0] = 0;

    auto leaf = [&] {
        Rational a3 = factor * (base + partial[np]);
        if (a3 <= 0) return;
        if (!(Rational(R) * a3).is_integer()) return;
        if (bm_coef * a3 > bm) return;
        Geometry g;
        g.q = q;
        g.basket = B;
        g.l = l;
        g.a_cubed = a3;
        g.a_dot_c2 = kc2 / Rational(q);
        for (long t = -q + 1; t < 0; ++t)
            if (euler_characteristic(g, {t, 0}) != 0) return;
        std::vector<long> k(np);
        for (std::size_t i = 0; i < np; ++i) k[i] = residue(1 + q * l[i], B[i].r);
        if (std::all_of(k.begin(), k.end(), [](long x) { return x == 0; })) return;
        long n = torsion_order_checked(g, k);
        if (n == 0) return;
        g.torsion = TorsionAssignment{k, n};
        CandidateRecord rec = make_record(g);
        out.push_back(std::move(rec));
    };

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == np) {
            leaf();
            return;
        }
        long lo = first_in_group[i] ? 0 : l[i - 1];
        long r = B[i].r;
        for (long v = lo; v < r; ++v) {
            l[i] = v;
            partial[i + 1] = partial[i] + (*tables[i])[residue(-kCalibrationSign * v, r)];
            rec(i + 1);
        }
        l[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

std::vector<CandidateRecord> search_q_drop_records(const SearchConfig& config) {
    if (config.q < 3) throw Error(ErrorCode::UnsupportedIndex, "q-drop search needs q >= 3");
    auto baskets = enumerate_baskets(config);
    auto slots = parallel_map<std::vector<CandidateRecord>>(baskets.size(), config.workers, [&](std::size_t i) {
        return q_drop_for_basket(config.q, baskets[i]);
    });
    std::vector<CandidateRecord> out;
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

std::vector<QDropResult> search_q_drop(const std::vector<long>& q_range, unsigned workers) {
    std::vector<QDropResult> out;
    for (long q : q_range) {
        SearchConfig c;
        c.q = q;
        c.mode = SearchMode::QDrop;
        c.workers = workers;
        std::map<long, QDropResult> by_n;
        for (auto& rec : search_q_drop_records(c)) {
            long n = rec.torsion->n;
            auto it = by_n.find(n);
            if (it == by_n.end()) by_n.emplace(n, QDropResult{q, n, rec, 1});
            else ++it->second.count;
        }
        for (auto& [n, r] : by_n) out.push_back(std::move(r));
    }
    return out;
}

bool passes_post_filters(const SearchConfig& config, const CandidateRecord& rec) {
    if (config.genus_threshold && rec.genus >= *config.genus_threshold) return false;
    if (config.genus_min && rec.genus < *config.genus_min) return false;
    if (config.genus_max && rec.genus > *config.genus_max) return false;
    for (auto& c : config.constraints) {
        long v = c.on_genus ? rec.genus : rec.dim(c.t, c.s);
        if (!c.holds(v)) return false;
    }
    return true;
}

std::vector<CandidateRecord> run_search(const SearchConfig& config) {
    for (auto& c : config.constraints)
        if (!c.on_genus && c.t > config.q)
            throw Error(ErrorCode::InvalidInput, "constraint " + c.str() + " refers to t > q");
    std::vector<CandidateRecord> all;
    switch (config.mode) {
        case SearchMode::TorsionFree: all = search_q(config); break;
        case SearchMode::Torsion: all = search_torsion(config); break;
        case SearchMode::QDrop: all = search_q_drop_records(config); break;
    }
    std::vector<CandidateRecord> out;
    for (auto& r : all)
        if (passes_post_filters(config, r)) out.push_back(std::move(r));
    return out;
}

}  // namespace qfano
