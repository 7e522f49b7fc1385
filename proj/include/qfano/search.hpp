#pragma once

#include "qfano/basket.hpp"
#include "qfano/rational.hpp"
#include "qfano/riemann_roch.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qfano {

enum class SearchMode { TorsionFree, Torsion, QDrop };

const char* mode_name(SearchMode m);
SearchMode parse_mode(const std::string& s);

// One numeric constraint on a record: genus, or dim |tA + sXi|.
struct Constraint {
    enum class Op { Le, Lt, Eq, Ge, Gt };
    bool on_genus = false;
    long t = 0;
    long s = 0;
    Op op = Op::Eq;
    long value = 0;

    bool holds(long v) const;
    std::string str() const;
};

// "genus<=10", "dim2A>=1", "dim3A+1Xi=0"; comma separated lists allowed.
std::vector<Constraint> parse_constraints(const std::string& text);

struct SearchConfig {
    long q = 0;
    SearchMode mode = SearchMode::TorsionFree;
    std::optional<long> max_index;
    std::optional<std::vector<long>> allowed_indices;
    std::optional<long> genus_threshold;  // keep g < threshold
    std::optional<long> genus_min;
    std::optional<long> genus_max;
    std::map<long, long> external_bounds;  // q -> max g(X')
    std::vector<Constraint> constraints;
    unsigned workers = 1;
};

struct TorsionData {
    long n = 1;
    std::vector<long> k;
    std::optional<Basket> cover;
    Rational cover_a3;
    long cover_genus = 0;
};

struct CandidateRecord {
    long q = 0;
    Basket basket;
    LocalAssignment l;
    Rational a3;
    Rational minus_kc2;
    long genus = 0;
    std::vector<std::vector<long>> dims;  // dims[s][t-1]
    std::optional<TorsionData> torsion;
    std::vector<std::vector<long>> alternatives;  // other admissible twist tuples

    long dim(long t, long s = 0) const;
    friend bool operator==(const CandidateRecord&, const CandidateRecord&);
};

// Canonical record order: basket, then l, then torsion k.
bool record_less(const CandidateRecord& a, const CandidateRecord& b);

enum class Stage {
    Coprimality,
    Positivity,
    Integrality,
    BogomolovMiyaoka,
    Vanishing,
    TorsionOrder,
    CoverGenus,
    Accepted,
};
const char* stage_name(Stage s);

struct FilterResult {
    std::optional<CandidateRecord> record;
    Stage failed = Stage::Accepted;
};

std::vector<Basket> enumerate_baskets(const SearchConfig& config);

// Index-only baskets: twist tuples are tried in lexicographic order.
FilterResult filter_candidate(long q, const std::vector<long>& indices, SearchMode mode);
// Fully twisted basket, fixed local classes from q (torsion-free check only).
FilterResult filter_twisted(long q, const Basket& basket);

std::vector<CandidateRecord> search_q(const SearchConfig& config);
std::vector<CandidateRecord> search_torsion(const SearchConfig& config);

struct QDropResult {
    long q = 0;
    long n = 0;
    CandidateRecord witness;
    std::size_t count = 0;
};
std::vector<CandidateRecord> search_q_drop_records(const SearchConfig& config);
std::vector<QDropResult> search_q_drop(const std::vector<long>& q_range, unsigned workers = 1);

// Dispatches on config.mode and applies post filters.
std::vector<CandidateRecord> run_search(const SearchConfig& config);

bool passes_post_filters(const SearchConfig& config, const CandidateRecord& rec);

// Torsion candidates attached to one torsion-free survivor.
std::vector<CandidateRecord> torsion_extensions(const CandidateRecord& base,
                                                const std::map<long, long>& external_bounds);

std::vector<long> canonical_torsion_vector(const Basket& basket, const std::vector<long>& k, long n);

}  // namespace qfano
