#pragma once

#include "qfano/sarkisov.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qfano {

enum class CaseKind { Solve, AlphaCap, DiscrepancyBound };
enum class AlphaMode { Fixed, Kawamata, Integers };

struct EquationSpec {
    int line_no = 0;
    long k = 1;
    std::optional<Rational> frac;  // nullopt: local computation from q, centre and k
    Relation relation = Relation::Equal;
    long s_min = 0;
    std::optional<long> s_max;
    std::optional<long> m_min;  // nullopt: threshold bound, or 0 without a threshold
    std::optional<long> m_max;
    std::optional<Rational> threshold;
    std::optional<long> s_profile;  // dim of the mobile system; s_min per q_hat from the profile
    std::optional<long> dim;        // dim of the mobile system; eliminates solutions via the profile
};

struct Expectation {
    enum class Kind { None, Unique, Solutions, Bound };
    Kind kind = Kind::None;
    std::vector<std::string> fields;
    std::vector<std::vector<std::string>> tuples;
    std::optional<Rational> bound;
    bool contradiction = false;
    bool eliminated = false;
};

struct CaseSpec {
    std::string id;
    std::string origin;
    std::string claim;
    CaseKind kind = CaseKind::Solve;
    long q = 0;
    std::optional<std::vector<long>> basket;
    long center = 1;
    AlphaMode alpha_mode = AlphaMode::Kawamata;
    Rational alpha;
    std::optional<Rational> threshold;
    std::set<long> q_hat;
    bool nonrational_only = false;
    std::optional<long> genus_at_least;
    long e_min = 1;
    std::optional<long> e_max;
    std::vector<EquationSpec> equations;
    // alpha-cap and discrepancy-bound
    long k = 0;
    long s_min = 0;
    long s_max = 0;
    std::vector<long> n_values;
    std::optional<Rational> cap;
    std::vector<std::string> axioms;
    std::string eliminated_by;
    Expectation expect;
    bool has_expect = true;
};

struct Axiom {
    std::string tag;
    std::string statement;
};

struct CaseResult {
    std::string id;
    bool pass = false;
    std::string expected;
    std::string actual;
    std::vector<std::string> axioms;
    std::vector<std::string> notes;
    std::vector<LinkSolution> solutions;
    std::vector<std::string> tuples;  // distinct projections of the solutions, sorted
};

std::string corpus_dir();
const std::map<std::string, Axiom>& axiom_table();

// Without require_expect a missing 'expect' is allowed; the run then reports only.
CaseSpec parse_case(const std::string& text, const std::string& origin = "<input>", bool require_expect = true);
CaseSpec load_case(const std::string& path);

// Relative ids ("index7/r2") of corpus files matching a shell glob.
std::vector<std::string> list_cases(const std::string& pattern);
std::string case_path(const std::string& id);

// Torsion discrepancy cap for class group order n, from the torsion table.
Rational torsion_discrepancy_cap(long n);

CaseResult run_case(const CaseSpec& spec);
std::string format_solution(const LinkSolution& sol, const std::vector<long>& ks);

}  // namespace qfano
