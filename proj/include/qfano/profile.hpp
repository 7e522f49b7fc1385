#pragma once

#include "qfano/search.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qfano {

// Whitespace-separated tokens of one non-comment line of a data file.
struct DataLine {
    int line_no = 0;
    std::vector<std::string> tokens;
    std::string comment;  // trailing "# ..." text, if any
};

std::vector<DataLine> read_data_file(const std::string& path);
// key=value tokens; the first '=' splits.
std::map<std::string, std::string> key_values(const DataLine& line, std::size_t first = 0);

// QFANO_DATA_DIR, else the configured default; set_data_dir overrides both.
std::string data_dir();
void set_data_dir(const std::string& dir);
std::string data_path(const std::string& relative);

struct ProfileRow {
    long q = 0;
    std::vector<Constraint> constraints;
    std::optional<long> genus_bound;
    std::map<long, long> dim_bound;  // t -> upper bound for dim |tA|
};

struct Profile {
    int version = 0;
    std::set<long> nonrational;
    std::map<long, ProfileRow> rows;
    std::map<long, long> external_bounds;

    const ProfileRow* row(long q) const;
    bool is_nonrational(long q) const { return nonrational.count(q) > 0; }
    // keep g < threshold
    std::optional<long> genus_threshold(long q) const;
    // upper bound for dim |tA| on a non-rational X with index q; nullopt if unconstrained
    std::optional<long> dim_upper_bound(long q, long t) const;
    // least s >= 1 with dim |sA| allowed to reach dim_m
    long s_min_for_dim(long q, long dim_m) const;
    // q with genus bound >= g (or no bound)
    bool genus_allows(long q, long g) const;
};

Profile load_profile(const std::string& path);
const Profile& default_profile();

// Search config filtered by the profile row for q.
SearchConfig profile_config(const Profile& p, long q, unsigned workers = 1);

}  // namespace qfano
