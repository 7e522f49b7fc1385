#include "qfano/profile.hpp"

#include "qfano/error.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace qfano {

namespace {
std::mutex g_dir_mutex;
std::string g_dir_override;
}  // namespace

std::vector<DataLine> read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MissingData, "cannot open data file " + path);
    std::vector<DataLine> out;
    std::string text;
    int n = 0;
    while (std::getline(in, text)) {
        ++n;
        DataLine dl;
        dl.line_no = n;
        auto hash = text.find('#');
        if (hash != std::string::npos) {
            dl.comment = text.substr(hash + 1);
            while (!dl.comment.empty() && dl.comment.front() == ' ') dl.comment.erase(0, 1);
            text.resize(hash);
        }
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) dl.tokens.push_back(tok);
        if (!dl.tokens.empty()) out.push_back(std::move(dl));
    }
    return out;
}

std::map<std::string, std::string> key_values(const DataLine& line, std::size_t first) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = first; i < line.tokens.size(); ++i) {
        auto& t = line.tokens[i];
        auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::InvalidInput,
                        "line " + std::to_string(line.line_no) + ": expected key=value, got '" + t + "'");
        kv[t.substr(0, eq)] = t.substr(eq + 1);
    }
    return kv;
}

std::string data_dir() {
    {
        std::lock_guard lk(g_dir_mutex);
        if (!g_dir_override.empty()) return g_dir_override;
    }
    if (const char* env = std::getenv("QFANO_DATA_DIR"); env && *env) return env;
#ifdef QFANO_DEFAULT_DATA_DIR
    return QFANO_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

void set_data_dir(const std::string& dir) {
    std::lock_guard lk(g_dir_mutex);
    g_dir_override = dir;
}

std::string data_path(const std::string& relative) { return data_dir() + "/" + relative; }

const ProfileRow* Profile::row(long q) const {
    auto it = rows.find(q);
    return it == rows.end() ? nullptr : &it->second;
}

std::optional<long> Profile::genus_threshold(long q) const {
    auto* r = row(q);
    if (!r || !r->genus_bound) return std::nullopt;
    return *r->genus_bound + 1;
}

std::optional<long> Profile::dim_upper_bound(long q, long t) const {
    auto* r = row(q);
    if (!r) return std::nullopt;
    auto it = r->dim_bound.find(t);
    if (it == r->dim_bound.end()) return std::nullopt;
    return it->second;
}

long Profile::s_min_for_dim(long q, long dim_m) const {
    for (long s = 1;; ++s) {
        auto u = dim_upper_bound(q, s);
        if (!u || *u >= dim_m) return s;
    }
}

bool Profile::genus_allows(long q, long g) const {
    auto* r = row(q);
    return !r || !r->genus_bound || *r->genus_bound >= g;
}

Profile load_profile(const std::string& path) {
    Profile p;
    for (auto& line : read_data_file(path)) {
        auto where = [&] { return path + ":" + std::to_string(line.line_no) + ": "; };
        auto& kw = line.tokens[0];
        try {
            if (kw == "version") {
                if (line.tokens.size() != 2) throw Error(ErrorCode::InvalidInput, "version takes one value");
                p.version = std::stoi(line.tokens[1]);
            } else if (kw == "nonrational") {
                for (std::size_t i = 1; i < line.tokens.size(); ++i) p.nonrational.insert(std::stol(line.tokens[i]));
            } else if (kw == "external_bound") {
                if (line.tokens.size() != 3) throw Error(ErrorCode::InvalidInput, "external_bound takes q and a bound");
                p.external_bounds[std::stol(line.tokens[1])] = std::stol(line.tokens[2]);
            } else if (kw == "row") {
                if (line.tokens.size() < 2) throw Error(ErrorCode::InvalidInput, "row needs q");
                ProfileRow r;
                r.q = std::stol(line.tokens[1]);
                std::string joined;
                for (std::size_t i = 2; i < line.tokens.size(); ++i) joined += (joined.empty() ? "" : ",") + line.tokens[i];
                if (!joined.empty()) r.constraints = parse_constraints(joined);
                for (auto& c : r.constraints) {
                    if (c.op != Constraint::Op::Le && c.op != Constraint::Op::Eq)
                        throw Error(ErrorCode::InvalidInput, "profile constraints must be '<=' or '='");
                    if (c.on_genus) r.genus_bound = c.value;
                    else if (c.s == 0) r.dim_bound[c.t] = c.value;
                }
                p.rows[r.q] = std::move(r);
            } else {
                throw Error(ErrorCode::InvalidInput, "unknown keyword '" + kw + "'");
            }
        } catch (const Error& e) {
            throw Error(e.code(), where() + e.what());
        } catch (const std::exception& e) {
            throw Error(ErrorCode::InvalidInput, where() + e.what());
        }
    }
    if (p.version != 1) throw Error(ErrorCode::MissingData, path + ": unsupported profile version");
    return p;
}

const Profile& default_profile() {
    static std::mutex m;
    static std::map<std::string, Profile> cache;
    std::string path = data_path("profiles/nonrational_v1.txt");
    std::lock_guard lk(m);
    auto it = cache.find(path);
    if (it == cache.end()) it = cache.emplace(path, load_profile(path)).first;
    return it->second;
}

SearchConfig profile_config(const Profile& p, long q, unsigned workers) {
    SearchConfig c;
    c.q = q;
    c.workers = workers;
    c.external_bounds = p.external_bounds;
    if (auto* r = p.row(q)) c.constraints = r->constraints;
    return c;
}

}  // namespace qfano
