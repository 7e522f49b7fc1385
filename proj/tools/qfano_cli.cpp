// qfano: command line front end over the C API.

#include "qfano.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kRejected = 3, kMissing = 4 };

struct Failure {
    int exit_code;
    std::string msg;
};

int exit_for(int status) {
    switch (status) {
        case QF_ERR_INVALID_INPUT:
        case QF_ERR_UNSUPPORTED_INDEX:
        case QF_ERR_MALFORMED_EQUATION:
        case QF_ERR_UNKNOWN_TABLE:
        case QF_ERR_UNKNOWN_KEY:
        case QF_ERR_UNKNOWN_AXIOM:
        case QF_ERR_OUT_OF_RANGE:
        case QF_ERR_NO_BOUND:
            return kUsage;
        case QF_ERR_REJECTED:
        case QF_ERR_INCONSISTENT_TORSION:
        case QF_ERR_NO_ORDER:
        case QF_ERR_VANISHING_NOT_APPLICABLE:
            return kRejected;
        case QF_ERR_MISSING_DATA:
            return kMissing;
        default:
            return kMismatch;
    }
}

void check(int status) {
    if (status != QF_OK) throw Failure{exit_for(status), std::string(qf_status_name(status)) + ": " + qf_last_error()};
}

struct StrFree {
    void operator()(char* p) const { qf_free_string(p); }
};
using Str = std::unique_ptr<char, StrFree>;

std::string take(char* p) {
    Str s(p);
    return s ? std::string(s.get()) : std::string();
}

template <class T, void (*F)(T*)>
struct Deleter {
    void operator()(T* p) const { F(p); }
};
using Config = std::unique_ptr<qf_config, Deleter<qf_config, qf_config_free>>;
using Records = std::unique_ptr<qf_records, Deleter<qf_records, qf_records_free>>;
using Candidate = std::unique_ptr<qf_candidate, Deleter<qf_candidate, qf_candidate_free>>;
using Report = std::unique_ptr<qf_report, Deleter<qf_report, qf_report_free>>;
using Link = std::unique_ptr<qf_link, Deleter<qf_link, qf_link_free>>;

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Failure{kMissing, "cannot write " + tmp};
        f << content;
        if (!f.flush()) throw Failure{kMissing, "cannot write " + tmp};
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Failure{kMissing, "cannot rename onto " + path};
    }
}

struct EnumerateOpts {
    long q = 0;
    std::string mode = "torsion-free";
    std::optional<long> max_index, genus_min, genus_max;
    std::string dims_filter;
    std::string format = "json";
    long workers = 1;
    bool long_running = false;
    std::string profile = "nonrational";
};

int cmd_enumerate(const EnumerateOpts& o, std::ostream& out) {
    qf_config* raw = nullptr;
    check(qf_config_new(&raw));
    Config cfg(raw);
    auto set = [&](const char* k, const std::string& v) { check(qf_config_set(cfg.get(), k, v.c_str())); };
    set("q", std::to_string(o.q));
    set("mode", o.mode);
    if (o.max_index) set("max_index", std::to_string(*o.max_index));
    if (o.genus_min) set("genus_min", std::to_string(*o.genus_min));
    if (o.genus_max) set("genus_max", std::to_string(*o.genus_max));
    if (!o.dims_filter.empty()) set("dims_filter", o.dims_filter);
    set("workers", std::to_string(o.workers));
    set("long_running", o.long_running ? "true" : "false");
    set("profile", o.profile);
    qf_records* rr = nullptr;
    check(qf_enumerate(cfg.get(), &rr));
    Records recs(rr);
    char* text = nullptr;
    check(o.format == "csv" ? qf_records_csv(recs.get(), &text) : qf_records_json(recs.get(), &text));
    out << take(text);
    return kOk;
}

struct HilbertOpts {
    long q = 0;
    std::string basket;
    std::optional<long> kmax;
    std::string torsion;
};

int cmd_hilbert(const HilbertOpts& o, std::ostream& out) {
    if (o.kmax && *o.kmax < 0) throw Failure{kUsage, "--kmax must be non-negative"};
    qf_candidate* raw = nullptr;
    check(qf_candidate_new(o.q, o.basket.c_str(), o.torsion.empty() ? nullptr : o.torsion.c_str(), &raw));
    Candidate c(raw);
    char* s = nullptr;
    check(qf_candidate_basket(c.get(), &s));
    std::string basket = take(s);
    check(qf_candidate_a3(c.get(), &s));
    std::string a3 = take(s);
    long g = 0, n = 1;
    check(qf_candidate_genus(c.get(), &g));
    check(qf_candidate_order(c.get(), &n));
    long kmax = o.kmax.value_or(o.q);
    out << "q " << o.q << "\nbasket " << basket << "\nn " << n << "\nA3 " << a3 << "\ngenus " << g << "\n";
    if (kmax == 0) return kOk;
    out << "t";
    for (long j = 0; j < n; ++j) out << "\ts=" << j;
    out << "\n";
    for (long t = 1; t <= kmax; ++t) {
        out << t;
        for (long j = 0; j < n; ++j) {
            long d = 0;
            check(qf_candidate_dim(c.get(), t, j, &d));
            out << "\t" << d;
        }
        out << "\n";
    }
    return kOk;
}

struct VerifyOpts {
    std::string table;
    std::string cases;
    bool all = false;
    bool json = false;
    std::string report;
    long workers = 1;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
    std::vector<Report> reports;
    auto run_table = [&](const std::string& id) {
        qf_report* r = nullptr;
        check(qf_verify_table(id.c_str(), static_cast<unsigned>(o.workers), &r));
        reports.emplace_back(r);
    };
    auto run_cases = [&](const std::string& pat) {
        qf_report* r = nullptr;
        check(qf_verify_cases(pat.c_str(), &r));
        reports.emplace_back(r);
    };
    if (o.all) {
        char* ids = nullptr;
        check(qf_table_ids(&ids));
        std::istringstream in(take(ids));
        for (std::string id; std::getline(in, id);) run_table(id);
        run_cases("*");
    } else if (!o.table.empty()) {
        run_table(o.table);
    } else {
        run_cases(o.cases);
    }

    bool ok = true;
    nlohmann::json doc = nlohmann::json::array();
    std::ostringstream text;
    for (auto& r : reports) {
        char* js = nullptr;
        check(qf_report_json(r.get(), &js));
        auto j = nlohmann::json::parse(take(js));
        size_t total = qf_report_count(r.get()), passed = qf_report_passed(r.get());
        ok = ok && passed == total;
        text << j["kind"].get<std::string>() << " " << j["id"].get<std::string>() << ": " << passed << "/" << total
             << " pass\n";
        for (size_t i = 0; i < total; ++i) {
            const char *label = nullptr, *detail = nullptr;
            int pass = 0;
            check(qf_report_item(r.get(), i, &label, &pass, &detail));
            text << "  " << (pass ? "PASS " : "FAIL ") << label;
            if (!pass && detail && *detail) text << "\n       " << detail;
            text << "\n";
        }
        doc.push_back(std::move(j));
    }
    out << (o.json ? doc.dump(2) + "\n" : text.str());
    if (!o.report.empty()) write_atomic(o.report, doc.dump(2) + "\n");
    return ok ? kOk : kMismatch;
}

struct LinkOpts {
    std::string spec;
    std::optional<long> q, r;
    std::string k;
    std::string alpha;
    std::string bounds;
};

int cmd_link_solve(const LinkOpts& o, std::ostream& out) {
    qf_link* raw = nullptr;
    if (!o.spec.empty()) {
        std::ifstream f(o.spec);
        if (!f) throw Failure{kMissing, "cannot open spec file " + o.spec};
        std::stringstream ss;
        ss << f.rdbuf();
        check(qf_link_solve_spec(ss.str().c_str(), o.spec.c_str(), &raw));
    } else {
        if (!o.q || o.k.empty()) throw Failure{kUsage, "link-solve needs --spec or --q and --k"};
        check(qf_link_solve_inline(*o.q, o.k.c_str(), o.r.value_or(1), o.alpha.empty() ? nullptr : o.alpha.c_str(),
                                   o.bounds.empty() ? nullptr : o.bounds.c_str(), &raw));
    }
    Link l(raw);
    size_t n = qf_link_count(l.get());
    if (n == 0) out << "NO SOLUTIONS\n";
    for (size_t i = 0; i < n; ++i) out << qf_link_solution(l.get(), i) << "\n";
    for (size_t i = 0; i < qf_link_detail_count(l.get()); ++i) out << "detail " << qf_link_detail(l.get(), i) << "\n";
    out << "outcome " << qf_link_outcome(l.get()) << "\n";
    for (size_t i = 0; i < qf_link_note_count(l.get()); ++i) out << "cap " << qf_link_note(l.get(), i) << "\n";
    int has_expect = 0, pass = 1;
    const char* expected = nullptr;
    check(qf_link_check(l.get(), &has_expect, &pass, &expected));
    if (!has_expect) return kOk;
    out << "expected " << expected << "\n" << (pass ? "MATCH" : "MISMATCH") << "\n";
    return pass ? kOk : kMismatch;
}

// "key = value" lines; keys are long option names without dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Failure{kMissing, "cannot open config file " + path};
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int no = 0;
    auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    while (std::getline(f, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Failure{kUsage, path + ":" + std::to_string(no) + ": expected key = value"};
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        kv.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return kv;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
    for (size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

// Config values go in front of the command line values, so flags win.
std::vector<std::string> inject_config(CLI::App& app, std::vector<std::string> args) {
    auto path = config_path(args);
    if (!path) return args;
    auto kv = read_config(*path);
    size_t sub_at = args.size();
    CLI::App* sub = nullptr;
    for (size_t i = 1; i < args.size() && !sub; ++i)
        for (auto* s : app.get_subcommands({}))
            if (s->get_name() == args[i]) sub = s, sub_at = i;
    std::vector<std::string> global, local;
    for (auto& [key, value] : kv) {
        if (key == "config") continue;
        auto emit = [&](const CLI::Option* opt, std::vector<std::string>& dst) {
            if (opt->get_expected_min() == 0) {
                if (value == "true" || value == "1" || value == "yes") dst.push_back("--" + key);
            } else {
                dst.push_back("--" + key);
                dst.push_back(value);
            }
        };
        if (auto* opt = app.get_option_no_throw("--" + key)) {
            emit(opt, global);
            continue;
        }
        bool known = false;
        for (auto* s : app.get_subcommands({}))
            if (s->get_option_no_throw("--" + key)) known = true;
        if (!known) throw Failure{kUsage, *path + ": unknown key '" + key + "'"};
        if (sub)
            if (auto* opt = sub->get_option_no_throw("--" + key)) emit(opt, local);
    }
    args.insert(args.begin() + sub_at + (sub ? 1 : 0), local.begin(), local.end());
    args.insert(args.begin() + 1, global.begin(), global.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-Fano threefold candidates, Riemann-Roch tables and link case checks", "qfano"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qf_version()));

    std::string data_dir, manifest, config;
    app.add_option("--data-dir", data_dir, "Directory with tables, profiles and cases");
    app.add_option("--manifest", manifest, "Write a run manifest (JSON) to this path");
    app.add_option("--config", config, "key = value file; flags override it");

    EnumerateOpts eo;
    auto* en = app.add_subcommand("enumerate", "Enumerate candidates for one index");
    en->add_option("--q", eo.q, "Fano index")->required();
    en->add_option("--mode", eo.mode)->check(CLI::IsMember({"torsion-free", "torsion", "q-drop"}));
    en->add_option("--max-index", eo.max_index, "Cap on singularity indices");
    en->add_option("--genus-min", eo.genus_min);
    en->add_option("--genus-max", eo.genus_max);
    en->add_option("--dims-filter", eo.dims_filter, "e.g. dim2A>=1,genus<=10");
    en->add_option("--format", eo.format)->check(CLI::IsMember({"json", "csv"}));
    en->add_option("--workers", eo.workers)->check(CLI::Range(1, 1024));
    en->add_flag("--long-running", eo.long_running, "Allow q-drop at q = 3");
    en->add_option("--profile", eo.profile, "nonrational (default) or none")
        ->check(CLI::IsMember({"nonrational", "none"}));

    HilbertOpts ho;
    auto* hi = app.add_subcommand("hilbert", "dim |tA + s Xi| table for one basket");
    hi->add_option("--q", ho.q)->required();
    hi->add_option("--basket", ho.basket, "r[:b],...")->required();
    hi->add_option("--kmax", ho.kmax);
    hi->add_option("--torsion", ho.torsion, "k1,k2,... in basket order");

    VerifyOpts vo;
    auto* ve = app.add_subcommand("verify", "Check shipped tables and case corpus");
    auto* vt = ve->add_option("--table", vo.table);
    auto* vc = ve->add_option("--cases", vo.cases, "glob over case ids, e.g. 'index9/*'");
    auto* va = ve->add_flag("--all", vo.all);
    vt->excludes(vc)->excludes(va);
    vc->excludes(va);
    ve->add_flag("--json", vo.json, "Print the JSON report");
    ve->add_option("--report", vo.report, "Write the JSON report to this path");
    ve->add_option("--workers", vo.workers)->check(CLI::Range(1, 1024));

    LinkOpts lo;
    auto* ls = app.add_subcommand("link-solve", "Solve the link equations of a case");
    ls->add_option("--spec", lo.spec, "case file");
    ls->add_option("--q", lo.q);
    ls->add_option("--k", lo.k, "k or k1,k2");
    ls->add_option("--r", lo.r, "centre index");
    ls->add_option("--alpha", lo.alpha, "discrepancy, default 1/r");
    ls->add_option("--bounds", lo.bounds, "q_hat=a..b e=a..b s=a..b m=a..b");

    std::vector<std::string> args(argv, argv + argc);
    std::ostringstream out;
    int code = kOk;
    auto t0 = std::chrono::steady_clock::now();
    try {
        args = inject_config(app, args);
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
        if (ve->parsed() && vo.table.empty() && vo.cases.empty() && !vo.all)
            throw Failure{kUsage, "verify needs --table, --cases or --all"};
        if (!data_dir.empty()) check(qf_set_data_dir(data_dir.c_str()));
        if (en->parsed()) code = cmd_enumerate(eo, out);
        else if (hi->parsed()) code = cmd_hilbert(ho, out);
        else if (ve->parsed()) code = cmd_verify(vo, out);
        else code = cmd_link_solve(lo, out);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const Failure& f) {
        std::cout << out.str();
        std::cerr << "qfano: " << f.msg << "\n";
        return f.exit_code;
    }
    std::string text = out.str();
    std::cout << text;
    std::cout.flush();

    if (!manifest.empty()) {
        char digest[65];
        if (qf_sha256_hex(text.data(), text.size(), digest) != QF_OK) return kMismatch;
        nlohmann::json m;
        auto* sub = app.get_subcommands().front();
        nlohmann::json echo = nlohmann::json::object();
        for (auto* opt : sub->get_options())
            if (opt->count() > 0 && !opt->get_name().empty() && opt->get_name() != "--help")
                echo[opt->get_name()] = opt->results().empty() ? "true" : opt->results().back();
        m["command"] = sub->get_name();
        m["config"] = echo;
        m["tool_version"] = qf_version();
        m["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        m["digest"] = "sha256:" + std::string(digest);
        m["exit_code"] = code;
        try {
            write_atomic(manifest, m.dump(2) + "\n");
        } catch (const Failure& f) {
            std::cerr << "qfano: " << f.msg << "\n";
            return f.exit_code;
        }
    }
    return code;
}
