#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("qfano-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    fs::path err = scratch() / "stderr.txt";
    std::string cmd = std::string("'") + QFANO_CLI_PATH + "' " + args + " 2>'" + err.string() + "'";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
}

std::size_t lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("enumerate json") {
    auto r = run("enumerate --q 13 --mode torsion-free --format json");
    CHECK(r.code == 0);
    CHECK(count(r.out, "\"schema\"") == 1);
    CHECK(r.out.find("\"A3\": \"1/210\"") != std::string::npos);
}

TEST_CASE("enumerate csv") {
    auto r = run("enumerate --q 7 --mode torsion --format csv");
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 3);
}

TEST_CASE("enumerate with no rows") {
    auto r = run("enumerate --q 10 --mode torsion");
    CHECK(r.code == 0);
    CHECK(count(r.out, "\"schema\"") == 0);
}

TEST_CASE("enumerate usage errors") {
    CHECK(run("enumerate --q 2 --mode q-drop").code == 2);
    CHECK(run("enumerate --q 3 --mode q-drop").code == 2);
    CHECK(run("enumerate --q 7 --mode sideways").code == 2);
    CHECK(run("enumerate --q 7 --format xml").code == 2);
    CHECK(run("enumerate").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("enumerate filters") {
    auto r = run("enumerate --q 7 --profile none --dims-filter 'dim2A>=1' --format csv");
    CHECK(r.code == 0);
    CHECK(lines(r.out) > 1);
    auto g = run("enumerate --q 7 --profile none --genus-min 12 --genus-max 13 --format csv");
    CHECK(g.code == 0);
    CHECK(lines(g.out) < lines(run("enumerate --q 7 --profile none --format csv").out));
}

TEST_CASE("deterministic output across workers") {
    auto a = run("enumerate --q 5 --profile none --workers 1");
    auto b = run("enumerate --q 5 --profile none --workers 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("hilbert") {
    auto r = run("hilbert --q 9 --basket 2,2,2,5,7 --kmax 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("1/70") != std::string::npos);
    auto t = run("hilbert --q 7 --basket 2,6,10 --torsion 0,3,5 --kmax 7");
    CHECK(t.code == 0);
    CHECK(t.out.find("1/30") != std::string::npos);
    CHECK(run("hilbert --q 9 --basket 2,2,2,5,7 --kmax 0").code == 0);
    auto bad = run("hilbert --q 8 --basket 2,7");
    CHECK(bad.code == 3);
    CHECK(bad.err.find("coprimality") != std::string::npos);
    CHECK(run("hilbert --q 9 --basket 2,x").code == 2);
}

TEST_CASE("verify") {
    auto r = run("verify --table torsion-table");
    CHECK(r.code == 0);
    CHECK(r.out.find("9/9") != std::string::npos);
    CHECK(run("verify --cases 'index7/*'").code == 0);
    CHECK(run("verify --table no-such").code == 2);
    CHECK(run("verify --cases 'nope/*'").code == 4);
    CHECK(run("verify").code == 2);
    auto j = run("verify --table q11-table --json");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("verify writes a report file") {
    fs::path rep = scratch() / "report.json";
    auto r = run("verify --cases 'index8/*' --report '" + rep.string() + "'");
    CHECK(r.code == 0);
    CHECK(slurp(rep).find("\"pass\": true") != std::string::npos);
}

TEST_CASE("verify reports a mismatch with exit 1") {
    fs::path dir = scratch() / "data";
    fs::remove_all(dir);
    fs::copy(QFANO_TEST_DATA_DIR, dir, fs::copy_options::recursive);
    fs::path c = dir / "cases" / "v1" / "index9" / "r5.case";
    std::string text = slurp(c);
    text.replace(text.find("7,1"), 3, "5,1");
    std::ofstream(c) << text;
    CHECK(run("--data-dir '" + dir.string() + "' verify --cases 'index9/r5'").code == 1);
    CHECK(run("--data-dir '" + (scratch() / "none").string() + "' verify --cases '*'").code == 4);
}

TEST_CASE("link-solve") {
    auto none = run("link-solve --spec '" QFANO_TEST_DATA_DIR "/cases/v1/index13/r2.case'");
    CHECK(none.code == 0);
    CHECK(none.out.find("NO SOLUTIONS") != std::string::npos);
    auto one = run("link-solve --spec '" QFANO_TEST_DATA_DIR "/cases/v1/index9/r5.case'");
    CHECK(one.code == 0);
    CHECK(count(one.out, "\nq_hat") + (one.out.rfind("q_hat", 0) == 0) == 1);
    CHECK(one.out.find("MATCH") != std::string::npos);
    auto empty = run("link-solve --q 9 --k 5 --r 5 --bounds 's=3..2'");
    CHECK(empty.code == 0);
    CHECK(empty.out.find("NO SOLUTIONS") != std::string::npos);
    CHECK(run("link-solve --spec /nonexistent.case").code == 4);
    fs::path bad = scratch() / "bad.case";
    std::ofstream(bad) << "id = x\nkind = solve\nq = 9\nequation = k=zz\n";
    auto b = run("link-solve --spec '" + bad.string() + "'");
    CHECK(b.code == 2);
    CHECK(b.err.find(":4") != std::string::npos);
}

TEST_CASE("config file and manifest") {
    fs::path cfg = scratch() / "run.cfg";
    std::ofstream(cfg) << "# run\nformat = csv\nmode = torsion\n";
    fs::path man = scratch() / "manifest.json";
    auto r = run("--config '" + cfg.string() + "' --manifest '" + man.string() + "' enumerate --q 7");
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 3);
    std::string m1 = slurp(man);
    CHECK(m1.find("\"digest\": \"sha256:") != std::string::npos);
    CHECK(m1.find("\"tool_version\"") != std::string::npos);
    auto over = run("--config '" + cfg.string() + "' enumerate --q 7 --format json");
    CHECK(over.out.find("\"schema\"") != std::string::npos);
    run("--config '" + cfg.string() + "' --manifest '" + man.string() + "' enumerate --q 7");
    std::string m2 = slurp(man);
    auto digest = [](const std::string& s) { auto p = s.find("sha256:"); return s.substr(p, 71); };
    CHECK(digest(m1) == digest(m2));
    std::ofstream(cfg) << "colour = blue\n";
    CHECK(run("--config '" + cfg.string() + "' enumerate --q 7").code == 2);
}

TEST_CASE("version") {
    auto r = run("--version");
    CHECK(r.code == 0);
    CHECK(r.out.find("1.0.0") != std::string::npos);
}
