#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "proxemb_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

RunResult run(const std::string& args) {
    fs::path so = scratch() / "last_stdout.txt";
    fs::path se = scratch() / "last_stderr.txt";
    std::string cmd = std::string(PROXEMB_BIN) + " " + args + " >" +
                      so.string() + " 2>" + se.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status))
        r.code = WEXITSTATUS(status);
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

int data_lines(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    int n = 0;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#')
            ++n;
    return n;
}

} // namespace

TEST_CASE("help exits zero and lists the subcommands") {
    RunResult r = run("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("node-embed") != std::string::npos);
    CHECK(r.out.find("sweep") != std::string::npos);
    CHECK(r.out.find("diagnose") != std::string::npos);
}

TEST_CASE("synth, node-embed, eval round trip") {
    fs::path g = scratch() / "house.edg";
    fs::path roles = scratch() / "house_roles.csv";
    RunResult sy = run("synth --shape house --out " + g.string() +
                       " --roles-out " + roles.string());
    CHECK(sy.code == 0);
    CHECK(sy.out.find("55 nodes, 65 edges") != std::string::npos);
    CHECK(slurp(roles).find("node,role,role_name,orbit") != std::string::npos);
    CHECK(data_lines(slurp(roles)) == 55);

    fs::path emb = scratch() / "house_emb.csv";
    RunResult ne = run("--set proximity=ppr --set proximity.beta=0.01"
                       " --set embedding=cfs --set embedding.dim=50"
                       " node-embed --graph " + g.string() + " --out " +
                       emb.string());
    CHECK(ne.code == 0);
    CHECK(ne.out.find("(55 x 50)") != std::string::npos);
    std::string csv = slurp(emb);
    CHECK(data_lines(csv) == 55);
    CHECK(csv.find("blocks = ppr(beta=0.01,use_transition=0)+identity") !=
          std::string::npos);

    fs::path json_path = scratch() / "metrics.json";
    RunResult ev = run("eval --emb " + emb.string() + " --labels " +
                       roles.string() + " --task cluster --json " +
                       json_path.string());
    CHECK(ev.code == 0);
    CHECK(ev.out.find("homogeneity = 1") != std::string::npos);
    auto j = nlohmann::json::parse(slurp(json_path));
    CHECK(j["task"] == "cluster");
    CHECK(j["k"] == 6);
    CHECK(j["homogeneity"].get<double>() == 1.0);
    CHECK(j["completeness"].get<double>() == 1.0);
    CHECK(j["silhouette"].get<double>() > 0.9);

    RunResult ec = run("eval --emb " + emb.string() + " --labels " +
                       roles.string() + " --task classify --seed 3");
    CHECK(ec.code == 0);
    CHECK(ec.out.find("micro_f1 = ") != std::string::npos);
    CHECK(ec.out.find("train_size = 44") != std::string::npos);
}

TEST_CASE("node-embed output is byte deterministic") {
    fs::path g = scratch() / "det.edg";
    RunResult sy = run("synth --shape fan --cycle-len 12 --n-shapes 3 --out " +
                       g.string());
    REQUIRE(sy.code == 0);
    fs::path e1 = scratch() / "det1.csv";
    fs::path e2 = scratch() / "det2.csv";
    std::string cfg = " --set proximity=heat --set proximity.s=0.5"
                      " --set embedding=svd --set embedding.dim=8 ";
    CHECK(run(cfg + "node-embed --graph " + g.string() + " --out " +
              e1.string()).code == 0);
    CHECK(run(cfg + "node-embed --graph " + g.string() + " --out " +
              e2.string()).code == 0);
    std::string b1 = slurp(e1), b2 = slurp(e2);
    CHECK(!b1.empty());
    CHECK(b1 == b2);
}

TEST_CASE("oversized svd width is clipped with a warning") {
    fs::path g = scratch() / "small.edg";
    spit(g, "0 1\n1 2\n");
    fs::path e = scratch() / "small_emb.csv";
    RunResult r = run("node-embed --graph " + g.string() + " --out " +
                      e.string());
    CHECK(r.code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
    CHECK(r.err.find("clipped") != std::string::npos);
    CHECK(r.out.find("(3 x 3)") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage, data and numerical failures") {
    RunResult usage = run("node-embed --no-such-flag");
    CHECK(usage.code == 1);

    RunResult missing = run("node-embed --graph " +
                            (scratch() / "absent.edg").string() + " --out " +
                            (scratch() / "x.csv").string());
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error:") != std::string::npos);

    fs::path tri = scratch() / "tri.edg";
    spit(tri, "0 1\n1 2\n0 2\n");
    RunResult diverge = run("--set proximity=ppr --set proximity.beta=0.9"
                            " node-embed --graph " + tri.string() + " --out " +
                            (scratch() / "y.csv").string());
    CHECK(diverge.code == 3);
    CHECK(diverge.err.find("numerical error:") != std::string::npos);
    CHECK(diverge.err.find("spectral_radius") != std::string::npos);

    RunResult bad_set = run("--set proximity node-embed --graph " +
                            tri.string() + " --out " +
                            (scratch() / "z.csv").string());
    CHECK(bad_set.code == 2);
    CHECK(bad_set.err.find("key=value") != std::string::npos);

    RunResult bad_key = run("--set no.such.key=1 node-embed --graph " +
                            tri.string() + " --out " +
                            (scratch() / "z.csv").string());
    CHECK(bad_key.code == 2);
}

TEST_CASE("config file and --set overrides produce identical output") {
    fs::path g = scratch() / "cfg.edg";
    spit(g, "0 1\n1 2\n2 3\n3 0\n0 2\n");
    fs::path cfile = scratch() / "pipeline.cfg";
    spit(cfile, "# comment line\n"
                "proximity = heat\n"
                "proximity.s = 0.7\n"
                "filter = log\n"
                "embedding = cfs\n"
                "embedding.dim = 12\n");
    fs::path e1 = scratch() / "cfg1.csv";
    fs::path e2 = scratch() / "cfg2.csv";
    CHECK(run("--config " + cfile.string() + " node-embed --graph " +
              g.string() + " --out " + e1.string()).code == 0);
    CHECK(run("--set proximity=heat --set proximity.s=0.7 --set filter=log"
              " --set embedding=cfs --set embedding.dim=12"
              " node-embed --graph " + g.string() + " --out " +
              e2.string()).code == 0);
    CHECK(slurp(e1) == slurp(e2));

    // a later --set wins over the file
    fs::path e3 = scratch() / "cfg3.csv";
    CHECK(run("--config " + cfile.string() + " --set proximity.s=0.9"
              " node-embed --graph " + g.string() + " --out " +
              e3.string()).code == 0);
    CHECK(slurp(e3).find("proximity.s = 0.9") != std::string::npos);
}

TEST_CASE("sweep covers the full operator / filter grid") {
    fs::path g = scratch() / "sweep.edg";
    fs::path roles = scratch() / "sweep_roles.csv";
    REQUIRE(run("synth --shape house --cycle-len 10 --n-shapes 3 --out " +
                g.string() + " --roles-out " + roles.string()).code == 0);

    fs::path table = scratch() / "sweep.csv";
    RunResult sw = run("--set embedding.dim=8 sweep --graph " + g.string() +
                       " --labels " + roles.string() +
                       " --task cluster --out " + table.string());
    CHECK(sw.code == 0);
    CHECK(sw.out.find("35 cells") != std::string::npos);
    std::string text = slurp(table);
    CHECK(data_lines(text) == 35);
    CHECK(text.find("# columns: proximity,filter,homogeneity,completeness,"
                    "rank,error") != std::string::npos);
    CHECK(text.find("# aggregate proximity ppmi:") != std::string::npos);
    CHECK(text.find("# aggregate filter bin95:") != std::string::npos);

    // every cell succeeded on this graph: empty error field throughout
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#')
            CHECK(line.back() == ',');

    SUBCASE("order sweep replaces the filter axis with walk length") {
        fs::path t2 = scratch() / "order.csv";
        RunResult os = run("--set embedding.dim=8 sweep --graph " + g.string() +
                           " --labels " + roles.string() +
                           " --task cluster --order-sweep 3 --out " +
                           t2.string());
        CHECK(os.code == 0);
        std::string body = slurp(t2);
        CHECK(data_lines(body) == 6);
        CHECK(body.find("# aggregate k 3:") != std::string::npos);
        CHECK(body.find("adj_power,1,") != std::string::npos);
        CHECK(body.find("rw_power,3,") != std::string::npos);
    }
}

TEST_CASE("diagnose writes one row-stats table per combination") {
    fs::path g = scratch() / "diag.edg";
    spit(g, "0 1\n1 2\n2 3\n3 4\n4 0\n1 3\n");
    fs::path dir = scratch() / "diag_out";
    RunResult dg = run("diagnose --graph " + g.string() + " --out " +
                       dir.string());
    CHECK(dg.code == 0);
    CHECK(fs::exists(dir / "histograms.csv"));
    int tables = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("rowstats_", 0) == 0)
            ++tables;
    }
    CHECK(tables == 35);
    std::string rs = slurp(dir / "rowstats_rw_power_identity.csv");
    CHECK(rs.find("columns: node,sum,variance,entropy,near_zero") !=
          std::string::npos);
    CHECK(data_lines(rs) == 5);
}

TEST_CASE("graph-embed stacks one feature row per graph") {
    fs::path a = scratch() / "ga.edg";
    fs::path b = scratch() / "gb.edg";
    spit(a, "0 1\n1 2\n");
    spit(b, "0 1\n1 2\n0 2\n");
    fs::path out = scratch() / "gset.csv";
    std::string cfg = "--set proximity=rw_power --set embedding=cfs"
                      " --set embedding.dim=6 ";
    RunResult ge = run(cfg + "graph-embed --graph " + a.string() +
                       " --graph " + b.string() + " --out " + out.string());
    CHECK(ge.code == 0);
    CHECK(ge.out.find("(2 x 6)") != std::string::npos);
    std::string csv = slurp(out);
    CHECK(data_lines(csv) == 2);
    CHECK(csv.find(a.string()) != std::string::npos);

    SUBCASE("a list file works like repeated --graph") {
        fs::path list = scratch() / "graphs.txt";
        spit(list, a.string() + "\n" + b.string() + "\n");
        fs::path out2 = scratch() / "gset2.csv";
        RunResult gl = run(cfg + "graph-embed --list " + list.string() +
                           " --out " + out2.string());
        CHECK(gl.code == 0);
        CHECK(slurp(out2) == csv);
    }

    SUBCASE("svd features are rejected") {
        RunResult bad = run("graph-embed --graph " + a.string() + " --graph " +
                            b.string() + " --out " + out.string());
        CHECK(bad.code == 2);
        CHECK(bad.err.find("basis-free") != std::string::npos);
    }

    SUBCASE("no graphs at all is a usage-level data error") {
        RunResult none = run("graph-embed --out " + out.string());
        CHECK(none.code == 2);
    }
}
