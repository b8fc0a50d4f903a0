#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "projlog/cli/commands.hpp"

using namespace projlog;
using namespace projlog::cli;

namespace {

RunConfig parse(std::vector<std::string> args)
{
    args.insert(args.begin(), "projlog");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return parse_config(static_cast<int>(argv.size()), argv.data());
}

std::string tmp(const std::string& name)
{
    return testing::TempDir() + "projlog_" + name;
}

void write_file(const std::string& path, const std::string& body)
{
    std::ofstream(path) << body;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + PROJLOG_CLI_PATH + " " + args;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string two_atoms = R"({"kind": "atomic", "points": [[0,0,0,0],[1,0,0,0]], "weights": [0.5,0.5]})";

} // namespace

TEST(ParseConfig, PotentialExample)
{
    const RunConfig c = parse({"potential", "--measure", "m.json", "--n", "2", "--eps", "0.1", "--grid", "-2:2:101",
                               "--out", "v.csv"});
    EXPECT_EQ(c.command, "potential");
    EXPECT_EQ(c.measure, "m.json");
    EXPECT_EQ(*c.n, 2);
    EXPECT_EQ(c.eps, 0.1);
    EXPECT_EQ(c.grid.lo, -2.0);
    EXPECT_EQ(c.grid.hi, 2.0);
    EXPECT_EQ(c.grid.count, 101);
    EXPECT_EQ(c.out, "v.csv");
    EXPECT_EQ(c.format, "csv");
}

TEST(ParseConfig, DerivativesNeedPositiveEps)
{
    try {
        parse({"--eps", "0", "ma-density", "--measure", "m.json"});
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("derivatives require eps > 0"), std::string::npos);
    }
}

TEST(ParseConfig, FlagOverridesConfigFile)
{
    const std::string cfg = tmp("cfg.json");
    write_file(cfg, R"({"seed": 5, "suite": "geometry"})");
    EXPECT_EQ(parse({"verify", "--config", cfg}).seed, 5u);
    const RunConfig c = parse({"verify", "--config", cfg, "--seed", "9"});
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.suite, "geometry");
}

TEST(ParseConfig, RejectsUnknownInput)
{
    EXPECT_THROW(parse({"constants", "--bogus", "1"}), ConfigError);
    EXPECT_THROW(parse({"frobnicate"}), ConfigError);
    EXPECT_THROW(parse({}), ConfigError);
    const std::string cfg = tmp("bad_cfg.json");
    write_file(cfg, R"({"sed": 5})");
    EXPECT_THROW(parse({"constants", "--config", cfg}), ConfigError);
    EXPECT_THROW(parse({"verify", "--suite", "nope"}), ConfigError);
    EXPECT_THROW(parse({"potential", "--measure", "m.json", "--grid", "2:-2:5"}), ConfigError);
    EXPECT_THROW(parse({"potential", "--measure", "m.json", "--n", "4"}), ConfigError);
    EXPECT_THROW(parse({"riesz", "--measure", "m.json"}), ConfigError);
    EXPECT_THROW(parse({"exponents", "--gamma", "1"}), ConfigError);
}

TEST(ParseConfig, FormatFollowsOutputExtension)
{
    EXPECT_EQ(parse({"constants", "--out", "c.json"}).format, "json");
    EXPECT_EQ(parse({"constants", "--out", "c.json", "--format", "csv"}).format, "csv");
}

TEST(MeasureSpec, AtomicAndFamily)
{
    const Measure a = io::parse_measure(io::json::parse(two_atoms));
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.ambient_dim(), 4);
    const Measure f = io::parse_measure(io::json::parse(
        R"({"kind": "family", "family": {"name": "segment", "dim": 4, "count": 100}, "seed": 7})"));
    EXPECT_EQ(f.size(), 100u);
    EXPECT_EQ(f.kind(), MeasureKind::sample_cloud);
}

TEST(MeasureSpec, RejectsUnknownFields)
{
    EXPECT_THROW(io::parse_measure(io::json::parse(R"({"kind": "atomic", "points": [[0,0]], "colour": 1})")),
                 construction_error);
    EXPECT_THROW(io::parse_measure(io::json::parse(
                     R"({"kind": "family", "family": {"name": "segment", "wobble": 2}})")),
                 construction_error);
    EXPECT_THROW(io::parse_measure(io::json::parse(R"({"kind": "blob"})")), construction_error);
}

TEST(Table, NonFiniteValuesAreStrings)
{
    io::Table t;
    t.schema = "test.v1";
    t.columns = {"a", "b"};
    t.add_row({std::numeric_limits<double>::infinity(), 0.1});
    std::ostringstream csv, js;
    io::write_csv(t, csv);
    EXPECT_EQ(csv.str(), "a,b\ninf,0.10000000000000001\n");
    io::write_json(t, js);
    EXPECT_NE(js.str().find("\"a\": \"inf\""), std::string::npos);
    EXPECT_THROW(t.add_row({1.0}), construction_error);
}

TEST(Binary, VerifyGeometryPasses)
{
    const std::string out = tmp("verify_geometry.txt");
    EXPECT_EQ(run_cli("verify --suite geometry --seed 1 --out " + out), 0);
    const std::string report = read_file(out);
    EXPECT_NE(report.find("PASS  1 lagrange_identities"), std::string::npos) << report;
    EXPECT_NE(report.find("summary: 1/1 passed"), std::string::npos);
}

TEST(Binary, ExitCodes)
{
    const std::string err = tmp("stderr.txt");
    EXPECT_EQ(run_cli("verify --suite nope 2>" + err), 2);
    const std::string m = tmp("m.json");
    write_file(m, two_atoms);
    EXPECT_EQ(run_cli("--eps 0 ma-density --measure " + m + " 2>" + err), 2);
    const std::string msg = read_file(err);
    EXPECT_NE(msg.find("derivatives require eps > 0"), std::string::npos);
    EXPECT_EQ(std::count(msg.begin(), msg.end(), '\n'), 1);
    EXPECT_EQ(run_cli("constants >/dev/null"), 0);
}

TEST(Binary, OutputIsIndependentOfThreadCount)
{
    const std::string m = tmp("m2.json");
    write_file(m, two_atoms);
    const std::string a = tmp("ma_1.csv"), b = tmp("ma_3.csv");
    ASSERT_EQ(run_cli("ma-density --measure " + m + " --eps 0.1 --grid -2:2:41 --out " + a, "PROJLOG_THREADS=1"), 0);
    ASSERT_EQ(run_cli("ma-density --measure " + m + " --eps 0.1 --grid -2:2:41 --out " + b, "PROJLOG_THREADS=3"), 0);
    const std::string sa = read_file(a);
    EXPECT_EQ(sa, read_file(b));
    EXPECT_EQ(sa.substr(0, sa.find('\n')), "x0,x1,x2,x3,value,grad_norm,ma_density,clamped");
    EXPECT_EQ(std::count(sa.begin(), sa.end(), '\n'), 41 * 41 + 1);
}

TEST(Commands, ExponentsAndConstantsTables)
{
    RunConfig c = parse({"exponents", "--gamma", "0", "--n", "2"});
    std::ostringstream out, diag;
    EXPECT_EQ(run_command(c, out, diag), 0);
    EXPECT_EQ(out.str(), "gamma,n,N,p1_star,alpha_star,p2_star,q_star,alpha,riesz_p_star\n0,2,4,4,0,2,1,nan,nan\n");
    c = parse({"constants", "--n", "1"});
    std::ostringstream out2;
    EXPECT_EQ(run_command(c, out2, diag), 0);
    EXPECT_NE(out2.str().find("\n1,0.63661977236758"), std::string::npos) << out2.str();
}

TEST(Commands, PotentialKinds)
{
    const std::string m = tmp("m3.json");
    write_file(m, two_atoms);
    for (const char* kind : {"U", "V", "G"}) {
        RunConfig c = parse({"potential", "--measure", m, "--kind", kind, "--grid", "-1:1:3"});
        std::ostringstream out, diag;
        EXPECT_EQ(run_command(c, out, diag), 0);
        // the middle node is the atom at the origin
        EXPECT_NE(out.str().find("0,0,0,0,-inf"), std::string::npos) << kind << "\n" << out.str();
    }
    EXPECT_THROW(parse({"potential", "--measure", m, "--kind", "G", "--eps", "0.1"}), ConfigError);
}

TEST(Binary, ShippedExamplesRun)
{
    const std::string data = PROJLOG_DATA_DIR;
    for (const char* m : {"two_atoms_c2", "segment_c2", "square_r2", "cantor_r1"})
        EXPECT_EQ(run_cli("dimension --measure " + data + "/" + m + ".json --radii 0.05:0.1:3 >/dev/null"), 0) << m;
    const std::string out = tmp("example_potential.csv");
    EXPECT_EQ(run_cli("potential --config " + data + "/potential_config.json --measure " + data +
                      "/two_atoms_c2.json --grid -1:1:5 --out " + out),
              0);
    const std::string s = read_file(out);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 26);
}
