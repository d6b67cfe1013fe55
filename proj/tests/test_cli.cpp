#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("bcj_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path write_config(const json& j, const std::string& name = "cfg.json")
    {
        fs::path p = dir / name;
        std::ofstream(p) << j.dump();
        return p;
    }

    Outcome run(const std::string& args, const fs::path& out)
    {
        fs::create_directories(out);
        fs::path log = dir / "stdout.txt";
        std::string cmd = std::string(BCJ_CLI_PATH) + " " + args + " --out " + out.string() + " > " + log.string() + " 2>/dev/null";
        int status = std::system(cmd.c_str());
        std::ifstream in(log);
        std::stringstream ss;
        ss << in.rdbuf();
        return {WEXITSTATUS(status), ss.str()};
    }

    static std::string slurp(const fs::path& p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir;
};

}  // namespace

TEST_F(Cli, ResponseOfFreeSystem)
{
    auto cfg = write_config({{"command", "response"}, {"T", 5}, {"spec", "free"}});
    auto r = run("--config " + cfg.string(), dir / "a");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(slurp(dir / "a" / "response.csv"), "t,r\n0,1\n1,0\n2,0\n3,0\n4,0\n");
    auto side = json::parse(slurp(dir / "a" / "response.json"));
    EXPECT_TRUE(side.contains("config_hash"));
    auto manifest = json::parse(r.out);
    EXPECT_TRUE(manifest.at("ok").get<bool>());
}

TEST_F(Cli, OutputIsDeterministic)
{
    auto cfg = write_config({{"command", "roundtrip"}, {"N", 10}});
    auto a = run("--config " + cfg.string() + " --seed 7", dir / "a");
    auto b = run("--config " + cfg.string() + " --seed 7", dir / "b");
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(slurp(dir / "a" / "roundtrip.json"), slurp(dir / "b" / "roundtrip.json"));
}

TEST_F(Cli, TodaColumns)
{
    auto cfg = write_config({{"command", "toda"},
                             {"spec", {{"a0", 1.0}, {"a", {1.0}}, {"b", {0.0, 0.0}}}},
                             {"times", {0.0, 0.5}}});
    auto r = run("--config " + cfg.string(), dir / "t");
    ASSERT_EQ(r.code, 0) << r.out;
    auto csv = slurp(dir / "t" / "toda.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,k,a_k,b_k,da_oracle,db_oracle");
}

TEST_F(Cli, InadmissibleResponseExitsOne)
{
    auto cfg = write_config({{"command", "invert"}, {"r", {1, 1, 0, 0, -1}}, {"T", 3}});
    auto r = run("--config " + cfg.string(), dir / "i");
    EXPECT_EQ(r.code, 1);
    auto out = json::parse(slurp(dir / "i" / "invert.json"));
    EXPECT_FALSE(out.at("verdict").at("admissible").get<bool>());
}

TEST_F(Cli, SchemaErrorsExitTwo)
{
    EXPECT_EQ(run("nosuchcommand", dir / "x").code, 2);
    auto cfg = write_config({{"command", "response"}, {"T", 3}});
    EXPECT_EQ(run("--config " + cfg.string(), dir / "y").code, 2);
    auto bad = write_config({{"command", "response"}, {"T", 3}, {"spec", "free"}, {"bc", "neumann"}}, "bad.json");
    EXPECT_EQ(run("--config " + bad.string(), dir / "z").code, 2);
}

TEST_F(Cli, VerifyFilter)
{
    auto r = run("verify --filter toda", dir / "v");
    ASSERT_EQ(r.code, 0) << r.out;
    auto rep = json::parse(slurp(dir / "v" / "verify_report.json"));
    ASSERT_EQ(rep.at("criteria").size(), 1u);
    EXPECT_EQ(rep.at("criteria")[0].at("tag"), "toda");
    EXPECT_EQ(run("verify --filter nothing", dir / "w").code, 2);
}

TEST_F(Cli, GraphFieldAndEnergyLog)
{
    json graph = {{"vertices", {{{"id", 0}, {"boundary", true}}, {{"id", 1}, {"boundary", true}}}},
                  {"edges", {{{"from", 0}, {"to", 1}, {"n_interior", 20}}}}};
    auto cfg = write_config({{"command", "graph"}, {"graph", graph}, {"T", 10}, {"controls", {{"0", {0.0, 1.0}}}}});
    auto r = run("--config " + cfg.string(), dir / "g");
    ASSERT_EQ(r.code, 0) << r.out;
    auto field = slurp(dir / "g" / "graph_field.csv");
    EXPECT_EQ(field.substr(0, field.find('\n')), "t,edge,j,u");
    EXPECT_NE(field.find("\n5,0,4,1\n"), std::string::npos);
    auto energy = slurp(dir / "g" / "graph_energy.csv");
    EXPECT_NE(energy.find("\n6,1,1,2,"), std::string::npos);
    EXPECT_TRUE(json::parse(slurp(dir / "g" / "graph_energy.json")).contains("config_hash"));

    auto bad = write_config({{"command", "graph"}, {"graph", graph}, {"T", 10}, {"controls", {{"x", {1.0}}}}}, "bad.json");
    EXPECT_EQ(run("--config " + bad.string(), dir / "h").code, 2);
}
