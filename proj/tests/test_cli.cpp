#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace {

using kicolor::cli::Json;

const std::string data_dir = KICOLOR_DATA_DIR;
const std::string golden_dir = KICOLOR_GOLDEN_DIR;

struct Run
{
    int code;
    std::string out;
    std::string err;
};

auto run(std::vector<std::string> args) -> Run
{
    std::ostringstream out, err;
    const int code = kicolor::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

auto data(const std::string & name) -> std::string { return data_dir + "/" + name; }

auto structured(std::vector<std::string> args) -> Json
{
    args.push_back("--format");
    args.push_back("structured");
    auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    auto doc = Json::parse(r.out);
    EXPECT_TRUE(doc.contains("wall_time_seconds"));
    doc.erase("wall_time_seconds");
    return doc;
}

/// Compares against tests/golden/<name>.json; KICOLOR_UPDATE_GOLDEN=1 rewrites it.
auto check_golden(const std::string & name, const Json & doc) -> void
{
    const auto path = golden_dir + "/" + name + ".json";
    const auto text = doc.dump(2) + "\n";
    if (std::getenv("KICOLOR_UPDATE_GOLDEN")) {
        std::ofstream(path) << text;
        return;
    }
    std::ifstream in(path);
    ASSERT_TRUE(in) << "missing golden file " << path;
    std::stringstream want;
    want << in.rdbuf();
    EXPECT_EQ(text, want.str()) << name;
}

} // namespace

TEST(Cli, DecidePetersen)
{
    auto doc = structured({"decide", "--q", "5", "--k", "2", "--i", "0", "--graph", data("petersen.col")});
    EXPECT_EQ(doc["answer"], true);
    EXPECT_EQ(doc["fvs"]["vertices"].size(), 3u);
    check_golden("decide_petersen", doc);
    auto no = structured({"decide", "--q", "4", "--k", "2", "--i", "0", "--graph", data("petersen.col")});
    EXPECT_EQ(no["answer"], false);
}

TEST(Cli, ChromaticPath)
{
    auto doc = structured({"chromatic", "--k", "2", "--i", "1", "--graph", data("path3.col")});
    EXPECT_EQ(doc["answer"], 3);
    check_golden("chromatic_path3", doc);
}

TEST(Cli, CountEdge)
{
    auto doc = structured({"count", "--q", "3", "--k", "1", "--i", "0", "--graph", data("edge.col")});
    EXPECT_EQ(doc["answer"], "6");
    check_golden("count_edge", doc);
}

TEST(Cli, ExtractWithReplayedFvs)
{
    auto doc = structured({"extract", "--q", "2", "--k", "1", "--i", "0", "--graph", data("c4.col"),
                           "--fvs-file", data("c4.fvs")});
    EXPECT_EQ(doc["answer"], true);
    EXPECT_EQ(doc["fvs"]["method"], "user-supplied");
    check_golden("extract_c4", doc);

    const auto tmp = std::filesystem::temp_directory_path() / "kicolor_extract_c4.txt";
    auto r = run({"extract", "--q", "2", "--k", "1", "--i", "0", "--graph", data("c4.col"), "--out",
                  tmp.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto v = run({"verify", "--q", "2", "--k", "1", "--i", "0", "--graph", data("c4.col"), "--coloring",
                  tmp.string()});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("answer: true"), std::string::npos) << v.out;
    std::filesystem::remove(tmp);
}

TEST(Cli, Verify)
{
    auto doc = structured({"verify", "--q", "3", "--k", "1", "--i", "0", "--graph", data("k3.col"), "--coloring",
                           data("k3_rgb.txt")});
    EXPECT_EQ(doc["answer"], true);
    check_golden("verify_k3", doc);
    auto bad = structured({"verify", "--q", "3", "--k", "1", "--i", "0", "--graph", data("k3.col"), "--coloring",
                           data("k3_bad.txt")});
    EXPECT_EQ(bad["answer"], false);
    EXPECT_EQ(run({"verify", "--q", "3", "--k", "1", "--i", "0", "--graph", data("edge.col"), "--coloring",
                   data("k3_rgb.txt")})
                  .code,
              2);
}

TEST(Cli, FvsKneserKk1Oracle)
{
    auto fvs = structured({"fvs", "--graph", data("petersen.col")});
    EXPECT_EQ(fvs["answer"], 3);
    EXPECT_EQ(fvs["fvs"]["method"], "exact");
    check_golden("fvs_petersen", fvs);

    auto greedy = structured({"fvs", "--graph", data("petersen.col"), "--method", "greedy"});
    EXPECT_EQ(greedy["fvs"]["method"], "greedy");

    auto kn = structured({"kneser", "--r", "5", "--k", "2"});
    EXPECT_EQ(kn["answer"]["vertices"], 10);
    EXPECT_EQ(kn["answer"]["edges"], 15);
    check_golden("kneser_5_2", kn);

    auto kk = structured({"kk1", "--k", "2", "--graph", data("c5.col")});
    EXPECT_EQ(kk["answer"]["chi"], 3);
    EXPECT_EQ(kk["answer"]["q_kk1"], 3);
    check_golden("kk1_c5", kk);

    auto mis = structured({"oracle", "--mode", "mis", "--graph", data("petersen.col")});
    EXPECT_EQ(mis["answer"], 4);
    check_golden("oracle_mis_petersen", mis);

    auto oc = structured({"oracle", "--mode", "count", "--q", "5", "--k", "2", "--i", "0", "--graph",
                          data("petersen.col")});
    EXPECT_EQ(oc["answer"], "120");
}

TEST(Cli, Gadget)
{
    auto doc = structured({"gadget", "--k", "1", "--i", "1", "--cnf", data("clause3.cnf")});
    EXPECT_EQ(doc["answer"]["q"], 3);
    EXPECT_EQ(doc["answer"]["vertices"], 15);
    EXPECT_EQ(doc["answer"]["formula_vertex_count"], 15);
    check_golden("gadget_clause3", doc);

    const auto base = (std::filesystem::temp_directory_path() / "kicolor_gadget").string();
    auto r = run({"gadget", "--k", "1", "--i", "1", "--cnf", data("unsat1.cnf"), "--out", base});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(base + ".roles"));
    auto d = structured({"decide", "--q", "3", "--k", "1", "--i", "0", "--graph", base});
    EXPECT_EQ(d["answer"], false);
    std::filesystem::remove(base);
    std::filesystem::remove(base + ".roles");
}

TEST(Cli, ThreadsDoNotChangeAnswers)
{
    for (const auto * sub : {"count", "decide"}) {
        auto one = structured({sub, "--q", "5", "--k", "2", "--i", "0", "--graph", data("petersen.col"),
                               "--threads", "1"});
        auto four = structured({sub, "--q", "5", "--k", "2", "--i", "0", "--graph", data("petersen.col"),
                                "--threads", "4"});
        EXPECT_EQ(one, four);
    }
}

TEST(Cli, TextFormat)
{
    auto r = run({"count", "--q", "3", "--k", "1", "--i", "0", "--graph", data("edge.col")});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("subcommand: count\n"), std::string::npos);
    EXPECT_NE(r.out.find("answer: 6\n"), std::string::npos);
    EXPECT_NE(r.out.find("input_digest: sha256:"), std::string::npos);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"decide", "--graph", data("edge.col")}).code, 2);
    EXPECT_EQ(run({"decide", "--q", "3", "--k", "1", "--i", "0", "--graph", data("missing.col")}).code, 2);
    EXPECT_EQ(run({"decide", "--q", "65", "--k", "1", "--i", "0", "--graph", data("edge.col")}).code, 2);
    EXPECT_EQ(run({"gadget", "--k", "1", "--i", "1", "--cnf", data("edge.col")}).code, 2);
    auto budget = run({"oracle", "--mode", "count", "--q", "5", "--k", "2", "--i", "0", "--graph",
                       data("petersen.col"), "--budget", "10"});
    EXPECT_EQ(budget.code, 3);
    EXPECT_NE(budget.err.find("budget"), std::string::npos);
    EXPECT_EQ(run({"decide", "--q", "2", "--k", "1", "--i", "0", "--graph", data("k3.col")}).code, 0);
    EXPECT_EQ(run({"decide", "--help"}).code, 0);
}
