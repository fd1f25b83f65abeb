#include <nicg/cli.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nicg;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args)
{
    args.insert(args.begin(), "nicg_lab");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() / ("nicg_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_"
                                             + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string &name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

void write(const std::string &path, const std::string &text)
{
    std::ofstream(path) << text;
}

/// Drops every "elapsed_ms" member so timing does not affect comparisons.
Json strip_timing(Json j)
{
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto &[k, v] : j.items())
            v = strip_timing(v);
    } else if (j.is_array()) {
        for (auto &v : j)
            v = strip_timing(v);
    }
    return j;
}

} // namespace

TEST(VectorStrings, ComponentOneFirst)
{
    const Dim d(3);
    EXPECT_EQ(vec_to_string(d, make_vec(d, {1, 1, 0}).mask), "110");
    EXPECT_EQ(vec_from_string(d, "011"), make_vec(d, {0, 1, 1}).mask);
    EXPECT_THROW(vec_from_string(d, "01"), InvalidInput);
    EXPECT_THROW(vec_from_string(d, "0a1"), InvalidInput);
}

TEST(SolutionFile, RoundTrip)
{
    TempDir tmp;
    const auto x = fixtures::reference_witness(5);
    SearchOutcome o;
    o.best_cardinality = 7;
    o.witnesses = {x};
    o.exact = true;
    save_solution_file(Dim(5), o, tmp.file("w.json"));
    const auto back = load_solution_file(tmp.file("w.json"));
    ASSERT_EQ(back.size(), 1U);
    EXPECT_EQ(back[0], x);
    EXPECT_FALSE(fs::exists(tmp.file("w.json.tmp")));
}

TEST(SolutionFile, AcceptedShapes)
{
    const auto one = solution_to_json(fixtures::reference_witness(3), SolutionMeta{});
    EXPECT_EQ(solutions_from_json(one).size(), 1U);
    EXPECT_EQ(solutions_from_json(Json::array({one, one})).size(), 2U);
    EXPECT_EQ(solutions_from_json(Json{{"solutions", Json::array({one})}}).size(), 1U);
    EXPECT_THROW(solutions_from_json(Json(3)), InvalidInput);
}

TEST(SolutionFile, Rejections)
{
    auto j = solution_to_json(fixtures::reference_witness(3), SolutionMeta{});
    auto bad_len = j;
    bad_len["vectors"][0] = "11";
    EXPECT_THROW(solution_from_json(bad_len), InvalidInput);
    auto dup = j;
    dup["vectors"][1] = dup["vectors"][0];
    EXPECT_THROW(solution_from_json(dup), InvalidInput);
    auto zero = j;
    zero["vectors"][0] = "000";
    EXPECT_THROW(solution_from_json(zero), InvalidInput);
    auto sum = j;
    sum["sum"][0] = 9;
    EXPECT_THROW(solution_from_json(sum), InvalidInput);
    EXPECT_NO_THROW(solution_from_json(sum, "x", false));
    auto missing = j;
    missing.erase("dim");
    EXPECT_THROW(solution_from_json(missing), InvalidInput);
}

TEST(Checkpoint, RoundTripAndTruncation)
{
    TempDir tmp;
    SearchConfig cfg;
    cfg.dim = Dim(4);
    cfg.mode = Mode::enumerate_all_max;
    cfg.prune = Prune::canonical;
    std::optional<SearchSnapshot> snap;
    cfg.budget.max_nodes = 40;
    cfg.on_checkpoint = [&](const SearchSnapshot &s) { snap = s; };
    (void)solve_dfs(cfg);
    ASSERT_TRUE(snap);
    const auto path = tmp.file("ck.json");
    save_checkpoint(path, cfg, *snap);
    const auto back = load_checkpoint(path, cfg);
    EXPECT_EQ(back.frontier, snap->frontier);
    EXPECT_EQ(back.witnesses, snap->witnesses);
    EXPECT_EQ(back.visited, snap->visited);
    EXPECT_EQ(back.stats.nodes_visited, snap->stats.nodes_visited);

    const auto text = read_text_file(path);
    write(tmp.file("cut.json"), text.substr(0, text.size() / 2));
    EXPECT_THROW(load_checkpoint(tmp.file("cut.json"), cfg), InvalidInput);

    auto other = cfg;
    other.prune = Prune::weak;
    EXPECT_THROW(load_checkpoint(path, other), InvalidInput);
}

TEST(Cli, ExactDimFour)
{
    const auto r = run({"exact", "--dim", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["n"], 5);
    EXPECT_GE(j["solutions"].size(), 1U);
    const auto b = run({"exact", "--dim", "4", "--strategy", "binary", "--prune", "canonical", "--nicg", "removal"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(Json::parse(b.out)["n"], 5);
}

TEST(Cli, ExistsExitCodes)
{
    const auto no = run({"exists", "--dim", "5", "--size", "8"});
    EXPECT_EQ(no.code, 1);
    const auto j = Json::parse(no.out);
    EXPECT_EQ(j["exists"], false);
    EXPECT_EQ(j["exact"], true);
    const auto yes = run({"exists", "--dim", "4", "--size", "3", "--restrict", "comp=1,bit=1"});
    EXPECT_EQ(yes.code, 0);
    for (const auto &v : Json::parse(yes.out)["solutions"][0]["vectors"])
        EXPECT_EQ(v.get<std::string>()[0], '1');
    EXPECT_EQ(run({"exists", "--dim", "5", "--size", "8", "--max-nodes", "3"}).code, 3);
    EXPECT_EQ(run({"exists", "--dim", "3", "--size", "9"}).code, 2);
    EXPECT_EQ(run({"exists", "--dim", "3", "--size", "2", "--restrict", "comp=4,bit=1"}).code, 2);
    EXPECT_EQ(run({"exists", "--dim", "3", "--size", "2", "--restrict", "banana"}).code, 2);
}

TEST(Cli, InvalidArguments)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"exact"}).code, 2);
    EXPECT_EQ(run({"exact", "--dim", "0"}).code, 2);
    EXPECT_EQ(run({"exact", "--dim", "3", "--prune", "sometimes"}).code, 2);
    EXPECT_EQ(run({"verify", "--input", "/nonexistent/file.json"}).code, 2);
    EXPECT_EQ(run({"upper", "--dim", "4", "--variant", "two-zeros"}).code, 2);
}

TEST(Cli, VerifyReferenceAndTampered)
{
    TempDir tmp;
    Json all = Json::array();
    for (int d = 1; d <= 6; ++d)
        all.push_back(solution_to_json(fixtures::reference_witness(d), SolutionMeta{}));
    write(tmp.file("ok.json"), all.dump());
    const auto ok = run({"verify", "--input", tmp.file("ok.json")});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(Json::parse(ok.out)["count"], 6);

    auto bad = solution_to_json(VecSet(Dim(2), {1, 2, 3}), SolutionMeta{});
    write(tmp.file("bad.json"), bad.dump());
    EXPECT_EQ(run({"verify", "--input", tmp.file("bad.json")}).code, 1);

    auto wrong_sum = solution_to_json(fixtures::reference_witness(4), SolutionMeta{});
    wrong_sum["sum"][0] = 1;
    write(tmp.file("sum.json"), wrong_sum.dump());
    EXPECT_EQ(run({"verify", "--input", tmp.file("sum.json")}).code, 1);

    write(tmp.file("garbage.json"), "{\"dim\": 3, \"vectors\": [\"11\"]}");
    const auto g = run({"verify", "--input", tmp.file("garbage.json")});
    EXPECT_EQ(g.code, 2);
    EXPECT_NE(g.err.find("vectors[0]"), std::string::npos);
}

TEST(Cli, VerifyAcceptsOwnOutput)
{
    TempDir tmp;
    ASSERT_EQ(run({"exact", "--dim", "4", "--out", tmp.file("e.json")}).code, 0);
    EXPECT_EQ(run({"verify", "--input", tmp.file("e.json")}).code, 0);
    ASSERT_EQ(run({"lower", "--dim", "5", "--seed", "3", "--max-nodes", "2000", "--out", tmp.file("l.json")}).code, 0);
    EXPECT_EQ(run({"verify", "--input", tmp.file("l.json")}).code, 0);
    ASSERT_EQ(run({"upper", "--dim", "4", "--method", "decomposition", "--prev", "3", "--out", tmp.file("u.json")}).code, 0);
    EXPECT_EQ(run({"verify", "--input", tmp.file("u.json")}).code, 0);
}

TEST(Cli, CanonDedups)
{
    TempDir tmp;
    const auto x = fixtures::reference_witness(4);
    const auto y = apply_perm_set(Permutation({3, 2, 1, 0}), x);
    write(tmp.file("c.json"),
          Json::array({solution_to_json(x, SolutionMeta{}), solution_to_json(y, SolutionMeta{})}).dump());
    const auto r = run({"canon", "--input", tmp.file("c.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["input_count"], 2);
    EXPECT_EQ(j["classes"], 1);
}

TEST(Cli, UpperBounds)
{
    const auto r = run({"upper", "--dim", "10", "--method", "inequality", "--variant", "two-zeros"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["upper"], 58);
    const auto best = run({"upper", "--dim", "7"});
    EXPECT_EQ(Json::parse(best.out)["upper"], 36);
    const auto dec = run({"upper", "--dim", "5", "--method", "decomposition", "--prev", "5"});
    ASSERT_EQ(dec.code, 0) << dec.err;
    const auto j = Json::parse(dec.out);
    EXPECT_EQ(j["upper"].get<int>(), 5 + j["restricted_max"].get<int>());
    EXPECT_EQ(run({"upper", "--dim", "5", "--method", "decomposition"}).code, 2);
}

TEST(Cli, TableCsvAndInputs)
{
    TempDir tmp;
    Json inputs;
    inputs["exact"] = {{"6", 9}};
    inputs["decomposition"] = {{"7", 19}};
    // A valid witness and an invalid one; only the first counts.
    inputs["solutions"] = Json::array({solution_to_json(fixtures::reference_witness(6), SolutionMeta{}),
                                       solution_to_json(VecSet(Dim(7), {1, 2, 3, 4, 8, 16, 32, 64, 5, 6, 7, 9, 10}),
                                                        SolutionMeta{})});
    write(tmp.file("in.json"), inputs.dump());
    const auto r = run({"table", "--max-dim", "10", "--inputs", tmp.file("in.json"), "--compute-exact", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "d,lower,upper,lower_source,upper_source,exact");
    std::vector<std::string> rows;
    while (std::getline(lines, line))
        rows.push_back(line);
    ASSERT_EQ(rows.size(), 10U);
    EXPECT_EQ(rows[3], "4,5,5,exact-search,exact-search,true");
    EXPECT_EQ(rows[5], "6,9,9,exact-search,exact-search,true");
    EXPECT_EQ(rows[6], "7,10,19,chain,decomposition,false");
    EXPECT_EQ(rows[9], "10,13,58,chain,two-zeros,false");
    EXPECT_NE(r.err.find("rejected"), std::string::npos);

    const auto js = run({"table", "--max-dim", "3", "--format", "json"});
    ASSERT_EQ(js.code, 0);
    EXPECT_EQ(Json::parse(js.out).size(), 3U);
}

TEST(Cli, DeterministicOutput)
{
    const std::vector<std::string> lower{"lower", "--dim", "6", "--seed", "17", "--max-nodes", "20000", "--restart-nodes", "3000"};
    const auto a = run(lower);
    const auto b = run(lower);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(strip_timing(Json::parse(a.out)).dump(), strip_timing(Json::parse(b.out)).dump());
    const auto e1 = run({"exact", "--dim", "4", "--prune", "canonical"});
    const auto e2 = run({"exact", "--dim", "4", "--prune", "canonical"});
    EXPECT_EQ(strip_timing(Json::parse(e1.out)).dump(), strip_timing(Json::parse(e2.out)).dump());
}

TEST(Cli, CheckpointAndResume)
{
    TempDir tmp;
    const auto full = run({"exact", "--dim", "4"});
    ASSERT_EQ(full.code, 0);
    const auto ck = tmp.file("ck.json");
    const auto stopped = run({"exact", "--dim", "4", "--checkpoint", ck, "--every", "10", "--max-nodes", "30"});
    ASSERT_EQ(stopped.code, 3) << stopped.err;
    ASSERT_TRUE(fs::exists(ck));
    const auto resumed = run({"exact", "--dim", "4", "--resume", ck});
    ASSERT_EQ(resumed.code, 0) << resumed.err;
    const auto a = Json::parse(full.out), b = Json::parse(resumed.out);
    EXPECT_EQ(a["n"], b["n"]);
    EXPECT_EQ(a["solutions"][0]["vectors"], b["solutions"][0]["vectors"]);
    EXPECT_EQ(run({"exact", "--dim", "4", "--prune", "none", "--resume", ck}).code, 2);
}
