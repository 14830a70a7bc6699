#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"
#include "rbma/io.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "rbma_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string p(const std::string& name) { return (work_dir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + RBMA_CLI + "\" " + args + " >" + p("stdout.txt") +
                          " 2>" + p("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::map<std::string, std::string>> read_csv(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    for (std::string f; std::getline(h, f, ',');) header.push_back(f);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    std::map<std::string, std::string> row;
    std::size_t k = 0;
    for (std::string f; std::getline(r, f, ',');) row[header.at(k++)] = f;
    rows.push_back(row);
  }
  return rows;
}

TEST(CliTest, ValidateFixtureAsAssignment) {
  EXPECT_EQ(run(std::string("validate --assignment ") + RBMA_FIXTURE + " --history " + RBMA_FIXTURE +
                " --mode row"),
            0);
  EXPECT_EQ(run(std::string("validate --assignment ") + RBMA_FIXTURE + " --history " + RBMA_FIXTURE +
                " --mode perfect"),
            3);
  EXPECT_NE(slurp(p("stdout.txt")).find("non-square"), std::string::npos);
}

TEST(CliTest, GreedyThenValidate) {
  for (int seed : {1, 2, 3}) {
    ASSERT_EQ(run("gen --rows 15 --cols 4 --per-row 5 --concentration 0.5 --seed " + std::to_string(seed) +
                  " --out " + p("g.csv")),
              0);
    ASSERT_EQ(run("solve --history " + p("g.csv") + " --method greedy --out " + p("g_out.csv")), 0);
    EXPECT_EQ(run("validate --assignment " + p("g_out.csv") + " --history " + p("g.csv") + " --mode row"), 0);
  }
}

TEST(CliTest, RbmaaSolveWritesTraceAndParams) {
  ASSERT_EQ(run("gen --rows 12 --cols 4 --per-row 6 --concentration 0.6 --seed 4 --out " + p("r.csv")), 0);
  ASSERT_EQ(run("solve --history " + p("r.csv") + " --method rbmaa --epochs 10 --out " + p("r_out.csv") +
                " --trace " + p("r_trace.csv") + " --save-params " + p("r_params.txt")),
            0);
  EXPECT_EQ(slurp(p("r_trace.csv")).rfind("iter,rows_resolved,threshold\n", 0), 0u);
  EXPECT_EQ(slurp(p("r_params.txt")).rfind("RBMP v1\n4 2\n", 0), 0u);
  EXPECT_EQ(run("validate --assignment " + p("r_out.csv") + " --history " + p("r.csv")), 0);
}

TEST(CliTest, CompareHungarianMatchesEnumeration) {
  ASSERT_EQ(run("gen --rows 6 --cols 6 --per-row 8 --concentration 0.4 --seed 17 --out " + p("c.csv")), 0);
  ASSERT_EQ(run("compare --history " + p("c.csv") + " --methods hungarian,greedy --seed 5 --out " +
                p("c_report.csv")),
            0);
  const auto rows = read_csv(p("c_report.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].at("method"), "hungarian");
  EXPECT_EQ(rows[1].at("method"), "greedy");
  EXPECT_EQ(rows[0].at("seed"), "5");
  EXPECT_EQ(rows[1].at("agreement_with_greedy"), "1");

  const rbma::Instance inst = rbma::build_weight_matrix(rbma::io::read_history(p("c.csv")));
  std::vector<std::vector<double>> w(inst.rows(), std::vector<double>(inst.cols()));
  for (std::size_t i = 0; i < inst.rows(); ++i)
    for (std::size_t j = 0; j < inst.cols(); ++j) w[i][j] = inst.weights()(i, j);
  const double hungarian = std::stod(rows[0].at("total_weight"));
  const double greedy = std::stod(rows[1].at("total_weight"));
  EXPECT_EQ(hungarian, oracle::best_injective_total(w));
  EXPECT_LE(hungarian, greedy);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("solve --history x.csv"), 1);
  EXPECT_EQ(run("solve --history x.csv --method simplex --out y.csv"), 1);
  EXPECT_EQ(run("solve --history /nonexistent/h.csv --method greedy --out " + p("x.csv")), 2);

  std::ofstream(p("bad.csv")) << "A1,B1\nA2\n";
  EXPECT_EQ(run("solve --history " + p("bad.csv") + " --method greedy --out " + p("x.csv")), 2);
  EXPECT_NE(slurp(p("stderr.txt")).find("line 2"), std::string::npos);

  // Three rows, two columns: the one-to-one solver leaves a row unmatched.
  std::ofstream(p("tight.csv")) << "A1,B1\nA2,B1\nA3,B2\n";
  fs::remove(p("tight_out.csv"));
  EXPECT_EQ(run("solve --history " + p("tight.csv") + " --method hungarian --out " + p("tight_out.csv")), 3);
  EXPECT_FALSE(fs::exists(p("tight_out.csv")));

  std::ofstream(p("two.csv")) << "A1,B1\nA1,B2\n";
  EXPECT_EQ(run("validate --assignment " + p("two.csv") + " --history " + p("two.csv")), 3);
  EXPECT_EQ(run("solve --history " + p("tight.csv") + " --method rbmaa --quantile 1.5 --out " + p("q.csv")), 1);
}

TEST(CliTest, IdenticalSeedsGiveIdenticalBytes) {
  ASSERT_EQ(run("gen --rows 20 --cols 5 --per-row 6 --concentration 0.5 --seed 8 --out " + p("d1.csv")), 0);
  ASSERT_EQ(run("gen --rows 20 --cols 5 --per-row 6 --concentration 0.5 --seed 8 --out " + p("d2.csv")), 0);
  EXPECT_EQ(slurp(p("d1.csv")), slurp(p("d2.csv")));

  for (const char* tag : {"a", "b"}) {
    ASSERT_EQ(run("solve --history " + p("d1.csv") + " --method rbmaa --epochs 5 --seed 9 --out " +
                  p(std::string("d_out_") + tag + ".csv") + " --trace " + p(std::string("d_trace_") + tag + ".csv") +
                  " --save-params " + p(std::string("d_params_") + tag + ".txt")),
              0);
  }
  EXPECT_EQ(slurp(p("d_out_a.csv")), slurp(p("d_out_b.csv")));
  EXPECT_EQ(slurp(p("d_trace_a.csv")), slurp(p("d_trace_b.csv")));
  EXPECT_EQ(slurp(p("d_params_a.txt")), slurp(p("d_params_b.txt")));
}

TEST(CliTest, BuildWritesMatrix) {
  std::ofstream(p("m.csv")) << "Node1,Node2\nA1,B2\nA1,B2\nA2,B1\n";
  ASSERT_EQ(run("build --history " + p("m.csv") + " --out " + p("m_out.csv")), 0);
  EXPECT_EQ(slurp(p("m_out.csv")), "label,B2,B1\nA1,2,0\nA2,0,1\n");
}

}  // namespace
