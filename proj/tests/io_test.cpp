#include "rbma/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "rbma/error.hpp"

namespace rbma::io {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rbma_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

std::vector<HistoryRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_history(in);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseHistoryTest, SingleLineAndHeader) {
  const auto one = parse("A2,B1\n");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].left_id, "A2");
  EXPECT_EQ(one[0].right_id, "B1");

  const auto with_header = parse("Node1,Node2\n A2 , B1 \n\nA3,B4\n");
  ASSERT_EQ(with_header.size(), 2u);
  EXPECT_EQ(with_header[0].left_id, "A2");
  EXPECT_EQ(with_header[0].right_id, "B1");
  EXPECT_EQ(with_header[1].right_id, "B4");

  const auto crlf = parse("A1,B1\r\nA2,B2\r\n");
  ASSERT_EQ(crlf.size(), 2u);
  EXPECT_EQ(crlf[1].right_id, "B2");
}

TEST(ParseHistoryTest, MalformedLineNamesLineNumber) {
  try {
    parse("Node1,Node2\nA1,B1\nA2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse("A1,B1,C1\n"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse("A1,\n"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse("Node1,Node2\n"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { read_history("/nonexistent/rbma/history.csv"); }), ErrorCode::kIo);
}

TEST(ParseHistoryTest, AppendixFixture) {
  const auto recs = read_history(RBMA_FIXTURE);
  ASSERT_EQ(recs.size(), 351u);
  EXPECT_EQ(recs.front().left_id, "A2");
  EXPECT_EQ(recs.front().right_id, "B1");
}

TEST_F(TempDir, HistoryRoundTrip) {
  const auto recs = generate_synthetic(7, 4, 3, 0.6, 11);
  write_history(path("h.csv"), recs);
  const auto back = read_history(path("h.csv"));
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    EXPECT_EQ(back[k].left_id, recs[k].left_id);
    EXPECT_EQ(back[k].right_id, recs[k].right_id);
  }
}

Instance identity2() {
  RealMatrix e(2, 2, 0.0);
  e(0, 0) = e(1, 1) = 1.0;
  return Instance({"A1", "A2"}, {"B1", "B2"}, WeightMatrix(e));
}

TEST(WriteAssignmentTest, IdentityLines) {
  const Instance inst = identity2();
  BinaryMatrix x(2, 2, 0);
  x(0, 0) = x(1, 1) = 1;
  std::ostringstream out;
  write_assignment(out, inst, x);
  EXPECT_EQ(out.str(), "Node1,Node2\nA1,B1\nA2,B2\n");
}

TEST_F(TempDir, AssignmentRoundTripOnRandomMatrices) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + gen() % 8, m = 1 + gen() % 5;
    std::vector<std::string> left, right;
    for (std::size_t i = 0; i < n; ++i) left.push_back("L" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) right.push_back("R" + std::to_string(j));
    const Instance inst(left, right, WeightMatrix(RealMatrix(n, m, 1.0)));
    BinaryMatrix x(n, m, 0);
    for (std::size_t i = 0; i < n; ++i) x(i, gen() % m) = 1;

    write_assignment(path("a.csv"), inst, x);
    EXPECT_EQ(assignment_matrix(inst, read_history(path("a.csv"))), x);
  }
}

TEST_F(TempDir, InfeasibleAssignmentWritesNothing) {
  const Instance inst = identity2();
  BinaryMatrix x(2, 2, 0);
  x(0, 0) = x(0, 1) = 1;
  x(1, 1) = 1;
  EXPECT_EQ(code_of([&] { write_assignment(path("bad.csv"), inst, x); }), ErrorCode::kInfeasible);
  EXPECT_FALSE(fs::exists(path("bad.csv")));
}

TEST(AssignmentMatrixTest, UnknownLabelsAndDuplicates) {
  const Instance inst = identity2();
  EXPECT_EQ(code_of([&] { assignment_matrix(inst, {{"A9", "B1"}}); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { assignment_matrix(inst, {{"A1", "B9"}}); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { assignment_matrix(inst, {{"A1", "B1"}, {"A1", "B1"}}); }), ErrorCode::kParse);

  const BinaryMatrix two = assignment_matrix(inst, {{"A1", "B1"}, {"A1", "B2"}});
  EXPECT_FALSE(check_feasibility(two, FeasibilityMode::kRowOnly).feasible);
}

TEST(WeightMatrixDumpTest, HeaderAndCounts) {
  const Instance inst = build_weight_matrix({{"A1", "B2"}, {"A1", "B2"}, {"A2", "B1"}});
  std::ostringstream out;
  write_weight_matrix(out, inst);
  EXPECT_EQ(out.str(), "label,B2,B1\nA1,2,0\nA2,0,1\n");
}

TEST(TraceTest, Columns) {
  RbmaaTrace t;
  t.outer_iterations = 2;
  t.rows_resolved_per_iter = {3, 1};
  t.threshold_per_iter = {0.5, 0.25};
  std::ostringstream out;
  write_trace(out, t);
  EXPECT_EQ(out.str(), "iter,rows_resolved,threshold\n1,3,0.5\n2,1,0.25\n");
}

RbmParams random_params(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d(0.0, 3.0);
  RbmParams p{RealMatrix(3, 2), RealVector(3), RealVector(2)};
  for (double& x : p.conn.flat()) x = d(gen);
  for (double& x : p.vis_bias) x = d(gen);
  for (double& x : p.hid_bias) x = d(gen) * 1e-300;
  return p;
}

TEST_F(TempDir, ParamsRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RbmParams p = random_params(seed);
    save_params(path("p.txt"), p);
    EXPECT_EQ(load_params(path("p.txt")), p);
  }
}

TEST(ParamsFormatTest, Errors) {
  auto parse_text = [](const std::string& text) {
    std::istringstream in(text);
    return parse_params(in);
  };
  EXPECT_EQ(code_of([&] { parse_text("RBMP v1\n2 1\n0.1\n0.2\n0.3\n0 0\n0\n"); }), ErrorCode::kDimension);
  EXPECT_EQ(code_of([&] { parse_text("RBMP v1\n2 1\n0.1 0.5\n0.2\n0 0\n0\n"); }), ErrorCode::kDimension);
  EXPECT_EQ(code_of([&] { parse_text("RBMP v9\n2 1\n0.1\n0.2\n0 0\n0\n"); }), ErrorCode::kVersion);
  EXPECT_EQ(code_of([&] { parse_text("RBMP v1\n2 1\n0.1\nabc\n0 0\n0\n"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { parse_text("hello\n"); }), ErrorCode::kParse);
  EXPECT_NO_THROW(parse_text("RBMP v1\n2 1\n0.1\n0.2\n0 0\n0\n"));
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.034), "1.034");
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(SyntheticTest, Examples) {
  const auto recs = generate_synthetic(6, 3, 10, 1.0, 5);
  EXPECT_EQ(recs.size(), 60u);
  const Instance inst = build_weight_matrix(recs);
  EXPECT_TRUE(check_feasibility(binarize(inst.weights()), FeasibilityMode::kRowOnly).feasible);

  const auto again = generate_synthetic(6, 3, 10, 1.0, 5);
  ASSERT_EQ(again.size(), recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    EXPECT_EQ(again[k].left_id, recs[k].left_id);
    EXPECT_EQ(again[k].right_id, recs[k].right_id);
  }
}

TEST(SyntheticTest, LabelsAndSpread) {
  const auto recs = generate_synthetic(20, 5, 8, 0.5, 9);
  std::set<std::string> left, right;
  for (const auto& r : recs) {
    left.insert(r.left_id);
    right.insert(r.right_id);
  }
  EXPECT_EQ(left.size(), 20u);
  EXPECT_TRUE(left.count("A1") && left.count("A20"));
  for (const auto& r : right) EXPECT_TRUE(r == "B1" || r == "B2" || r == "B3" || r == "B4" || r == "B5");

  const Instance inst = build_weight_matrix(recs);
  EXPECT_FALSE(check_feasibility(binarize(inst.weights()), FeasibilityMode::kRowOnly).feasible);

  EXPECT_EQ(code_of([] { generate_synthetic(0, 3, 1, 0.5, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { generate_synthetic(3, 3, 1, 0.0, 1); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace rbma::io
